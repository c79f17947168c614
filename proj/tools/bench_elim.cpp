// Benchmark: serial reference versus OpenMP fraction-free elimination on
// matrices drawn from the cyclic engine and on random sparse matrices.
// The two lanes must produce identical echelon data; timings go to stdout.
#include <chrono>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cousinforge/cyclic.hpp"
#include "cousinforge/matrix.hpp"

using namespace cousinforge;

namespace {

double time_echelon(const RationalMatrix& m, ExecutionPolicy pol, int reps, int& rank) {
    using Clock = std::chrono::steady_clock;
    double best = 1e100;
    for (int r = 0; r < reps; ++r) {
        auto start = Clock::now();
        Echelon e = echelon_form(m, pol);
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        best = std::min(best, secs);
        rank = e.rank();
    }
    return best;
}

RationalMatrix random_sparse(int rows, int cols, int nnz_per_row, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> col(0, cols - 1);
    std::uniform_int_distribution<int> val(-9, 9);
    RationalMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int k = 0; k < nnz_per_row; ++k) {
            int v = val(rng);
            if (v) m.set(r, col(rng), Rational(v));
        }
    return m;
}

void report(const std::string& name, const RationalMatrix& m, int reps) {
    int rank_serial = 0, rank_parallel = 0;
    double ts = time_echelon(m, ExecutionPolicy::serial, reps, rank_serial);
    double tp = time_echelon(m, ExecutionPolicy::parallel, reps, rank_parallel);
    Echelon a = echelon_form(m, ExecutionPolicy::serial);
    Echelon b = echelon_form(m, ExecutionPolicy::parallel);
    bool identical = a.pivot_cols == b.pivot_cols && a.rows.size() == b.rows.size();
    for (size_t i = 0; identical && i < a.rows.size(); ++i)
        identical = a.rows[i] == b.rows[i];
    std::cout << name << ": " << m.rows() << "x" << m.cols() << " rank=" << rank_serial
              << " serial=" << ts << "s parallel=" << tp << "s speedup=" << (ts / tp)
              << " identical=" << (identical ? "yes" : "NO") << "\n";
    if (rank_serial != rank_parallel || !identical) {
        std::cerr << "lanes disagree on " << name << "\n";
        std::exit(1);
    }
}

} // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    bool small = argc > 2 && std::string(argv[2]) == "small";
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (OpenMP disabled)\n";
#endif
    // Boundary matrices of the heaviest battery slices.
    AlgebraSpec two_vars = AlgebraSpec::make(2, 1);
    auto cx = relative_complex(two_vars, 3);
    report("b4 Q[x,y] d=3", cx->b(4), reps);
    report("psi2 C4 Q[x,y] d=3", cx->psi(4, 2), reps);
    if (small) return 0;

    report("sparse 400x600", random_sparse(400, 600, 6, 1), reps);
    report("sparse 800x800", random_sparse(800, 800, 5, 2), reps);
    return 0;
}
