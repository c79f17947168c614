// Sparse exact matrices over Q with rank/kernel/solve built on
// fraction-free row elimination. Two elimination lanes share the row
// update: a serial reference and an OpenMP-parallel kernel. Both are
// bit-deterministic and produce identical echelon data.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cousinforge/rational.hpp"

namespace cousinforge {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

    static RationalMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational get(int r, int c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Rational(0) : it->second;
    }
    void set(int r, int c, const Rational& v);
    void add(int r, int c, const Rational& v) { set(r, c, get(r, c) + v); }

    const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix operator+(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix operator*(const Rational& c) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    bool is_zero() const { return entries_.empty(); }
    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

    // Horizontal concatenation [this | o].
    RationalMatrix augment(const RationalMatrix& o) const;

    std::string str() const;

private:
    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, Rational> entries_;
};

enum class ExecutionPolicy { serial, parallel };

// Integer row echelon form obtained by fraction-free elimination with
// per-row content normalization (denominators cleared up front).
struct Echelon {
    // Sorted (col, value) pairs per row; rows ordered by pivot column.
    std::vector<std::vector<std::pair<int32_t, mpz_class>>> rows;
    std::vector<int> pivot_cols;  // ascending
    int cols = 0;

    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

Echelon echelon_form(const RationalMatrix& m,
                     ExecutionPolicy policy = ExecutionPolicy::parallel);

struct RankKernel {
    int rank = 0;
    // Kernel basis vectors (exact, content-normalized integers with the
    // first nonzero entry positive); each satisfies M*v = 0.
    std::vector<std::vector<Rational>> kernel;
};

RankKernel matrix_rank_kernel(const RationalMatrix& m,
                              ExecutionPolicy policy = ExecutionPolicy::parallel);

inline int matrix_rank(const RationalMatrix& m,
                       ExecutionPolicy policy = ExecutionPolicy::parallel) {
    return echelon_form(m, policy).rank();
}

// One exact solution of M x = b (free variables set to 0), or nullopt-style
// empty result when inconsistent.
struct SolveResult {
    bool consistent = false;
    std::vector<Rational> x;
};
SolveResult solve(const RationalMatrix& m, const std::vector<Rational>& b,
                  ExecutionPolicy policy = ExecutionPolicy::parallel);

} // namespace cousinforge
