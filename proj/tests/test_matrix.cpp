#include <doctest.h>

#include <random>

#include "cousinforge/matrix.hpp"

using namespace cousinforge;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int fill_percent) {
    std::uniform_int_distribution<int> val(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> pct(0, 99);
    RationalMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (pct(rng) < fill_percent) m.set(r, c, Rational(val(rng), den(rng)));
    return m;
}

} // namespace

TEST_CASE("rank and kernel on fixed examples") {
    RationalMatrix id3 = RationalMatrix::identity(3);
    RankKernel rk = matrix_rank_kernel(id3);
    CHECK(rk.rank == 3);
    CHECK(rk.kernel.empty());

    RationalMatrix zero(2, 5);
    rk = matrix_rank_kernel(zero);
    CHECK(rk.rank == 0);
    CHECK(rk.kernel.size() == 5);

    RationalMatrix prop(2, 2);
    prop.set(0, 0, Rational(1));
    prop.set(0, 1, Rational(2));
    prop.set(1, 0, Rational(2));
    prop.set(1, 1, Rational(4));
    rk = matrix_rank_kernel(prop);
    CHECK(rk.rank == 1);
    REQUIRE(rk.kernel.size() == 1);
    // Kernel spanned by (2, -1), canonically scaled.
    CHECK(rk.kernel[0][0] == Rational(2));
    CHECK(rk.kernel[0][1] == Rational(-1));
}

TEST_CASE("kernel vectors solve exactly and rank matches transpose") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 30; ++trial) {
        RationalMatrix m = random_matrix(rng, 1 + static_cast<int>(rng() % 8),
                                         1 + static_cast<int>(rng() % 8), 45);
        RankKernel rk = matrix_rank_kernel(m);
        CHECK(rk.rank == matrix_rank(m.transpose()));
        CHECK(rk.rank + static_cast<int>(rk.kernel.size()) == m.cols());
        for (const auto& v : rk.kernel)
            for (const auto& entry : m.apply(v)) CHECK(entry.is_zero());
    }
}

TEST_CASE("serial and parallel lanes are bit-identical") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 12; ++trial) {
        RationalMatrix m = random_matrix(rng, 20 + static_cast<int>(rng() % 30),
                                         20 + static_cast<int>(rng() % 30), 20);
        Echelon serial = echelon_form(m, ExecutionPolicy::serial);
        Echelon parallel = echelon_form(m, ExecutionPolicy::parallel);
        CHECK(serial.pivot_cols == parallel.pivot_cols);
        REQUIRE(serial.rows.size() == parallel.rows.size());
        for (size_t i = 0; i < serial.rows.size(); ++i) CHECK(serial.rows[i] == parallel.rows[i]);
    }
}

TEST_CASE("solve finds exact solutions and detects inconsistency") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        RationalMatrix m = random_matrix(rng, 6, 5, 50);
        std::vector<Rational> x0;
        for (int c = 0; c < 5; ++c) x0.push_back(Rational(static_cast<long>(rng() % 7) - 3));
        std::vector<Rational> b = m.apply(x0);
        SolveResult sol = solve(m, b);
        REQUIRE(sol.consistent);
        std::vector<Rational> back = m.apply(sol.x);
        for (size_t i = 0; i < b.size(); ++i) CHECK(back[i] == b[i]);
    }
    RationalMatrix m(2, 1);
    m.set(0, 0, Rational(1));
    m.set(1, 0, Rational(1));
    SolveResult bad = solve(m, {Rational(0), Rational(1)});
    CHECK(!bad.consistent);
}
