#include "cousinforge/matrix.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cousinforge {

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Rational(1));
    return m;
}

void RationalMatrix::set(int r, int c, const Rational& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw PreconditionError("matrix index out of range");
    if (v.is_zero())
        entries_.erase({r, c});
    else
        entries_[{r, c}] = v;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (const auto& [rc, v] : entries_) t.set(rc.second, rc.first, v);
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw PreconditionError("matrix product shape mismatch");
    RationalMatrix r(rows_, o.cols_);
    // Sparse product: group o's entries by row first.
    std::vector<std::vector<std::pair<int, Rational>>> orows(o.rows_);
    for (const auto& [rc, v] : o.entries_) orows[rc.first].push_back({rc.second, v});
    std::map<std::pair<int, int>, Rational> acc;
    for (const auto& [rc, v] : entries_) {
        for (const auto& [j, w] : orows[rc.second]) {
            auto key = std::make_pair(rc.first, j);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, v * w);
            else
                it->second += v * w;
        }
    }
    for (const auto& [key, v] : acc)
        if (!v.is_zero()) r.entries_[key] = v;
    return r;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw PreconditionError("matrix sum shape mismatch");
    RationalMatrix r = *this;
    for (const auto& [rc, v] : o.entries_) r.set(rc.first, rc.second, r.get(rc.first, rc.second) + v);
    return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw PreconditionError("matrix difference shape mismatch");
    RationalMatrix r = *this;
    for (const auto& [rc, v] : o.entries_) r.set(rc.first, rc.second, r.get(rc.first, rc.second) - v);
    return r;
}

RationalMatrix RationalMatrix::operator*(const Rational& c) const {
    RationalMatrix r(rows_, cols_);
    if (c.is_zero()) return r;
    for (const auto& [rc, v] : entries_) r.entries_[rc] = v * c;
    return r;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw PreconditionError("matrix apply arity mismatch");
    std::vector<Rational> out(rows_, Rational(0));
    for (const auto& [rc, a] : entries_) out[rc.first] += a * v[rc.second];
    return out;
}

RationalMatrix RationalMatrix::augment(const RationalMatrix& o) const {
    if (rows_ != o.rows_) throw PreconditionError("augment row mismatch");
    RationalMatrix r(rows_, cols_ + o.cols_);
    for (const auto& [rc, v] : entries_) r.entries_[rc] = v;
    for (const auto& [rc, v] : o.entries_) r.entries_[{rc.first, rc.second + cols_}] = v;
    return r;
}

std::string RationalMatrix::str() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        os << "[";
        for (int c = 0; c < cols_; ++c) {
            if (c) os << " ";
            os << get(r, c).str();
        }
        os << "]";
        if (r + 1 < rows_) os << "\n";
    }
    return os.str();
}

namespace {

using IntRow = std::vector<std::pair<int32_t, mpz_class>>;

// Divide a row by the gcd of its entries and fix the leading sign.
void normalize_row(IntRow& row) {
    if (row.empty()) return;
    mpz_class g(0);
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    bool flip = row.front().second < 0;
    if (g == 1 && !flip) return;
    if (flip) g = -g;
    for (auto& [c, v] : row) v /= g;
}

// row -= (a/b) * pivot scaled fraction-free: row := b*row - a*pivot,
// then content-normalized. a = row[pivot_col], b = pivot value.
IntRow eliminate_into(const IntRow& row, const IntRow& pivot,
                      const mpz_class& a, const mpz_class& b) {
    IntRow out;
    out.reserve(row.size() + pivot.size());
    size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, b * row[i].second);
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -a * pivot[j].second);
            ++j;
        } else {
            mpz_class v = b * row[i].second - a * pivot[j].second;
            if (v != 0) out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    normalize_row(out);
    return out;
}

std::vector<IntRow> to_integer_rows(const RationalMatrix& m) {
    std::vector<std::map<int, Rational>> sparse(m.rows());
    for (const auto& [rc, v] : m.entries()) sparse[rc.first][rc.second] = v;
    std::vector<IntRow> rows(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        mpz_class den(1);
        for (const auto& [c, v] : sparse[r]) {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), v.den().get_mpz_t());
            den = l;
        }
        IntRow row;
        row.reserve(sparse[r].size());
        for (const auto& [c, v] : sparse[r])
            row.emplace_back(c, v.num() * (den / v.den()));
        normalize_row(row);
        rows[r] = std::move(row);
    }
    return rows;
}

} // namespace

Echelon echelon_form(const RationalMatrix& m, ExecutionPolicy policy) {
    std::vector<IntRow> rows = to_integer_rows(m);
    Echelon ech;
    ech.cols = m.cols();
    const int nrows = static_cast<int>(rows.size());
    int head = 0;  // rows before head are finished pivot rows
    for (int col = 0; col < m.cols() && head < nrows; ++col) {
        // Deterministic pivot: first remaining row whose leading column is col.
        int piv = -1;
        for (int r = head; r < nrows; ++r) {
            if (!rows[r].empty() && rows[r].front().first == col) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(rows[head], rows[piv]);
        const IntRow& pivot = rows[head];
        const mpz_class b = pivot.front().second;
        std::vector<int> targets;
        size_t work = 0;
        for (int r = head + 1; r < nrows; ++r) {
            if (!rows[r].empty() && rows[r].front().first == col) {
                targets.push_back(r);
                work += rows[r].size() + pivot.size();
            }
        }
        if (policy == ExecutionPolicy::parallel) {
#ifdef _OPENMP
            // Rows update independently; skip the team for tiny steps.
            const bool heavy = work >= 512 && targets.size() >= 8;
#pragma omp parallel for schedule(dynamic, 4) if (heavy)
#endif
            for (size_t i = 0; i < targets.size(); ++i) {
                int r = targets[i];
                rows[r] = eliminate_into(rows[r], pivot, rows[r].front().second, b);
            }
        } else {
            for (size_t i = 0; i < targets.size(); ++i) {
                int r = targets[i];
                rows[r] = eliminate_into(rows[r], pivot, rows[r].front().second, b);
            }
        }
        ech.pivot_cols.push_back(col);
        ++head;
    }
    ech.rows.assign(rows.begin(), rows.begin() + head);
    return ech;
}

RankKernel matrix_rank_kernel(const RationalMatrix& m, ExecutionPolicy policy) {
    Echelon ech = echelon_form(m, policy);
    RankKernel out;
    out.rank = ech.rank();

    std::vector<int> pivot_of_col(m.cols(), -1);
    for (size_t i = 0; i < ech.pivot_cols.size(); ++i)
        pivot_of_col[ech.pivot_cols[i]] = static_cast<int>(i);

    for (int free_col = 0; free_col < m.cols(); ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[free_col] = Rational(1);
        // Back substitution over the pivot rows, bottom up.
        for (int i = ech.rank() - 1; i >= 0; --i) {
            const auto& row = ech.rows[i];
            Rational acc(0);
            for (const auto& [c, a] : row) {
                if (c == ech.pivot_cols[i]) continue;
                if (!v[c].is_zero()) acc += Rational(a) * v[c];
            }
            v[ech.pivot_cols[i]] = -acc / Rational(row.front().second);
        }
        // Scale to a primitive integer vector with positive first entry.
        mpz_class den(1);
        for (const auto& r : v) {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), r.den().get_mpz_t());
            den = l;
        }
        mpz_class g(0);
        for (const auto& r : v) {
            mpz_class scaled = r.num() * (den / r.den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
        }
        int first_sign = 0;
        for (const auto& r : v) {
            if (!r.is_zero()) {
                first_sign = r.sign();
                break;
            }
        }
        Rational scale = Rational(den, g) * Rational(first_sign < 0 ? -1 : 1);
        for (auto& r : v) r *= scale;
        out.kernel.push_back(std::move(v));
    }
    return out;
}

SolveResult solve(const RationalMatrix& m, const std::vector<Rational>& b,
                  ExecutionPolicy policy) {
    if (static_cast<int>(b.size()) != m.rows())
        throw PreconditionError("solve rhs arity mismatch");
    RationalMatrix rhs(m.rows(), 1);
    for (int r = 0; r < m.rows(); ++r) rhs.set(r, 0, b[r]);
    Echelon ech = echelon_form(m.augment(rhs), policy);

    SolveResult res;
    for (size_t i = 0; i < ech.pivot_cols.size(); ++i) {
        if (ech.pivot_cols[i] == m.cols()) return res;  // pivot in rhs column
    }
    res.consistent = true;
    res.x.assign(m.cols(), Rational(0));
    for (int i = ech.rank() - 1; i >= 0; --i) {
        const auto& row = ech.rows[i];
        Rational acc(0);
        for (const auto& [c, a] : row) {
            if (c == ech.pivot_cols[i]) continue;
            if (c == m.cols())
                acc -= Rational(a);
            else if (!res.x[c].is_zero())
                acc += Rational(a) * res.x[c];
        }
        res.x[ech.pivot_cols[i]] = -acc / Rational(row.front().second);
    }
    return res;
}

} // namespace cousinforge
