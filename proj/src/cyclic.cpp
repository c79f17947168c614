#include "cousinforge/cyclic.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace cousinforge {

AlgebraSpec AlgebraSpec::make(int num_vars, int nil_order) {
    if (num_vars < 0 || num_vars > 2)
        throw PreconditionError("base ring must be Q, Q[x] or Q[x,y]");
    if (nil_order < 1 || nil_order > 3)
        throw PreconditionError("nilpotent order out of desk-scale bounds (1..3)");
    return AlgebraSpec{num_vars, nil_order};
}

AlgebraSpec AlgebraSpec::parse(const std::string& base, int nil_order) {
    if (base == "Q") return make(0, nil_order);
    if (base == "Q[x]") return make(1, nil_order);
    if (base == "Q[x,y]") return make(2, nil_order);
    throw ParseError("unknown base ring: " + base);
}

std::string AlgebraSpec::base_name() const {
    switch (num_vars) {
        case 0: return "Q";
        case 1: return "Q[x]";
        default: return "Q[x,y]";
    }
}

std::string AMonomial::str(const AlgebraSpec& alg) const {
    std::ostringstream os;
    bool any = false;
    const char* names[2] = {"x", "y"};
    for (int i = 0; i < alg.num_vars; ++i) {
        if (!x[i]) continue;
        if (any) os << "*";
        os << names[i];
        if (x[i] > 1) os << "^" << x[i];
        any = true;
    }
    if (nil) {
        if (any) os << "*";
        os << alg.nil_name();
        if (nil > 1) os << "^" << nil;
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

RelativeComplex::RelativeComplex(AlgebraSpec alg, int internal_degree)
    : alg_(alg), d_(internal_degree) {
    if (d_ < 0 || d_ > AlgebraSpec::kMaxInternalDegree)
        throw PreconditionError("internal degree out of desk-scale bounds");
    for (int px = 0; px <= d_; ++px)
        for (int py = 0; py + px <= d_; ++py) {
            if (alg_.num_vars < 2 && py > 0) continue;
            if (alg_.num_vars < 1 && px > 0) continue;
            for (int c = 0; c <= alg_.nil_order; ++c)
                monomials_.push_back(AMonomial{{px, py}, c});
        }
    std::sort(monomials_.begin(), monomials_.end());
}

const SliceBasis& RelativeComplex::basis(int n) {
    if (n < 0 || n > max_n())
        throw PreconditionError("homological degree out of desk-scale bounds");
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = bases_.find(n);
    if (it != bases_.end()) return it->second;

    // Group candidate factors by polynomial degree for budgeted recursion.
    std::vector<std::vector<AMonomial>> by_deg(static_cast<size_t>(d_) + 1);
    for (const auto& m : monomials_)
        if (m.poly_degree() <= d_) by_deg[static_cast<size_t>(m.poly_degree())].push_back(m);

    SliceBasis out;
    ChainTensor cur(static_cast<size_t>(n) + 1);
    auto rec = [&](auto&& self, int pos, int remaining, bool has_nil) -> void {
        if (pos == n + 1) {
            if (remaining == 0 && has_nil) out.elems.push_back(cur);
            return;
        }
        for (int p = 0; p <= remaining; ++p) {
            for (const auto& m : by_deg[static_cast<size_t>(p)]) {
                if (pos > 0 && m.is_constant()) continue;
                cur[static_cast<size_t>(pos)] = m;
                self(self, pos + 1, remaining - p, has_nil || m.nil > 0);
            }
        }
    };
    rec(rec, 0, d_, false);
    std::sort(out.elems.begin(), out.elems.end());
    for (int i = 0; i < out.dim(); ++i) out.index.emplace(out.elems[static_cast<size_t>(i)], i);
    return bases_.emplace(n, std::move(out)).first->second;
}

namespace {

// Product in R[t]/(t^{j+1}); nullopt-like flag when the power truncates.
bool multiply(const AMonomial& a, const AMonomial& b, int nil_order, AMonomial& out) {
    if (a.nil + b.nil > nil_order) return false;
    out.nil = a.nil + b.nil;
    out.x[0] = a.x[0] + b.x[0];
    out.x[1] = a.x[1] + b.x[1];
    return true;
}

} // namespace

const RationalMatrix& RelativeComplex::b(int n) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = b_.find(n);
    if (it != b_.end()) return it->second;
    const SliceBasis& src = basis(n);
    const SliceBasis& dst = n > 0 ? basis(n - 1) : basis(0);
    RationalMatrix m(n > 0 ? dst.dim() : 0, src.dim());
    if (n > 0) {
        for (int col = 0; col < src.dim(); ++col) {
            const ChainTensor& t = src.elems[static_cast<size_t>(col)];
            for (int i = 0; i < n; ++i) {
                AMonomial prod;
                if (!multiply(t[static_cast<size_t>(i)], t[static_cast<size_t>(i) + 1],
                              alg_.nil_order, prod))
                    continue;
                ChainTensor merged;
                merged.reserve(static_cast<size_t>(n));
                for (int s = 0; s <= n; ++s) {
                    if (s == i) {
                        merged.push_back(prod);
                    } else if (s != i + 1) {
                        merged.push_back(t[static_cast<size_t>(s)]);
                    }
                }
                int row = dst.find(merged);
                if (row < 0) throw std::logic_error("b image left the relative subcomplex");
                m.add(row, col, Rational(i % 2 ? -1 : 1));
            }
            AMonomial wrap;
            if (multiply(t[static_cast<size_t>(n)], t[0], alg_.nil_order, wrap)) {
                ChainTensor merged;
                merged.push_back(wrap);
                for (int s = 1; s < n; ++s) merged.push_back(t[static_cast<size_t>(s)]);
                int row = dst.find(merged);
                if (row < 0) throw std::logic_error("b image left the relative subcomplex");
                m.add(row, col, Rational(n % 2 ? -1 : 1));
            }
        }
    }
    auto& stored = b_.emplace(n, std::move(m)).first->second;
    check_identities(n);
    return stored;
}

const RationalMatrix& RelativeComplex::connes(int n) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = connes_.find(n);
    if (it != connes_.end()) return it->second;
    if (n + 1 > max_n())
        throw PreconditionError("Connes B target out of desk-scale bounds");
    const SliceBasis& src = basis(n);
    const SliceBasis& dst = basis(n + 1);
    RationalMatrix m(dst.dim(), src.dim());
    for (int col = 0; col < src.dim(); ++col) {
        const ChainTensor& t = src.elems[static_cast<size_t>(col)];
        if (t[0].is_constant()) continue;  // a0 = 1 lands in a degenerate slot
        for (int i = 0; i <= n; ++i) {
            ChainTensor rotated;
            rotated.reserve(static_cast<size_t>(n) + 2);
            rotated.push_back(AMonomial{});
            for (int s = 0; s <= n; ++s)
                rotated.push_back(t[static_cast<size_t>((i + s) % (n + 1))]);
            int row = dst.find(rotated);
            if (row < 0) throw std::logic_error("B image left the relative subcomplex");
            m.add(row, col, Rational((n * i) % 2 ? -1 : 1));
        }
    }
    const RationalMatrix& stored = connes_.emplace(n, std::move(m)).first->second;
    if (connes_.count(n - 1)) {
        if (!(stored * connes_.at(n - 1)).is_zero())
            throw std::logic_error("B is not square-zero");
    }
    if (connes_.count(n + 1)) {
        if (!(connes_.at(n + 1) * stored).is_zero())
            throw std::logic_error("B is not square-zero");
    }
    // Anticommutation b B + B b = 0 against whatever b maps exist.
    if (b_.count(n + 1) && (n == 0 || b_.count(n))) {
        RationalMatrix anti = b_.at(n + 1) * stored;
        if (n >= 1 && connes_.count(n - 1)) anti = anti + connes_.at(n - 1) * b_.at(n);
        if (n == 0 || connes_.count(n - 1)) {
            if (!anti.is_zero()) throw std::logic_error("b B + B b != 0");
        }
    }
    return stored;
}

void RelativeComplex::check_identities(int n) {
    // b b = 0 against whichever neighbour maps already exist; the B
    // identities are checked in build_slice where all pieces meet.
    if (checked_.count(n)) return;
    checked_[n] = true;
    if (n >= 2 && b_.count(n) && b_.count(n - 1)) {
        if (!(b_.at(n - 1) * b_.at(n)).is_zero())
            throw std::logic_error("b is not a differential");
    }
    if (n + 1 <= max_n() && b_.count(n + 1) && b_.count(n)) {
        if (!(b_.at(n) * b_.at(n + 1)).is_zero())
            throw std::logic_error("b is not a differential");
    }
}

RationalMatrix RelativeComplex::psi(int n, int k) {
    if (k < 1 || k > 8) throw PreconditionError("psi needs 1 <= k <= 8");
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_pair(n, k);
    auto it = psi_.find(key);
    if (it != psi_.end()) return it->second;
    const SliceBasis& base = basis(n);
    RationalMatrix m(base.dim(), base.dim());
    if (n == 0) {
        for (int col = 0; col < base.dim(); ++col) m.add(col, col, Rational(1));
        psi_.emplace(key, m);
        return m;
    }
    // psi^k = sum over words w in {1..k}^n of the signed block interleave:
    // position t of the output takes the next unused factor of block w_t,
    // where block boundaries are the fibers of w read in order.
    std::vector<int> word(static_cast<size_t>(n), 0);
    std::vector<int> perm(static_cast<size_t>(n), 0);
    while (true) {
        // Decode the word into the permutation new[t] = old[perm[t]].
        // Block labels assign each source position to a block in order;
        // sources of block c are the positions t' with word[t'] = c? No:
        // blocks partition 1..n consecutively with sizes = label counts.
        std::vector<int> counts(static_cast<size_t>(k), 0);
        for (int t = 0; t < n; ++t) ++counts[static_cast<size_t>(word[static_cast<size_t>(t)])];
        std::vector<int> next(static_cast<size_t>(k), 0);
        int acc = 0;
        for (int c = 0; c < k; ++c) {
            next[static_cast<size_t>(c)] = acc;
            acc += counts[static_cast<size_t>(c)];
        }
        for (int t = 0; t < n; ++t) {
            int c = word[static_cast<size_t>(t)];
            perm[static_cast<size_t>(t)] = next[static_cast<size_t>(c)]++;
        }
        int inversions = 0;
        for (int a = 0; a < n; ++a)
            for (int bpos = a + 1; bpos < n; ++bpos)
                if (perm[static_cast<size_t>(a)] > perm[static_cast<size_t>(bpos)]) ++inversions;
        const Rational sign(inversions % 2 ? -1 : 1);
        for (int col = 0; col < base.dim(); ++col) {
            const ChainTensor& t = base.elems[static_cast<size_t>(col)];
            ChainTensor shuffled(t.size());
            shuffled[0] = t[0];
            for (int pos = 0; pos < n; ++pos)
                shuffled[static_cast<size_t>(pos) + 1] =
                    t[static_cast<size_t>(perm[static_cast<size_t>(pos)]) + 1];
            int row = base.find(shuffled);
            if (row < 0) throw std::logic_error("shuffle left the slice");
            m.add(row, col, sign);
        }
        // Advance the word (odometer).
        int pos = n - 1;
        while (pos >= 0 && word[static_cast<size_t>(pos)] == k - 1) {
            word[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++word[static_cast<size_t>(pos)];
    }
    psi_.emplace(key, m);
    return m;
}

std::shared_ptr<RelativeComplex> relative_complex(const AlgebraSpec& alg, int d) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<RelativeComplex>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(alg.num_vars, alg.nil_order, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto cx = std::make_shared<RelativeComplex>(alg, d);
    cache.emplace(key, cx);
    return cx;
}

GradedSlice build_slice(const AlgebraSpec& alg, int n, int d) {
    auto cx = relative_complex(alg, d);
    GradedSlice slice;
    slice.alg = alg;
    slice.n = n;
    slice.d = d;
    slice.basis = cx->basis(n).elems;
    slice.b = cx->b(n);
    if (n + 1 <= cx->max_n()) {
        slice.connes = cx->connes(n);
        // Anticommutation against the stored b maps.
        RationalMatrix anti = cx->b(n + 1) * slice.connes;
        if (n >= 1) anti = anti + cx->connes(n - 1) * slice.b;
        if (!anti.is_zero()) throw std::logic_error("b B + B b != 0");
        if (n >= 1 && !(slice.connes * cx->connes(n - 1)).is_zero())
            throw std::logic_error("B is not square-zero");
    } else {
        slice.connes = RationalMatrix(0, static_cast<int>(slice.basis.size()));
    }
    return slice;
}

HomologySlice homology_slice(const RationalMatrix& d_out, const RationalMatrix& d_in) {
    if (d_out.cols() != d_in.rows())
        throw PreconditionError("homology slice shape mismatch");
    HomologySlice h;
    RankKernel kk = matrix_rank_kernel(d_out);
    const int dim = d_out.cols();
    RationalMatrix kmat(dim, static_cast<int>(kk.kernel.size()));
    for (int c = 0; c < kmat.cols(); ++c)
        for (int r = 0; r < dim; ++r)
            if (!kk.kernel[static_cast<size_t>(c)][static_cast<size_t>(r)].is_zero())
                kmat.set(r, c, kk.kernel[static_cast<size_t>(c)][static_cast<size_t>(r)]);
    Echelon ech = echelon_form(d_in.augment(kmat));
    std::vector<int> picked;
    for (int col : ech.pivot_cols)
        if (col >= d_in.cols()) picked.push_back(col - d_in.cols());
    h.rank = static_cast<int>(picked.size());
    h.reps = RationalMatrix(dim, h.rank);
    for (int j = 0; j < h.rank; ++j)
        for (int r = 0; r < dim; ++r) {
            const Rational& v =
                kk.kernel[static_cast<size_t>(picked[static_cast<size_t>(j)])][static_cast<size_t>(r)];
            if (!v.is_zero()) h.reps.set(r, j, v);
        }
    h.express_in = d_in.augment(h.reps);
    h.boundary_cols = d_in.cols();
    return h;
}

RationalMatrix on_homology(const RationalMatrix& op, const HomologySlice& source,
                           const HomologySlice& target) {
    RationalMatrix out(target.rank, source.rank);
    for (int j = 0; j < source.rank; ++j) {
        std::vector<Rational> h(static_cast<size_t>(source.reps.rows()), Rational(0));
        for (int r = 0; r < source.reps.rows(); ++r) h[static_cast<size_t>(r)] = source.reps.get(r, j);
        std::vector<Rational> w = op.apply(h);
        SolveResult sol = solve(target.express_in, w);
        if (!sol.consistent)
            throw std::logic_error("operator image is not a cycle modulo boundaries");
        for (int i = 0; i < target.rank; ++i)
            out.set(i, j, sol.x[static_cast<size_t>(target.boundary_cols + i)]);
    }
    return out;
}

namespace {

struct TotalBlocks {
    std::vector<int> degrees;  // C_{n-2j} for j = 0, 1, ...
    std::vector<int> offset;
    int dim = 0;
};

TotalBlocks total_blocks(RelativeComplex& cx, int n) {
    TotalBlocks tb;
    for (int deg = n; deg >= 0; deg -= 2) {
        tb.degrees.push_back(deg);
        tb.offset.push_back(tb.dim);
        tb.dim += cx.basis(deg).dim();
    }
    return tb;
}

// T_n -> T_{n-1} of the b-B bicomplex truncation.
RationalMatrix total_differential(RelativeComplex& cx, int n) {
    TotalBlocks src = total_blocks(cx, n);
    if (n <= 0) return RationalMatrix(0, n < 0 ? 0 : src.dim);
    TotalBlocks dst = total_blocks(cx, n - 1);
    RationalMatrix m(dst.dim, src.dim);
    for (size_t j = 0; j < src.degrees.size(); ++j) {
        const int deg = src.degrees[j];
        if (deg >= 1) {
            const RationalMatrix& bb = cx.b(deg);
            for (const auto& [rc, v] : bb.entries())
                m.set(dst.offset[j] + rc.first, src.offset[j] + rc.second, v);
        }
        if (j >= 1) {
            const RationalMatrix& BB = cx.connes(deg);
            for (const auto& [rc, v] : BB.entries())
                m.set(dst.offset[j - 1] + rc.first, src.offset[j] + rc.second, v);
        }
    }
    return m;
}

// Twisted power operator on the truncation: 2^j psi^2 on column j. The
// twist makes the Hodge index i = (column) + (chain eigenindex) a single
// eigenvalue 2^i.
RationalMatrix total_psi(RelativeComplex& cx, int n) {
    TotalBlocks tb = total_blocks(cx, n);
    RationalMatrix m(tb.dim, tb.dim);
    Rational twist(1);
    for (size_t j = 0; j < tb.degrees.size(); ++j) {
        RationalMatrix p = cx.psi(tb.degrees[j], 2);
        for (const auto& [rc, v] : p.entries())
            m.set(tb.offset[j] + rc.first, tb.offset[j] + rc.second, v * twist);
        twist *= Rational(2);
    }
    return m;
}

// Column deletion T_n -> T_{n-2}.
RationalMatrix s_shift(RelativeComplex& cx, int n) {
    TotalBlocks src = total_blocks(cx, n);
    if (n < 2) return RationalMatrix(0, n < 0 ? 0 : src.dim);
    TotalBlocks dst = total_blocks(cx, n - 2);
    RationalMatrix m(dst.dim, src.dim);
    for (size_t j = 1; j < src.degrees.size(); ++j) {
        const int dim = cx.basis(src.degrees[j]).dim();
        for (int r = 0; r < dim; ++r)
            m.set(dst.offset[j - 1] + r, src.offset[j] + r, Rational(1));
    }
    return m;
}

HomologySlice hc_homology(RelativeComplex& cx, int n) {
    return homology_slice(total_differential(cx, n), total_differential(cx, n + 1));
}

// Spectral projector of eigenvalue 2^i within the eigenvalue set
// {2^0, ..., 2^n}, by Lagrange interpolation.
RationalMatrix lagrange_projector(const RationalMatrix& m, int i, int n) {
    RationalMatrix p = RationalMatrix::identity(m.rows());
    for (int j = 0; j <= n; ++j) {
        if (j == i) continue;
        Rational ev_i = Rational(2).pow(static_cast<unsigned>(i));
        Rational ev_j = Rational(2).pow(static_cast<unsigned>(j));
        p = (m - RationalMatrix::identity(m.rows()) * ev_j) * p * (Rational(1) / (ev_i - ev_j));
    }
    return p;
}

} // namespace

RationalMatrix hc_total_differential(const AlgebraSpec& alg, int n, int d) {
    auto cx = relative_complex(alg, d);
    return total_differential(*cx, n);
}

long hh_rank(const AlgebraSpec& alg, int n, int d) {
    if (n < 0) return 0;
    auto cx = relative_complex(alg, d);
    if (n + 1 > cx->max_n())
        throw PreconditionError("hh_rank needs the degree-(n+1) slice within bounds");
    RankKernel k = matrix_rank_kernel(cx->b(n));
    return static_cast<long>(k.kernel.size()) - matrix_rank(cx->b(n + 1));
}

long hc_rank(const AlgebraSpec& alg, int n, int d) {
    if (n < 0) return 0;
    auto cx = relative_complex(alg, d);
    if (n + 1 > cx->max_n())
        throw PreconditionError("hc_rank needs the degree-(n+1) slice within bounds");
    RankKernel k = matrix_rank_kernel(total_differential(*cx, n));
    return static_cast<long>(k.kernel.size()) - matrix_rank(total_differential(*cx, n + 1));
}

long hn_rank(const AlgebraSpec& alg, int n, int d) {
    // For a nilpotent ideal in characteristic zero HN_n = HC_{n-1};
    // the degree-0 case is the empty complex.
    if (n <= 0) return 0;
    return hc_rank(alg, n - 1, d);
}

RationalMatrix s_map_matrix(const AlgebraSpec& alg, int n, int d) {
    auto cx = relative_complex(alg, d);
    if (n < 0) return RationalMatrix(0, 0);
    if (n + 1 > cx->max_n())
        throw PreconditionError("s_map_matrix needs the degree-(n+1) slice within bounds");
    HomologySlice src = hc_homology(*cx, n);
    if (n <= 1) return RationalMatrix(0, src.rank);
    HomologySlice dst = hc_homology(*cx, n - 2);
    return on_homology(s_shift(*cx, n), src, dst);
}

RationalMatrix adams_psi(const AlgebraSpec& alg, int n, int d, int k) {
    auto cx = relative_complex(alg, d);
    return cx->psi(n, k);
}

std::vector<EigenProjector> eigen_projectors(const AlgebraSpec& alg, int n, int d,
                                             Theory theory) {
    if (theory == Theory::HN) {
        auto shifted = eigen_projectors(alg, n - 1, d, Theory::HC);
        for (auto& p : shifted) {
            p.n = n;
            p.i += 1;
        }
        return shifted;
    }
    auto cx = relative_complex(alg, d);
    if (n < 0) return {};
    if (n + 1 > cx->max_n())
        throw PreconditionError("eigen projectors need the degree-(n+1) slice within bounds");
    HomologySlice h = theory == Theory::HH
                          ? homology_slice(cx->b(n), cx->b(n + 1))
                          : hc_homology(*cx, n);
    RationalMatrix op = theory == Theory::HH ? cx->psi(n, 2) : total_psi(*cx, n);
    RationalMatrix m = on_homology(op, h, h);
    std::vector<EigenProjector> out;
    for (int i = 0; i <= n; ++i)
        out.push_back(EigenProjector{n, d, i, lagrange_projector(m, i, n)});
    return out;
}

long eigen_rank(const AlgebraSpec& alg, int n, int d, int i, Theory theory) {
    if (theory == Theory::HN) {
        // Index shift: HN^{(i)}_n = HC^{(i-1)}_{n-1}.
        if (n <= 0 || i < 1) return 0;
        return eigen_rank(alg, n - 1, d, i - 1, Theory::HC);
    }
    if (n < 0 || i < 0 || i > n) return 0;
    auto family = eigen_projectors(alg, n, d, theory);
    return matrix_rank(family[static_cast<size_t>(i)].matrix);
}

bool ses_consistency(const AlgebraSpec& alg, int n, int d, int i) {
    long hh = eigen_rank(alg, n, d, i, Theory::HH);
    long hc_lower = n >= 1 ? eigen_rank(alg, n - 1, d, i - 1, Theory::HC) : 0;
    long hc_same = eigen_rank(alg, n, d, i, Theory::HC);
    return hh == hc_lower + hc_same;
}

std::vector<Rational> hkr(const DifferentialForm& w, const AlgebraSpec& alg) {
    if (w.vars().size() != alg.num_vars)
        throw PreconditionError("form variables do not match the base ring");
    const int n = w.degree();
    int d = w.internal_degree();
    if (d < 0) d = n;  // zero form: any slice works, use the smallest
    for (const auto& [mask, p] : w.components())
        for (const auto& [m, c] : p.terms())
            if (m.total_degree() + n != d)
                throw PreconditionError("hkr needs a homogeneous form");
    auto cx = relative_complex(alg, d);
    const SliceBasis& base = cx->basis(n);
    std::vector<Rational> chain(static_cast<size_t>(base.dim()), Rational(0));

    for (const auto& [mask, p] : w.components()) {
        std::vector<int> idx;
        for (int i = 0; i < kMaxVars; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        std::sort(idx.begin(), idx.end());
        for (const auto& [m, c] : p.terms()) {
            // a0 = nil * monomial, then the antisymmetrized variables.
            std::vector<int> perm = idx;
            do {
                int inversions = 0;
                for (size_t a = 0; a < perm.size(); ++a)
                    for (size_t b2 = a + 1; b2 < perm.size(); ++b2)
                        if (perm[a] > perm[b2]) ++inversions;
                ChainTensor t;
                AMonomial head;
                head.x[0] = m.e[0];
                head.x[1] = m.e[1];
                head.nil = 1;
                t.push_back(head);
                for (int v : perm) {
                    AMonomial factor;
                    factor.x[static_cast<size_t>(v)] = 1;
                    t.push_back(factor);
                }
                int row = base.find(t);
                if (row < 0) throw std::logic_error("hkr chain left the slice");
                chain[static_cast<size_t>(row)] += inversions % 2 ? -c : c;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
    // Always a b-cycle.
    std::vector<Rational> image = cx->b(n).apply(chain);
    for (const auto& v : image)
        if (!v.is_zero()) throw std::logic_error("hkr image is not a cycle");
    return chain;
}

std::vector<ThickeningRow> thickening_report(const AlgebraSpec& alg, int max_n, int max_d) {
    std::vector<ThickeningRow> rows;
    const int j = alg.nil_order;
    for (int n = 0; n <= max_n; ++n) {
        for (int d = 0; d <= max_d; ++d) {
            long hc_pred = 0, hn_pred = 0;
            for (int deg = n; deg >= 0; deg -= 2)
                hc_pred += static_cast<long>(j) * graded_dimension(deg, d, alg.num_vars);
            for (int deg = n - 1; deg >= 0; deg -= 2)
                hn_pred += static_cast<long>(j) * graded_dimension(deg, d, alg.num_vars);
            long hc_val = hc_rank(alg, n, d);
            long hn_val = hn_rank(alg, n, d);
            rows.push_back({"HC", j, n, d, hc_val, hc_pred, hc_val == hc_pred});
            rows.push_back({"HN", j, n, d, hn_val, hn_pred, hn_val == hn_pred});
        }
    }
    return rows;
}

} // namespace cousinforge
