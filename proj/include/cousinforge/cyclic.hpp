// Graded bar-complex engine for relative Hochschild, cyclic, and negative
// cyclic homology of R[eps] and R[t]/(t^{j+1}) over Q, with Adams/lambda
// eigenprojections obtained from the multishuffle power operator.
#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cousinforge/forms.hpp"
#include "cousinforge/matrix.hpp"

namespace cousinforge {

// Base ring R in {Q, Q[x], Q[x,y]} with a nilpotent thickening of order
// j >= 1 (j = 1 is the dual-number case; the generator is named eps, or t
// for j >= 2). The augmentation ideal is (eps) resp. (t).
struct AlgebraSpec {
    int num_vars = 0;   // 0, 1, 2
    int nil_order = 1;  // j; generator satisfies gen^{j+1} = 0

    static AlgebraSpec make(int num_vars, int nil_order);
    // Accepts "Q", "Q[x]", "Q[x,y]".
    static AlgebraSpec parse(const std::string& base, int nil_order);

    std::string base_name() const;
    std::string nil_name() const { return nil_order == 1 ? "eps" : "t"; }
    // Documented desk-scale bounds.
    int max_homological_degree() const { return num_vars == 2 ? 4 : 5; }
    static constexpr int kMaxInternalDegree = 4;

    bool operator==(const AlgebraSpec& o) const {
        return num_vars == o.num_vars && nil_order == o.nil_order;
    }
};

// Monomial of A = R[t]/(t^{j+1}): polynomial exponents and the nilpotent
// exponent. Internal degree counts only the polynomial part.
struct AMonomial {
    std::array<int, 2> x{0, 0};
    int nil = 0;

    int poly_degree() const { return x[0] + x[1]; }
    bool is_constant() const { return x[0] == 0 && x[1] == 0 && nil == 0; }
    bool operator<(const AMonomial& o) const {
        if (nil != o.nil) return nil < o.nil;
        return x < o.x;
    }
    bool operator==(const AMonomial& o) const { return nil == o.nil && x == o.x; }
    std::string str(const AlgebraSpec& alg) const;
};

// a0 (x) abar_1 (x) ... (x) abar_n; factors 1..n are nonconstant and at
// least one factor lies in the augmentation ideal.
using ChainTensor = std::vector<AMonomial>;

struct SliceBasis {
    std::vector<ChainTensor> elems;
    std::map<ChainTensor, int> index;

    int dim() const { return static_cast<int>(elems.size()); }
    int find(const ChainTensor& t) const {
        auto it = index.find(t);
        return it == index.end() ? -1 : it->second;
    }
};

// All chain groups and boundary data of the relative normalized complex
// for one algebra at one internal degree. Construction of each map checks
// b b = 0, B B = 0, b B + B b = 0 exactly.
class RelativeComplex {
public:
    RelativeComplex(AlgebraSpec alg, int internal_degree);

    const AlgebraSpec& alg() const { return alg_; }
    int internal_degree() const { return d_; }
    int max_n() const { return alg_.max_homological_degree(); }

    const SliceBasis& basis(int n);
    const RationalMatrix& b(int n);     // C_n -> C_{n-1}
    const RationalMatrix& connes(int n);  // B: C_n -> C_{n+1}
    // Multishuffle power operator psi^k on C_n (k >= 1).
    RationalMatrix psi(int n, int k);

private:
    AlgebraSpec alg_;
    int d_;
    std::vector<AMonomial> monomials_;  // poly degree <= d_, sorted
    // Lazily built and memoized; map nodes stay put, so returned
    // references survive later insertions. The recursive mutex makes
    // concurrent slice requests safe.
    std::recursive_mutex mu_;
    std::map<int, SliceBasis> bases_;
    std::map<int, RationalMatrix> b_, connes_;
    std::map<std::pair<int, int>, RationalMatrix> psi_;
    std::map<int, bool> checked_;

    void check_identities(int n);
};

// Shared construction cache; complexes are immutable once built.
std::shared_ptr<RelativeComplex> relative_complex(const AlgebraSpec& alg, int d);

struct GradedSlice {
    AlgebraSpec alg;
    int n = 0, d = 0;
    std::vector<ChainTensor> basis;
    RationalMatrix b;       // to degree n-1
    RationalMatrix connes;  // to degree n+1

    int dim() const { return static_cast<int>(basis.size()); }
};

GradedSlice build_slice(const AlgebraSpec& alg, int n, int d);

// Homology of a two-sided slice d_out: C -> C', d_in: C'' -> C, with
// chosen cycle representatives and the coordinate solver used to express
// further cycles in terms of (boundaries, representatives).
struct HomologySlice {
    int rank = 0;
    RationalMatrix reps;        // dim(C) x rank, columns are representatives
    RationalMatrix express_in;  // [d_in | reps], kept for coordinates
    int boundary_cols = 0;
};

HomologySlice homology_slice(const RationalMatrix& d_out, const RationalMatrix& d_in);

// Matrix of a chain map on homology: op maps cycles of the source slice
// to cycles of the target slice (source == target for endomorphisms).
RationalMatrix on_homology(const RationalMatrix& op, const HomologySlice& source,
                           const HomologySlice& target);

enum class Theory { HH, HC, HN };

long hh_rank(const AlgebraSpec& alg, int n, int d);
long hc_rank(const AlgebraSpec& alg, int n, int d);
long hn_rank(const AlgebraSpec& alg, int n, int d);

// Differential T_n -> T_{n-1} of the b-B bicomplex truncation whose
// homology is relative HC; exposed for inspection and tests.
RationalMatrix hc_total_differential(const AlgebraSpec& alg, int n, int d);

// Periodicity operator on homology: HC_n -> HC_{n-2} induced by deleting
// the first column of the b-B bicomplex. Empty matrix when n <= 1.
RationalMatrix s_map_matrix(const AlgebraSpec& alg, int n, int d);

// Chain-level psi^k on the (n, d) Hochschild slice.
RationalMatrix adams_psi(const AlgebraSpec& alg, int n, int d, int k = 2);

struct EigenProjector {
    int n = 0, d = 0, i = 0;
    RationalMatrix matrix;  // on the homology slice
};

// Spectral projector family of psi^2 on the homology slice of the given
// theory (eigenvalue 2^i <-> index i). Index 0..n; for HN the family of
// HC at (n-1) with indices shifted by one.
std::vector<EigenProjector> eigen_projectors(const AlgebraSpec& alg, int n, int d,
                                             Theory theory);

long eigen_rank(const AlgebraSpec& alg, int n, int d, int i, Theory theory);

// rank HH^{(i)}_n == rank HC^{(i-1)}_{n-1} + rank HC^{(i)}_n at degree d.
bool ses_consistency(const AlgebraSpec& alg, int n, int d, int i);

// Antisymmetrization of a form over R into the relative slice (multiplied
// into the ideal by the nilpotent generator); always a b-cycle.
std::vector<Rational> hkr(const DifferentialForm& w, const AlgebraSpec& alg);

struct ThickeningRow {
    std::string theory;
    int j = 0, n = 0, d = 0;
    long computed = 0;
    long predicted = 0;
    bool match = false;
};

// Computed relative HC/HN ranks next to the j-fold bundle prediction;
// discrepancies are reported, never asserted away.
std::vector<ThickeningRow> thickening_report(const AlgebraSpec& alg, int max_n, int max_d);

} // namespace cousinforge
