#include "cousinforge/groebner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "cousinforge/grammar.hpp"

namespace cousinforge {

namespace {

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
    auto [fm, fc] = f.leading_term(ord);
    auto [gm, gc] = g.leading_term(ord);
    Monomial l = Monomial::lcm(fm, gm);
    Polynomial a = Polynomial::term(f.vars(), l / fm, Rational(1) / fc);
    Polynomial b = Polynomial::term(g.vars(), l / gm, Rational(1) / gc);
    return a * f - b * g;
}

std::vector<Polynomial> interreduce(std::vector<Polynomial> basis, const MonomialOrder& ord) {
    // Make monic, drop redundant leads, then fully reduce each element
    // against the others.
    for (auto& g : basis) g = g * (Rational(1) / g.leading_term(ord).second);
    std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ord.less(a.leading_term(ord).first, b.leading_term(ord).first,
                        a.num_vars());
    });
    std::vector<Polynomial> kept;
    for (size_t i = 0; i < basis.size(); ++i) {
        const Monomial lm = basis[i].leading_term(ord).first;
        bool redundant = false;
        for (size_t k = 0; k < kept.size(); ++k) {
            if (kept[k].leading_term(ord).first.divides(lm)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) kept.push_back(basis[i]);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < kept.size(); ++i) {
            std::vector<Polynomial> others;
            for (size_t k = 0; k < kept.size(); ++k)
                if (k != i) others.push_back(kept[k]);
            Polynomial r = others.empty() ? kept[i] : reduce(kept[i], others, ord).remainder;
            if (r != kept[i]) {
                changed = true;
                if (r.is_zero()) {
                    kept.erase(kept.begin() + static_cast<long>(i));
                    --i;
                } else {
                    kept[i] = r * (Rational(1) / r.leading_term(ord).second);
                }
            }
        }
    }
    std::sort(kept.begin(), kept.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ord.less(b.leading_term(ord).first, a.leading_term(ord).first,
                        a.num_vars());
    });
    return kept;
}

} // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                         bool reduce_basis) {
    std::vector<Polynomial> basis;
    for (const auto& g : gens)
        if (!g.is_zero()) basis.push_back(g);
    if (basis.empty()) throw PreconditionError("all-zero generator list");
    const VarSet vars = basis.front().vars();
    for (const auto& g : basis)
        if (g.vars() != vars) throw PreconditionError("variable-list mismatch");
    const int nvars = vars.size();

    // Pair queue keyed by lcm (normal selection: smallest lcm first).
    auto lcm_of = [&](size_t i, size_t j) {
        return Monomial::lcm(basis[i].leading_term(order).first,
                             basis[j].leading_term(order).first);
    };
    auto cmp_pairs = [&](const std::pair<size_t, size_t>& a, const std::pair<size_t, size_t>& b) {
        Monomial la = lcm_of(a.first, a.second), lb = lcm_of(b.first, b.second);
        int c = order.compare(la, lb, nvars);
        if (c != 0) return c < 0;
        return a < b;
    };
    std::vector<std::pair<size_t, size_t>> pending;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) pending.push_back({i, j});

    while (!pending.empty()) {
        auto it = std::min_element(pending.begin(), pending.end(), cmp_pairs);
        auto [i, j] = *it;
        pending.erase(it);
        Monomial fm = basis[i].leading_term(order).first;
        Monomial gm = basis[j].leading_term(order).first;
        if (Monomial::lcm(fm, gm) == fm * gm) continue;  // coprime leads
        Polynomial s = s_polynomial(basis[i], basis[j], order);
        Polynomial r = reduce(s, basis, order).remainder;
        if (r.is_zero()) continue;
        basis.push_back(r);
        for (size_t k = 0; k + 1 < basis.size(); ++k) pending.push_back({k, basis.size() - 1});
    }

    GroebnerBasis out;
    out.order = order;
    if (reduce_basis) {
        out.generators = interreduce(std::move(basis), order);
        out.reduced = true;
    } else {
        out.generators = std::move(basis);
    }
    return out;
}

bool ideal_member(const Polynomial& p, const GroebnerBasis& basis) {
    if (p.is_zero()) return true;
    if (p.vars() != basis.generators.front().vars())
        throw PreconditionError("variable-list mismatch");
    return reduce(p, basis.generators, basis.order).remainder.is_zero();
}

bool zero_dimensional(const GroebnerBasis& basis) {
    if (!basis.reduced) throw PreconditionError("zero_dimensional needs a reduced basis");
    const int nvars = basis.generators.front().num_vars();
    for (int v = 0; v < nvars; ++v) {
        bool found = false;
        for (const auto& g : basis.generators) {
            Monomial lm = g.leading_term(basis.order).first;
            bool pure = lm.e[v] > 0;
            for (int w = 0; w < nvars && pure; ++w)
                if (w != v && lm.e[w] != 0) pure = false;
            if (pure) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

RadicalAnswer radical_contains_point(const GroebnerBasis& basis,
                                     const std::vector<Rational>& point, int power_bound) {
    if (!zero_dimensional(basis))
        throw PreconditionError("radical_contains_point needs a zero-dimensional ideal");
    const VarSet vars = basis.generators.front().vars();
    if (static_cast<int>(point.size()) != vars.size())
        throw PreconditionError("point arity mismatch");
    for (int v = 0; v < vars.size(); ++v) {
        Polynomial lin = Polynomial::variable(vars, v) -
                         Polynomial::constant(vars, point[static_cast<size_t>(v)]);
        bool in = false;
        Polynomial p = lin;
        for (int n = 1; n <= power_bound; ++n) {
            if (ideal_member(p, basis)) {
                in = true;
                break;
            }
            p = p * lin;
        }
        if (!in) return RadicalAnswer::undecided;
    }
    return RadicalAnswer::contained;
}

// ---------------------------------------------------------------------------

struct GroebnerCache::Impl {
    std::mutex mu;
    std::map<std::string, std::shared_ptr<const GroebnerBasis>> memo;
    std::string dir;
};

GroebnerCache::GroebnerCache() : impl_(new Impl) {}
GroebnerCache::~GroebnerCache() = default;

GroebnerCache& GroebnerCache::instance() {
    static GroebnerCache cache;
    return cache;
}

void GroebnerCache::set_directory(const std::string& dir) {
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->dir = dir;
}

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string vars_csv(const VarSet& vars) {
    std::string out;
    for (int i = 0; i < vars.size(); ++i) {
        if (i) out += ",";
        out += vars.names[static_cast<size_t>(i)];
    }
    return out;
}

std::shared_ptr<GroebnerBasis> load_basis_file(const std::string& path,
                                               const MonomialOrder& order) {
    std::ifstream in(path);
    if (!in) return nullptr;
    std::string line;
    if (!std::getline(in, line) || line != "order " + order.str()) return nullptr;
    if (!std::getline(in, line) || line.rfind("vars ", 0) != 0) return nullptr;
    VarSet vars;
    try {
        std::vector<std::string> names;
        std::istringstream vs(line.substr(5));
        std::string name;
        while (std::getline(vs, name, ',')) names.push_back(name);
        vars = VarSet(names);
        auto basis = std::make_shared<GroebnerBasis>();
        basis->order = order;
        basis->reduced = true;
        while (std::getline(in, line)) {
            if (line.rfind("gen ", 0) != 0) return nullptr;
            basis->generators.push_back(parse_polynomial(line.substr(4), vars));
        }
        if (basis->generators.empty()) return nullptr;
        return basis;
    } catch (const std::exception&) {
        return nullptr;  // corrupt entries are recomputed
    }
}

void store_basis_file(const std::string& path, const GroebnerBasis& basis) {
    std::ofstream out(path);
    if (!out) return;
    out << "order " << basis.order.str() << "\n";
    out << "vars " << vars_csv(basis.generators.front().vars()) << "\n";
    for (const auto& g : basis.generators) out << "gen " << g.str() << "\n";
}

} // namespace

std::shared_ptr<const GroebnerBasis> GroebnerCache::reduced_basis(
    const std::vector<Polynomial>& gens, const MonomialOrder& order) {
    std::string key = order.str();
    if (!gens.empty()) key += "#" + vars_csv(gens.front().vars());
    for (const auto& g : gens) key += "|" + g.str();
    std::string dir;
    {
        std::lock_guard<std::mutex> lock(impl_->mu);
        auto it = impl_->memo.find(key);
        if (it != impl_->memo.end()) return it->second;
        dir = impl_->dir;
    }
    std::string path;
    if (!dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        std::ostringstream name;
        name << std::hex << fnv1a(key);
        path = dir + "/" + name.str() + ".gb";
        if (auto loaded = load_basis_file(path, order)) {
            std::lock_guard<std::mutex> lock(impl_->mu);
            auto [it, inserted] = impl_->memo.emplace(key, std::move(loaded));
            return it->second;
        }
    }
    auto basis = std::make_shared<GroebnerBasis>(buchberger(gens, order, true));
    if (!path.empty()) store_basis_file(path, *basis);
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto [it, inserted] = impl_->memo.emplace(key, std::move(basis));
    return it->second;
}

} // namespace cousinforge
