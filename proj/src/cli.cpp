#include "cousinforge/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cousinforge/arcs.hpp"
#include "cousinforge/cyclic.hpp"
#include "cousinforge/gersten.hpp"
#include "cousinforge/grammar.hpp"
#include "cousinforge/groebner.hpp"
#include "cousinforge/localcoh.hpp"
#include "cousinforge/verify.hpp"

namespace cousinforge {

namespace {

using nlohmann::json;

struct GlobalOptions {
    bool emit_json = false;
    std::string order = "grevlex";
    int max_degree = 16;
    std::string boundary_sign = "+";
    std::string cache_dir;

    MonomialOrder monomial_order() const {
        return order == "lex" ? MonomialOrder::lex() : MonomialOrder::grevlex();
    }
    BoundarySign sign() const {
        return boundary_sign == "-" ? BoundarySign::minus : BoundarySign::plus;
    }
};

const VarSet& xy_vars() {
    static const VarSet v({"x", "y"});
    return v;
}
const VarSet& t_var() {
    static const VarSet v({"t"});
    return v;
}

VarSet vars_from_csv(const std::string& csv) {
    std::vector<std::string> names;
    size_t start = 0;
    while (start <= csv.size()) {
        size_t comma = csv.find(',', start);
        std::string piece =
            comma == std::string::npos ? csv.substr(start) : csv.substr(start, comma - start);
        if (!piece.empty()) names.push_back(piece);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return VarSet(names);
}

Polynomial parse_poly_checked(const std::string& text, const VarSet& vars,
                              const GlobalOptions& g) {
    Polynomial p = parse_polynomial(text, vars);
    if (p.degree() > g.max_degree)
        throw PreconditionError("input degree exceeds --max-degree");
    return p;
}

void emit(std::ostream& out, const GlobalOptions& g, const json& record,
          const std::string& human) {
    if (g.emit_json)
        out << record.dump() << "\n";
    else
        out << human << "\n";
}

int exit_code_for_bool(bool value) { return value ? 0 : 1; }

// ---------------------------------------------------------------------------

int run_single(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_tangent_divisor(const GlobalOptions& g, const std::string& f, const std::string& f1,
                        const std::string& gstr, const std::string& g1, std::ostream& out) {
    DivisorArc arc(parse_poly_checked(f, xy_vars(), g), parse_poly_checked(f1, xy_vars(), g),
                   parse_poly_checked(gstr, xy_vars(), g), parse_poly_checked(g1, xy_vars(), g));
    H1Class cls = tangent_divisor(arc);
    bool zero = h1_is_zero(cls);
    json rec{{"command", "tangent-divisor"}, {"class", cls.str()}, {"zero", zero},
             {"omega", cls.omega().str()},  {"s", cls.s().str()},
             {"f", cls.f().str()},          {"k", cls.k()}};
    emit(out, g, rec, "class: " + cls.str() + "\nzero: " + (zero ? "true" : "false"));
    return 0;
}

int cmd_tangent_cycle(const GlobalOptions& g, const std::string& u, const std::string& v,
                      const std::string& u1, const std::string& v1, std::ostream& out) {
    ZeroCycleArc arc(parse_poly_checked(u, xy_vars(), g), parse_poly_checked(v, xy_vars(), g),
                     parse_poly_checked(u1, xy_vars(), g), parse_poly_checked(v1, xy_vars(), g));
    H2Class cls = tangent_zero_cycle(arc);
    bool zero = h2_is_zero(cls);
    json rec{{"command", "tangent-cycle"}, {"class", cls.str()}, {"zero", zero},
             {"omega", cls.omega().str()}, {"u", cls.u().str()}, {"v", cls.v().str()},
             {"p", cls.p()},               {"q", cls.q()}};
    emit(out, g, rec, "class: " + cls.str() + "\nzero: " + (zero ? "true" : "false"));
    return 0;
}

int cmd_boundary(const GlobalOptions& g, const std::string& cls_text, const std::string& point,
                 int power_bound, std::ostream& out) {
    H1Class cls = parse_h1_class(cls_text, xy_vars());
    auto pt = parse_point(point, 2);
    H2Class img = cousin_boundary(cls, pt[0], pt[1], power_bound, g.sign());
    bool zero = h2_is_zero(img);
    json rec{{"command", "boundary"}, {"class", img.str()}, {"zero", zero},
             {"omega", img.omega().str()}, {"u", img.u().str()}, {"v", img.v().str()},
             {"p", img.p()},               {"q", img.q()}};
    emit(out, g, rec, "class: " + img.str() + "\nzero: " + (zero ? "true" : "false"));
    return 0;
}

int cmd_check_square(const GlobalOptions& g, const std::string& f, const std::string& f1,
                     const std::string& gstr, const std::string& g1, const std::string& point,
                     uint64_t seed, std::ostream& out) {
    DivisorArc arc(parse_poly_checked(f, xy_vars(), g), parse_poly_checked(f1, xy_vars(), g),
                   parse_poly_checked(gstr, xy_vars(), g), parse_poly_checked(g1, xy_vars(), g));
    auto pt = parse_point(point, 2);
    bool ok = check_square(arc, pt[0], pt[1], seed, g.sign());
    json rec{{"command", "check-square"}, {"commutes", ok}};
    emit(out, g, rec, std::string("commutes: ") + (ok ? "true" : "false"));
    return exit_code_for_bool(ok);
}

Place parse_place(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return Place::infinity();
    return Place::finite(Rational::parse(text));
}

RationalFunction parse_rational_function(const std::string& text, const GlobalOptions& g) {
    // "num" or "num / den" in the t grammar; parentheses handled by the
    // polynomial parser.
    size_t slash = std::string::npos;
    int depth = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (depth == 0 && text[i] == '/' ) {
            // Rational literals like 1/2 keep digits on both sides; a
            // function split has a non-digit neighbour.
            size_t l = i;
            while (l > 0 && text[l - 1] == ' ') --l;
            size_t r = i + 1;
            while (r < text.size() && text[r] == ' ') ++r;
            bool digit_left = l > 0 && std::isdigit(static_cast<unsigned char>(text[l - 1]));
            bool digit_right = r < text.size() && std::isdigit(static_cast<unsigned char>(text[r]));
            if (!(digit_left && digit_right)) {
                slash = i;
                break;
            }
        }
    }
    if (slash == std::string::npos)
        return RationalFunction(parse_poly_checked(text, t_var(), g),
                                Polynomial::constant(t_var(), Rational(1)));
    return RationalFunction(parse_poly_checked(text.substr(0, slash), t_var(), g),
                            parse_poly_checked(text.substr(slash + 1), t_var(), g));
}

int cmd_tame(const GlobalOptions& g, const std::string& place, const std::string& f,
             const std::string& gstr, std::ostream& out) {
    Rational val = tame_symbol(parse_place(place), parse_rational_function(f, g),
                               parse_rational_function(gstr, g));
    json rec{{"command", "tame"}, {"value", val.str()}};
    emit(out, g, rec, val.str());
    return 0;
}

int cmd_reciprocity(const GlobalOptions& g, const std::string& f, const std::string& gstr,
                    std::ostream& out) {
    Rational val = weil_reciprocity(parse_rational_function(f, g),
                                    parse_rational_function(gstr, g));
    json rec{{"command", "reciprocity"}, {"value", val.str()}};
    emit(out, g, rec, val.str());
    return exit_code_for_bool(val.is_one());
}

std::vector<Polynomial> parse_generators(const std::string& text, const VarSet& vars,
                                         const GlobalOptions& g) {
    std::vector<Polynomial> gens;
    size_t start = 0;
    while (start <= text.size()) {
        size_t semi = text.find(';', start);
        std::string piece =
            semi == std::string::npos ? text.substr(start) : text.substr(start, semi - start);
        if (piece.find_first_not_of(" \t") != std::string::npos)
            gens.push_back(parse_poly_checked(piece, vars, g));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    if (gens.empty()) throw PreconditionError("empty generator list");
    return gens;
}

// ---------------------------------------------------------------------------

struct CyclicArgs {
    std::string theory = "hc";
    std::string base = "Q[x]";
    int thick = 1;
    int n = 0, d = 0, i = 1, k = 2;
    std::string w;
    std::string suite = "all";
    int j = 2, max_n = 2, max_d = 2;
};

Theory parse_theory(const std::string& name) {
    if (name == "hh") return Theory::HH;
    if (name == "hc") return Theory::HC;
    if (name == "hn") return Theory::HN;
    throw PreconditionError("unknown theory: " + name);
}

long pattern_prediction(Theory th, int n, int d, int vars) {
    long total = 0;
    int top = th == Theory::HH ? n : (th == Theory::HC ? n : n - 1);
    int step = th == Theory::HH ? 1 : 2;
    for (int deg = top; deg >= 0; deg -= step) total += graded_dimension(deg, d, vars);
    return total;
}

long eigen_prediction(Theory th, int n, int d, int i, int vars) {
    auto hc_piece = [&](int nn, int ii) -> long {
        if (ii < nn / 2 || ii > nn) return 0;
        return graded_dimension(2 * ii - nn, d, vars);
    };
    switch (th) {
        case Theory::HC: return hc_piece(n, i);
        case Theory::HN: return n >= 1 ? hc_piece(n - 1, i - 1) : 0;
        case Theory::HH: return hc_piece(n, i) + (n >= 1 ? hc_piece(n - 1, i - 1) : 0);
    }
    return 0;
}

int cmd_cyclic_rank(const GlobalOptions& g, const CyclicArgs& a, std::ostream& out) {
    AlgebraSpec alg = AlgebraSpec::parse(a.base, a.thick);
    Theory th = parse_theory(a.theory);
    long computed = th == Theory::HH   ? hh_rank(alg, a.n, a.d)
                    : th == Theory::HC ? hc_rank(alg, a.n, a.d)
                                       : hn_rank(alg, a.n, a.d);
    long predicted = pattern_prediction(th, a.n, a.d, alg.num_vars);
    json rec{{"command", "cyclic rank"}, {"theory", a.theory}, {"base", a.base},
             {"j", a.thick},  {"n", a.n},           {"d", a.d},
             {"computed", computed}, {"predicted", predicted},
             {"source", a.thick == 1 ? "pattern" : "exploratory"}};
    std::ostringstream os;
    os << a.theory << " " << a.base << " j=" << a.thick << " n=" << a.n << " d=" << a.d
       << " computed=" << computed << " predicted=" << predicted;
    emit(out, g, rec, os.str());
    return 0;
}

int cmd_cyclic_eigen(const GlobalOptions& g, const CyclicArgs& a, std::ostream& out) {
    AlgebraSpec alg = AlgebraSpec::parse(a.base, a.thick);
    Theory th = parse_theory(a.theory);
    long computed = eigen_rank(alg, a.n, a.d, a.i, th);
    long predicted = a.thick == 1 ? eigen_prediction(th, a.n, a.d, a.i, alg.num_vars) : -1;
    json rec{{"command", "cyclic eigen"}, {"theory", a.theory}, {"base", a.base},
             {"j", a.thick},  {"n", a.n},  {"d", a.d},  {"i", a.i},
             {"computed", computed}, {"predicted", predicted},
             {"source", a.thick == 1 ? "pattern" : "exploratory"}};
    std::ostringstream os;
    os << a.theory << "^(" << a.i << ") " << a.base << " n=" << a.n << " d=" << a.d
       << " computed=" << computed << " predicted=" << predicted;
    emit(out, g, rec, os.str());
    return 0;
}

int cmd_cyclic_smap(const GlobalOptions& g, const CyclicArgs& a, std::ostream& out) {
    AlgebraSpec alg = AlgebraSpec::parse(a.base, a.thick);
    RationalMatrix s = s_map_matrix(alg, a.n, a.d);
    json rec{{"command", "cyclic smap"}, {"base", a.base}, {"n", a.n}, {"d", a.d},
             {"rows", s.rows()},         {"cols", s.cols()}, {"zero", s.is_zero()}};
    std::ostringstream os;
    os << "S: " << s.rows() << "x" << s.cols() << "\n"
       << s.str() << (s.rows() ? "\n" : "") << "zero: " << (s.is_zero() ? "true" : "false");
    emit(out, g, rec, os.str());
    return 0;
}

int cmd_cyclic_psi(const GlobalOptions& g, const CyclicArgs& a, std::ostream& out) {
    AlgebraSpec alg = AlgebraSpec::parse(a.base, a.thick);
    RationalMatrix m = adams_psi(alg, a.n, a.d, a.k);
    json rec{{"command", "cyclic psi"}, {"base", a.base}, {"n", a.n},
             {"d", a.d},               {"k", a.k},       {"dim", m.rows()}};
    std::ostringstream os;
    os << "psi^" << a.k << " on C_" << a.n << " (dim " << m.rows() << ")\n" << m.str();
    emit(out, g, rec, os.str());
    return 0;
}

int cmd_cyclic_slice(const GlobalOptions& g, const CyclicArgs& a, std::ostream& out) {
    AlgebraSpec alg = AlgebraSpec::parse(a.base, a.thick);
    GradedSlice slice = build_slice(alg, a.n, a.d);
    json basis = json::array();
    for (const auto& t : slice.basis) {
        std::string s;
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) s += " (x) ";
            s += t[i].str(alg);
        }
        basis.push_back(s);
    }
    json rec{{"command", "cyclic slice"}, {"base", a.base}, {"n", a.n}, {"d", a.d},
             {"dim", slice.dim()},        {"basis", basis}};
    std::ostringstream os;
    os << "dim C_" << a.n << "(d=" << a.d << ") = " << slice.dim();
    for (const auto& b : basis) os << "\n  " << b.get<std::string>();
    emit(out, g, rec, os.str());
    return 0;
}

int cmd_cyclic_ses(const GlobalOptions& g, const CyclicArgs& a, std::ostream& out) {
    AlgebraSpec alg = AlgebraSpec::parse(a.base, a.thick);
    bool ok = ses_consistency(alg, a.n, a.d, a.i);
    json rec{{"command", "cyclic ses"}, {"base", a.base}, {"n", a.n},
             {"d", a.d},               {"i", a.i},       {"consistent", ok}};
    emit(out, g, rec, std::string("consistent: ") + (ok ? "true" : "false"));
    return exit_code_for_bool(ok);
}

int cmd_cyclic_hkr(const GlobalOptions& g, const CyclicArgs& a, std::ostream& out) {
    AlgebraSpec alg = AlgebraSpec::parse(a.base, a.thick);
    VarSet vars = alg.num_vars == 0   ? VarSet(std::vector<std::string>{})
                  : alg.num_vars == 1 ? VarSet({"x"})
                                      : VarSet({"x", "y"});
    DifferentialForm w = parse_form(a.w, vars);
    std::vector<Rational> chain = hkr(w, alg);
    int support = 0;
    for (const auto& c : chain)
        if (!c.is_zero()) ++support;
    // Nonzero in homology iff the cycle is not a boundary.
    int d = w.internal_degree() < 0 ? w.degree() : w.internal_degree();
    auto cx = relative_complex(alg, d);
    bool boundary = support == 0;
    if (!boundary && w.degree() + 1 <= cx->max_n())
        boundary = solve(cx->b(w.degree() + 1), chain).consistent;
    json rec{{"command", "cyclic hkr"}, {"base", a.base}, {"form", w.str()},
             {"support", support},      {"class_nonzero", !boundary}};
    std::ostringstream os;
    os << "cycle support: " << support << "\nclass nonzero: " << (boundary ? "false" : "true");
    emit(out, g, rec, os.str());
    return 0;
}

int cmd_cyclic_thickening(const GlobalOptions& g, const CyclicArgs& a, std::ostream& out) {
    AlgebraSpec alg = AlgebraSpec::parse(a.base, a.j);
    auto rows = thickening_report(alg, a.max_n, a.max_d);
    json arr = json::array();
    std::ostringstream os;
    os << "theory base j n d computed predicted match";
    for (const auto& r : rows) {
        arr.push_back(json{{"theory", r.theory}, {"base", a.base}, {"j", r.j},
                           {"n", r.n},           {"d", r.d},       {"computed", r.computed},
                           {"predicted", r.predicted}, {"source", "bundle-pattern"}});
        os << "\n" << r.theory << " " << a.base << " " << r.j << " " << r.n << " " << r.d << " "
           << r.computed << " " << r.predicted << " " << (r.match ? "yes" : "NO");
    }
    json rec{{"command", "cyclic thickening"}, {"rows", arr}};
    emit(out, g, rec, os.str());
    return 0;
}

int cmd_verify(const GlobalOptions& g, const std::string& suite, std::ostream& out) {
    auto results = run_verify(suite);
    bool all_pass = true;
    json arr = json::array();
    std::ostringstream os;
    bool first = true;
    for (const auto& r : results) {
        if (r.gated && !r.pass) all_pass = false;
        arr.push_back(json{{"criterion", r.id}, {"pass", r.pass}, {"gated", r.gated},
                           {"detail", r.detail}});
        if (!first) os << "\n";
        first = false;
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << (r.gated ? "" : " (exploratory)")
           << " - " << r.detail;
    }
    json rec{{"command", "verify"}, {"suite", suite}, {"results", arr}, {"pass", all_pass}};
    emit(out, g, rec, os.str());
    return all_pass ? 0 : 1;
}

int cmd_run_taskfile(const GlobalOptions& g, const std::string& path, std::ostream& out,
                     std::ostream& err) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open task file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("task file: ") + e.what());
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "settings" && key != "commands")
            throw ParseError("task file: unknown field '" + key + "'");
    }
    std::vector<std::string> global_flags;
    if (doc.contains("settings")) {
        const json& s = doc["settings"];
        for (const auto& [key, value] : s.items()) {
            if (key == "order")
                global_flags.insert(global_flags.end(), {"--order", value.get<std::string>()});
            else if (key == "max_degree")
                global_flags.insert(global_flags.end(),
                                    {"--max-degree", std::to_string(value.get<int>())});
            else if (key == "boundary_sign")
                global_flags.insert(global_flags.end(),
                                    {"--boundary-sign", value.get<std::string>()});
            else if (key == "json" && value.get<bool>())
                global_flags.push_back("--json");
            else if (key == "cache_dir")
                global_flags.insert(global_flags.end(), {"--cache-dir", value.get<std::string>()});
            else
                throw ParseError("task file: unknown setting '" + key + "'");
        }
    }
    if (!doc.contains("commands") || !doc["commands"].is_array())
        throw ParseError("task file: missing 'commands' array");

    struct Entry {
        std::vector<std::string> argv;
        std::string name;
        int code = 0;
        std::string output, errors;
    };
    std::vector<Entry> entries;
    for (const auto& cmd : doc["commands"]) {
        for (const auto& [key, value] : cmd.items())
            if (key != "command" && key != "args")
                throw ParseError("task file: unknown command field '" + key + "'");
        if (!cmd.contains("command")) throw ParseError("task file: command without name");
        Entry e;
        e.name = cmd["command"].get<std::string>();
        std::istringstream split(e.name);
        std::string word;
        while (split >> word) e.argv.push_back(word);
        e.argv.insert(e.argv.end(), global_flags.begin(), global_flags.end());
        if (cmd.contains("args")) {
            for (const auto& [key, value] : cmd["args"].items()) {
                if (value.is_boolean()) {
                    if (value.get<bool>()) e.argv.push_back("--" + key);
                } else if (value.is_string()) {
                    e.argv.insert(e.argv.end(), {"--" + key, value.get<std::string>()});
                } else {
                    e.argv.insert(e.argv.end(), {"--" + key, value.dump()});
                }
            }
        }
        entries.push_back(std::move(e));
    }

    // Commands are pure; run them concurrently but report in file order.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (size_t i = 0; i < entries.size(); ++i) {
        std::ostringstream cout_cap, cerr_cap;
        entries[i].code = run_single(entries[i].argv, cout_cap, cerr_cap);
        entries[i].output = cout_cap.str();
        entries[i].errors = cerr_cap.str();
    }

    int worst = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        out << "## [" << i << "] " << entries[i].name << " (exit " << entries[i].code << ")\n";
        out << entries[i].output;
        if (!entries[i].errors.empty()) err << entries[i].errors;
        worst = std::max(worst, entries[i].code);
    }
    (void)g;
    return worst;
}

// ---------------------------------------------------------------------------

int run_single(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"cousinforge: exact tangent classes, local cohomology and cyclic homology"};
    app.require_subcommand(1);
    auto g = std::make_shared<GlobalOptions>();
    app.add_flag("--json", g->emit_json, "machine-readable output");
    app.add_option("--order", g->order, "monomial order")->check(CLI::IsMember({"lex", "grevlex"}));
    app.add_option("--max-degree", g->max_degree, "input degree guard");
    app.add_option("--boundary-sign", g->boundary_sign, "global Cousin boundary sign")
        ->check(CLI::IsMember({"+", "-"}));
    app.add_option("--cache-dir", g->cache_dir, "Groebner basis cache directory");

    // tangent-divisor
    auto* td = app.add_subcommand("tangent-divisor", "tangent of {div(f+eps f1), g+eps g1}");
    auto td_f = std::make_shared<std::string>();
    auto td_f1 = std::make_shared<std::string>();
    auto td_g = std::make_shared<std::string>();
    auto td_g1 = std::make_shared<std::string>();
    td->add_option("--f", *td_f)->required();
    td->add_option("--f1", *td_f1)->required();
    td->add_option("--g", *td_g)->required();
    td->add_option("--g1", *td_g1)->required();

    auto* tc = app.add_subcommand("tangent-cycle", "tangent of V(u+eps u1, v+eps v1)");
    auto tc_u = std::make_shared<std::string>();
    auto tc_v = std::make_shared<std::string>();
    auto tc_u1 = std::make_shared<std::string>();
    auto tc_v1 = std::make_shared<std::string>();
    tc->add_option("--u", *tc_u)->required();
    tc->add_option("--v", *tc_v)->required();
    tc->add_option("--u1", *tc_u1)->required();
    tc->add_option("--v1", *tc_v1)->required();

    auto* bd = app.add_subcommand("boundary", "Cousin boundary of an H1 class at a point");
    auto bd_class = std::make_shared<std::string>();
    auto bd_point = std::make_shared<std::string>();
    auto bd_bound = std::make_shared<int>(0);
    bd->add_option("--class", *bd_class)->required();
    bd->add_option("--point", *bd_point)->required();
    bd->add_option("--power-bound", *bd_bound);

    auto* cs = app.add_subcommand("check-square", "tangent square commutation at a point");
    auto cs_f = std::make_shared<std::string>();
    auto cs_f1 = std::make_shared<std::string>();
    auto cs_g = std::make_shared<std::string>();
    auto cs_g1 = std::make_shared<std::string>();
    auto cs_point = std::make_shared<std::string>();
    auto cs_seed = std::make_shared<uint64_t>(1);
    cs->add_option("--f", *cs_f)->required();
    cs->add_option("--f1", *cs_f1)->required();
    cs->add_option("--g", *cs_g)->required();
    cs->add_option("--g1", *cs_g1)->required();
    cs->add_option("--point", *cs_point)->required();
    cs->add_option("--seed", *cs_seed);

    auto* tame = app.add_subcommand("tame", "tame symbol at a place of Q(t)");
    auto tame_place = std::make_shared<std::string>();
    auto tame_f = std::make_shared<std::string>();
    auto tame_g = std::make_shared<std::string>();
    tame->add_option("--place", *tame_place)->required();
    tame->add_option("--f", *tame_f)->required();
    tame->add_option("--g", *tame_g)->required();

    auto* rec = app.add_subcommand("reciprocity", "product of tame symbols over all places");
    auto rec_f = std::make_shared<std::string>();
    auto rec_g = std::make_shared<std::string>();
    rec->add_option("--f", *rec_f)->required();
    rec->add_option("--g", *rec_g)->required();

    auto* ordc = app.add_subcommand("ord", "order of a rational function at a place");
    auto ord_place = std::make_shared<std::string>();
    auto ord_f = std::make_shared<std::string>();
    ordc->add_option("--place", *ord_place)->required();
    ordc->add_option("--f", *ord_f)->required();

    auto* lin = app.add_subcommand("arc-linearity", "additivity of the divisor tangent map");
    auto lin_f = std::make_shared<std::string>();
    auto lin_g = std::make_shared<std::string>();
    auto lin_f1a = std::make_shared<std::string>();
    auto lin_g1a = std::make_shared<std::string>();
    auto lin_f1b = std::make_shared<std::string>();
    auto lin_g1b = std::make_shared<std::string>();
    lin->add_option("--f", *lin_f)->required();
    lin->add_option("--g", *lin_g)->required();
    lin->add_option("--f1a", *lin_f1a)->required();
    lin->add_option("--g1a", *lin_g1a)->required();
    lin->add_option("--f1b", *lin_f1b)->required();
    lin->add_option("--g1b", *lin_g1b)->required();

    // gb group
    auto* gb = app.add_subcommand("gb", "Groebner basis operations");
    gb->require_subcommand(1);
    auto gb_gens = std::make_shared<std::string>();
    auto gb_p = std::make_shared<std::string>();
    auto gb_vars = std::make_shared<std::string>("x,y");
    auto gb_point = std::make_shared<std::string>();
    auto gb_bound = std::make_shared<int>(8);
    auto* gbc = gb->add_subcommand("compute", "reduced basis");
    gbc->add_option("--gens", *gb_gens)->required();
    gbc->add_option("--vars", *gb_vars);
    auto* gbm = gb->add_subcommand("member", "ideal membership");
    gbm->add_option("--gens", *gb_gens)->required();
    gbm->add_option("--p", *gb_p)->required();
    gbm->add_option("--vars", *gb_vars);
    auto* gbz = gb->add_subcommand("zero-dim", "finiteness of V(I)");
    gbz->add_option("--gens", *gb_gens)->required();
    gbz->add_option("--vars", *gb_vars);
    auto* gbr = gb->add_subcommand("radical-point", "radical point certificate");
    gbr->add_option("--gens", *gb_gens)->required();
    gbr->add_option("--point", *gb_point)->required();
    gbr->add_option("--bound", *gb_bound);
    gbr->add_option("--vars", *gb_vars);

    // poly
    auto* poly = app.add_subcommand("poly", "polynomial arithmetic and division");
    auto poly_op = std::make_shared<std::string>();
    auto poly_a = std::make_shared<std::string>();
    auto poly_b = std::make_shared<std::string>();
    auto poly_vars = std::make_shared<std::string>("x,y");
    poly->add_option("--op", *poly_op)->required()->check(
        CLI::IsMember({"add", "sub", "mul", "div"}));
    poly->add_option("--a", *poly_a)->required();
    poly->add_option("--b", *poly_b)->required();
    poly->add_option("--vars", *poly_vars);

    // form
    auto* form = app.add_subcommand("form", "differential form operations");
    form->require_subcommand(1);
    auto form_w = std::make_shared<std::string>();
    auto form_b = std::make_shared<std::string>();
    auto form_vars = std::make_shared<std::string>("x,y");
    auto form_n = std::make_shared<int>(0);
    auto form_d = std::make_shared<int>(0);
    auto form_k = std::make_shared<int>(2);
    auto form_m = std::make_shared<int>(2);
    auto form_j = std::make_shared<int>(0);
    auto* form_dd = form->add_subcommand("d", "exterior derivative");
    form_dd->add_option("--w", *form_w)->required();
    form_dd->add_option("--vars", *form_vars);
    auto* form_wedge = form->add_subcommand("wedge", "wedge product");
    form_wedge->add_option("--a", *form_w)->required();
    form_wedge->add_option("--b", *form_b)->required();
    form_wedge->add_option("--vars", *form_vars);
    auto* form_dim = form->add_subcommand("dim", "graded dimension of Omega^n");
    form_dim->add_option("--n", *form_n)->required();
    form_dim->add_option("--d", *form_d)->required();
    form_dim->add_option("--k", *form_k)->required();
    auto* form_bundle = form->add_subcommand("bundle", "Omega bundle degrees");
    form_bundle->add_option("--m", *form_m)->required();
    form_bundle->add_option("--j", *form_j);
    form_bundle->add_option("--k", *form_k)->required();

    // h1 / h2
    auto* h1 = app.add_subcommand("h1", "H^1 class decisions");
    h1->require_subcommand(1);
    auto h1_a = std::make_shared<std::string>();
    auto h1_b = std::make_shared<std::string>();
    auto* h1z = h1->add_subcommand("zero", "vanishing test");
    h1z->add_option("--class", *h1_a)->required();
    auto* h1e = h1->add_subcommand("equal", "equality test");
    h1e->add_option("--a", *h1_a)->required();
    h1e->add_option("--b", *h1_b)->required();

    auto* h2 = app.add_subcommand("h2", "H^2 class decisions");
    h2->require_subcommand(1);
    auto h2_a = std::make_shared<std::string>();
    auto h2_b = std::make_shared<std::string>();
    auto h2_p = std::make_shared<int>(0);
    auto h2_q = std::make_shared<int>(0);
    auto h2_point = std::make_shared<std::string>("0,0");
    auto* h2z = h2->add_subcommand("zero", "vanishing test");
    h2z->add_option("--class", *h2_a)->required();
    auto* h2e = h2->add_subcommand("equal", "equality test");
    h2e->add_option("--a", *h2_a)->required();
    h2e->add_option("--b", *h2_b)->required();
    auto* h2r = h2->add_subcommand("rebase", "raise powers along the colimit");
    h2r->add_option("--class", *h2_a)->required();
    h2r->add_option("--p", *h2_p)->required();
    h2r->add_option("--q", *h2_q)->required();
    auto* h2x = h2->add_subcommand("expand", "inverse-system normal form");
    h2x->add_option("--class", *h2_a)->required();
    h2x->add_option("--point", *h2_point);

    // matrix
    auto* mat = app.add_subcommand("matrix", "exact rank and kernel");
    auto mat_entries = std::make_shared<std::string>();
    mat->add_option("--entries", *mat_entries, "rows split by ';', entries by spaces")
        ->required();

    // cyclic group
    auto* cyc = app.add_subcommand("cyclic", "relative HH/HC/HN engine");
    cyc->require_subcommand(1);
    auto ca = std::make_shared<CyclicArgs>();
    auto* cyc_rank = cyc->add_subcommand("rank", "homology rank of a slice");
    cyc_rank->add_option("--theory", ca->theory)->check(CLI::IsMember({"hh", "hc", "hn"}));
    cyc_rank->add_option("--base", ca->base);
    cyc_rank->add_option("--thick", ca->thick);
    cyc_rank->add_option("--n", ca->n)->required();
    cyc_rank->add_option("--d", ca->d)->required();
    auto* cyc_eigen = cyc->add_subcommand("eigen", "Adams eigenspace rank");
    cyc_eigen->add_option("--theory", ca->theory)->check(CLI::IsMember({"hh", "hc", "hn"}));
    cyc_eigen->add_option("--base", ca->base);
    cyc_eigen->add_option("--thick", ca->thick);
    cyc_eigen->add_option("--n", ca->n)->required();
    cyc_eigen->add_option("--d", ca->d)->required();
    cyc_eigen->add_option("--i", ca->i)->required();
    auto* cyc_smap = cyc->add_subcommand("smap", "periodicity operator on homology");
    cyc_smap->add_option("--base", ca->base);
    cyc_smap->add_option("--thick", ca->thick);
    cyc_smap->add_option("--n", ca->n)->required();
    cyc_smap->add_option("--d", ca->d)->required();
    auto* cyc_psi = cyc->add_subcommand("psi", "chain-level power operator");
    cyc_psi->add_option("--base", ca->base);
    cyc_psi->add_option("--thick", ca->thick);
    cyc_psi->add_option("--n", ca->n)->required();
    cyc_psi->add_option("--d", ca->d)->required();
    cyc_psi->add_option("--k", ca->k);
    auto* cyc_slice = cyc->add_subcommand("slice", "basis of a graded slice");
    cyc_slice->add_option("--base", ca->base);
    cyc_slice->add_option("--thick", ca->thick);
    cyc_slice->add_option("--n", ca->n)->required();
    cyc_slice->add_option("--d", ca->d)->required();
    auto* cyc_ses = cyc->add_subcommand("ses", "SBI short-exact-sequence rank identity");
    cyc_ses->add_option("--base", ca->base);
    cyc_ses->add_option("--n", ca->n)->required();
    cyc_ses->add_option("--d", ca->d)->required();
    cyc_ses->add_option("--i", ca->i)->required();
    auto* cyc_hkr = cyc->add_subcommand("hkr", "antisymmetrization witness");
    cyc_hkr->add_option("--base", ca->base);
    cyc_hkr->add_option("--w", ca->w)->required();
    auto* cyc_verify = cyc->add_subcommand("verify", "run a verification suite");
    cyc_verify->add_option("--suite", ca->suite);
    auto* cyc_thick = cyc->add_subcommand("thickening", "j-fold bundle pattern report");
    cyc_thick->add_option("--base", ca->base);
    cyc_thick->add_option("--j", ca->j);
    cyc_thick->add_option("--max-n", ca->max_n);
    cyc_thick->add_option("--max-d", ca->max_d);

    auto* verify = app.add_subcommand("verify", "run the acceptance battery");
    auto verify_suite = std::make_shared<std::string>("all");
    verify->add_option("--suite", *verify_suite);

    auto* run = app.add_subcommand("run", "execute a task file");
    auto run_task = std::make_shared<std::string>();
    run->add_option("--task", *run_task)->required();

    // Global flags may appear after the subcommand.
    auto enable_fallthrough = [](auto&& self, CLI::App* node) -> void {
        node->fallthrough();
        for (CLI::App* sub : node->get_subcommands([](const CLI::App*) { return true; }))
            self(self, sub);
    };
    enable_fallthrough(enable_fallthrough, &app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "parse error: " << e.what() << "\n";
        return 4;
    }

    if (const char* env = std::getenv("COUSINFORGE_CACHE")) g->cache_dir = env;
    if (!g->cache_dir.empty()) GroebnerCache::instance().set_directory(g->cache_dir);

    try {
        if (*td) return cmd_tangent_divisor(*g, *td_f, *td_f1, *td_g, *td_g1, out);
        if (*tc) return cmd_tangent_cycle(*g, *tc_u, *tc_v, *tc_u1, *tc_v1, out);
        if (*bd) return cmd_boundary(*g, *bd_class, *bd_point, *bd_bound, out);
        if (*cs)
            return cmd_check_square(*g, *cs_f, *cs_f1, *cs_g, *cs_g1, *cs_point, *cs_seed, out);
        if (*tame) return cmd_tame(*g, *tame_place, *tame_f, *tame_g, out);
        if (*rec) return cmd_reciprocity(*g, *rec_f, *rec_g, out);
        if (*ordc) {
            int v = ord_at(parse_place(*ord_place), parse_rational_function(*ord_f, *g));
            emit(out, *g, json{{"command", "ord"}, {"ord", v}}, std::to_string(v));
            return 0;
        }
        if (*lin) {
            DivisorArc a1(parse_poly_checked(*lin_f, xy_vars(), *g),
                          parse_poly_checked(*lin_f1a, xy_vars(), *g),
                          parse_poly_checked(*lin_g, xy_vars(), *g),
                          parse_poly_checked(*lin_g1a, xy_vars(), *g));
            DivisorArc a2(parse_poly_checked(*lin_f, xy_vars(), *g),
                          parse_poly_checked(*lin_f1b, xy_vars(), *g),
                          parse_poly_checked(*lin_g, xy_vars(), *g),
                          parse_poly_checked(*lin_g1b, xy_vars(), *g));
            bool additive = arc_linearity_check(a1, a2);
            emit(out, *g, json{{"command", "arc-linearity"}, {"additive", additive}},
                 std::string("additive: ") + (additive ? "true" : "false"));
            return exit_code_for_bool(additive);
        }

        if (*gb) {
            VarSet vars = vars_from_csv(*gb_vars);
            auto gens = parse_generators(*gb_gens, vars, *g);
            const GroebnerBasis& basis =
                *GroebnerCache::instance().reduced_basis(gens, g->monomial_order());
            if (*gbc) {
                json arr = json::array();
                std::ostringstream os;
                os << "reduced basis (" << basis.order.str() << "):";
                for (const auto& p : basis.generators) {
                    arr.push_back(p.str());
                    os << "\n  " << p.str();
                }
                emit(out, *g, json{{"command", "gb compute"}, {"basis", arr}}, os.str());
                return 0;
            }
            if (*gbm) {
                bool member = ideal_member(parse_poly_checked(*gb_p, vars, *g), basis);
                emit(out, *g, json{{"command", "gb member"}, {"member", member}},
                     std::string("member: ") + (member ? "true" : "false"));
                return exit_code_for_bool(member);
            }
            if (*gbz) {
                bool zd = zero_dimensional(basis);
                emit(out, *g, json{{"command", "gb zero-dim"}, {"zero_dimensional", zd}},
                     std::string("zero-dimensional: ") + (zd ? "true" : "false"));
                return exit_code_for_bool(zd);
            }
            if (*gbr) {
                auto pt = parse_point(*gb_point, vars.size());
                RadicalAnswer ans = radical_contains_point(basis, pt, *gb_bound);
                bool contained = ans == RadicalAnswer::contained;
                emit(out, *g,
                     json{{"command", "gb radical-point"},
                          {"answer", contained ? "contained" : "undecided"}},
                     std::string("answer: ") + (contained ? "contained" : "undecided"));
                return contained ? 0 : 1;
            }
        }

        if (*poly) {
            VarSet vars = vars_from_csv(*poly_vars);
            Polynomial a = parse_poly_checked(*poly_a, vars, *g);
            Polynomial b = parse_poly_checked(*poly_b, vars, *g);
            if (*poly_op == "div") {
                auto res = divide_by_single(a, b, g->monomial_order());
                emit(out, *g,
                     json{{"command", "poly div"}, {"quotient", res.quotient.str()},
                          {"remainder", res.remainder.str()}},
                     "quotient: " + res.quotient.str() + "\nremainder: " + res.remainder.str());
                return 0;
            }
            Polynomial r = *poly_op == "add" ? a + b : *poly_op == "sub" ? a - b : a * b;
            emit(out, *g, json{{"command", "poly " + *poly_op}, {"result", r.str()}}, r.str());
            return 0;
        }

        if (*form) {
            if (*form_dd) {
                VarSet vars = vars_from_csv(*form_vars);
                DifferentialForm w = parse_form(*form_w, vars);
                DifferentialForm dw = exterior_d(w);
                emit(out, *g, json{{"command", "form d"}, {"result", dw.str()}}, dw.str());
                return 0;
            }
            if (*form_wedge) {
                VarSet vars = vars_from_csv(*form_vars);
                DifferentialForm a = parse_form(*form_w, vars);
                DifferentialForm b2 = parse_form(*form_b, vars);
                DifferentialForm r = wedge(a, b2);
                emit(out, *g, json{{"command", "form wedge"}, {"result", r.str()}}, r.str());
                return 0;
            }
            if (*form_dim) {
                long dim = graded_dimension(*form_n, *form_d, *form_k);
                emit(out, *g, json{{"command", "form dim"}, {"dim", dim}}, std::to_string(dim));
                return 0;
            }
            if (*form_bundle) {
                OmegaBundleShape shape = omega_bundle(*form_m, *form_j, *form_k);
                json rec2{{"command", "form bundle"}, {"degrees", shape.degrees},
                          {"effective", shape.effective_degrees}};
                std::ostringstream os;
                os << "degrees:";
                for (int dgr : shape.degrees) os << " " << dgr;
                os << "\neffective:";
                for (int dgr : shape.effective_degrees) os << " " << dgr;
                emit(out, *g, rec2, os.str());
                return 0;
            }
        }

        if (*h1) {
            if (*h1z) {
                H1Class c = parse_h1_class(*h1_a, xy_vars());
                bool zero = h1_is_zero(c);
                emit(out, *g, json{{"command", "h1 zero"}, {"zero", zero}},
                     std::string("zero: ") + (zero ? "true" : "false"));
                return exit_code_for_bool(zero);
            }
            H1Class a = parse_h1_class(*h1_a, xy_vars());
            H1Class b2 = parse_h1_class(*h1_b, xy_vars());
            bool equal = h1_equal(a, b2);
            emit(out, *g, json{{"command", "h1 equal"}, {"equal", equal}},
                 std::string("equal: ") + (equal ? "true" : "false"));
            return exit_code_for_bool(equal);
        }

        if (*h2) {
            if (*h2z) {
                H2Class c = parse_h2_class(*h2_a, xy_vars());
                bool zero = h2_is_zero(c);
                emit(out, *g, json{{"command", "h2 zero"}, {"zero", zero}},
                     std::string("zero: ") + (zero ? "true" : "false"));
                return exit_code_for_bool(zero);
            }
            if (*h2e) {
                H2Class a = parse_h2_class(*h2_a, xy_vars());
                H2Class b2 = parse_h2_class(*h2_b, xy_vars());
                bool equal = h2_equal(a, b2);
                emit(out, *g, json{{"command", "h2 equal"}, {"equal", equal}},
                     std::string("equal: ") + (equal ? "true" : "false"));
                return exit_code_for_bool(equal);
            }
            if (*h2r) {
                H2Class c = parse_h2_class(*h2_a, xy_vars());
                H2Class r = h2_rebase(c, *h2_p, *h2_q);
                emit(out, *g, json{{"command", "h2 rebase"}, {"class", r.str()}},
                     "class: " + r.str());
                return 0;
            }
            if (*h2x) {
                H2Class c = parse_h2_class(*h2_a, xy_vars());
                auto pt = parse_point(*h2_point, 2);
                InverseSystemExpansion e = inverse_system_normal_form(c, pt[0], pt[1]);
                emit(out, *g,
                     json{{"command", "h2 expand"}, {"expansion", e.str()},
                          {"empty", e.empty()}},
                     "expansion: " + e.str());
                return 0;
            }
        }

        if (*mat) {
            std::vector<std::vector<Rational>> rows;
            std::istringstream rs(*mat_entries);
            std::string row_text;
            size_t width = 0;
            while (std::getline(rs, row_text, ';')) {
                std::istringstream es(row_text);
                std::string cell;
                std::vector<Rational> row;
                while (es >> cell) row.push_back(Rational::parse(cell));
                if (!row.empty()) {
                    width = std::max(width, row.size());
                    rows.push_back(std::move(row));
                }
            }
            RationalMatrix m(static_cast<int>(rows.size()), static_cast<int>(width));
            for (size_t r = 0; r < rows.size(); ++r)
                for (size_t c = 0; c < rows[r].size(); ++c)
                    m.set(static_cast<int>(r), static_cast<int>(c), rows[r][c]);
            RankKernel rk = matrix_rank_kernel(m);
            json kern = json::array();
            std::ostringstream os;
            os << "rank: " << rk.rank << "\nkernel dimension: " << rk.kernel.size();
            for (const auto& v : rk.kernel) {
                json vec = json::array();
                std::string line = "  (";
                for (size_t i = 0; i < v.size(); ++i) {
                    vec.push_back(v[i].str());
                    if (i) line += ", ";
                    line += v[i].str();
                }
                kern.push_back(vec);
                os << "\n" << line << ")";
            }
            emit(out, *g,
                 json{{"command", "matrix"}, {"rank", rk.rank}, {"kernel", kern}}, os.str());
            return 0;
        }

        if (*cyc) {
            if (*cyc_rank) return cmd_cyclic_rank(*g, *ca, out);
            if (*cyc_eigen) return cmd_cyclic_eigen(*g, *ca, out);
            if (*cyc_smap) return cmd_cyclic_smap(*g, *ca, out);
            if (*cyc_psi) return cmd_cyclic_psi(*g, *ca, out);
            if (*cyc_slice) return cmd_cyclic_slice(*g, *ca, out);
            if (*cyc_ses) return cmd_cyclic_ses(*g, *ca, out);
            if (*cyc_hkr) return cmd_cyclic_hkr(*g, *ca, out);
            if (*cyc_verify) return cmd_verify(*g, ca->suite, out);
            if (*cyc_thick) return cmd_cyclic_thickening(*g, *ca, out);
        }

        if (*verify) return cmd_verify(*g, *verify_suite, out);
        if (*run) return cmd_run_taskfile(*g, *run_task, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 4;
    } catch (const UnsupportedError& e) {
        err << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 4;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run_single(args, out, err);
}

} // namespace cousinforge
