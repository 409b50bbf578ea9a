#pragma once
// Subcommand front end: one binary exposing the whole library with text or
// JSON reports on stdout and diagnostics on stderr. Exit 0 covers every
// completed verdict, solvable or not; 1 is bad usage; 2 is an internal fault.

#include "qrep/report_json.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <iostream>
#include <sstream>

namespace qrep {
namespace cli {

inline constexpr const char* kVersion = "0.1.0";

namespace detail {

inline Int parse_int(const std::string& s, const std::string& flag) {
    size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    bool ok = i < s.size();
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) ok = false;
    if (!ok) throw std::domain_error(flag + " expects an integer, got \"" + s + "\"");
    return Int(s);
}

inline std::pair<Int, Int> parse_alpha(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
        throw std::domain_error("--alpha expects \"U,V\" for (U + V*sqrt(D))/2, got \"" + s + "\"");
    return {parse_int(s.substr(0, comma), "--alpha"), parse_int(s.substr(comma + 1), "--alpha")};
}

// local survey plus the bounded-complete search, no class-field shortcut
inline DecisionReport decide_by_search(const Int& a, const Int& b, const Int& n) {
    if (a < 1 || b < 1) throw std::domain_error("coefficients must be positive");
    if (n == 0) throw std::domain_error("n must be nonzero");
    DecisionReport rep;
    rep.a = a;
    rep.b = b;
    rep.n = n;
    rep.method = Method::oracle;
    LocalSurvey survey = local_everywhere(a, b, n);
    rep.local_verdicts = survey.verdicts;
    if (!survey.solvable) {
        rep.verdict = Verdict::LocallyObstructed;
        return rep;
    }
    rep.witness = represents(QuadForm{a, 0, b}, n);
    rep.verdict = rep.witness ? Verdict::Solvable : Verdict::ArtinObstructed;
    return rep;
}

inline std::string render_local_verdict(const LocalVerdict& v) {
    std::ostringstream os;
    os << "place " << v.place.str() << ": " << (v.solvable ? "pass" : "fail") << " ("
       << to_string(v.method) << ")";
    if (v.witness)
        os << " witness x=" << v.witness->x.str() << " y=" << v.witness->y.str() << " mod "
           << v.witness->modulus.str();
    return os.str();
}

inline std::string render_decision(const DecisionReport& r) {
    std::ostringstream os;
    os << "equation: " << r.a.str() << "*x^2 + " << r.b.str() << "*y^2 = " << r.n.str() << "\n";
    os << "verdict: " << to_string(r.verdict) << "\n";
    os << "method: " << to_string(r.method) << "\n";
    for (const auto& v : r.local_verdicts) os << render_local_verdict(v) << "\n";
    if (r.verdict == Verdict::LocallyObstructed) {
        os << "failing places:";
        for (const auto& v : r.local_verdicts)
            if (!v.solvable) os << " " << v.place.str();
        os << "\n";
    }
    for (const auto& c : r.classifications) {
        os << "prime " << c.prime.str() << ": " << to_string(c.role);
        if (c.frobenius_order) os << " frobenius_order=" << *c.frobenius_order;
        os << " (" << to_string(c.source) << ")\n";
    }
    if (!r.classifications.empty()) {
        const ParityTerms& p = r.parity;
        os << "parity: s1=" << p.s1 << " s2=" << p.s2 << " d1_sum=" << p.d1_sum
           << " d2_sum=" << p.d2_sum << " base=" << p.base
           << " ramified_weighted=" << p.ramified_weighted
           << " d1_present=" << (p.d1_present ? "true" : "false")
           << " condition=" << (p.condition ? "true" : "false") << "\n";
    }
    if (r.witness)
        os << "witness: x=" << r.witness->first.str() << " y=" << r.witness->second.str() << "\n";
    else
        os << "witness: none\n";
    return os.str();
}

struct Rendered {
    nlohmann::json inputs;
    nlohmann::json result;
    std::string text;
};

inline Rendered do_solve(const std::string& sa, const std::string& sb, const std::string& sn,
                         const std::string& method) {
    Int a = parse_int(sa, "--a"), b = parse_int(sb, "--b"), n = parse_int(sn, "--n");
    if (a < 1 || b < 1) throw std::domain_error("coefficients must be positive");
    if (n == 0) throw std::domain_error("n must be nonzero");
    DecisionReport rep;
    if (method == "oracle") {
        rep = decide_by_search(a, b, n);
    } else if (method == "classfield") {
        const FormClassGroup& G = form_class_group(-4 * a * b);
        if (!(G.reps.size() == 4 && G.exponent == 4 && gcd(a, b) == 1))
            throw std::domain_error(
                "classfield method needs a cyclic quartic class group and coprime coefficients");
        rep = decide(a, b, n);
    } else {
        rep = decide(a, b, n);
    }
    Rendered r;
    r.inputs = {{"a", a.str()}, {"b", b.str()}, {"n", n.str()}, {"method", method}};
    r.result = rep;
    r.text = render_decision(rep);
    return r;
}

inline Rendered do_criterion(const std::string& sn) {
    Int n = parse_int(sn, "--n");
    DecisionReport rep = criterion_2_7(n);
    Rendered r;
    r.inputs = {{"n", n.str()}};
    r.result = rep;
    r.text = render_decision(rep);
    return r;
}

inline Rendered do_local(const std::string& sa, const std::string& sb, const std::string& sn,
                         const std::string* sp) {
    Int a = parse_int(sa, "--a"), b = parse_int(sb, "--b"), n = parse_int(sn, "--n");
    Rendered r;
    r.inputs = {{"a", a.str()}, {"b", b.str()}, {"n", n.str()},
                {"p", sp ? nlohmann::json(*sp) : nlohmann::json(nullptr)}};
    if (sp) {
        Int p = parse_int(*sp, "--p");
        if (!is_probable_prime(p)) throw std::domain_error("--p must be prime");
        LocalVerdict v = (p == 2 || a % p == 0 || b % p == 0) ? local_generic(a, b, n, p)
                                                              : local_at_odd_prime(a, b, n, p);
        r.result = v;
        r.text = render_local_verdict(v) + "\n";
        return r;
    }
    LocalSurvey s = local_everywhere(a, b, n);
    r.result = s;
    std::ostringstream os;
    os << "solvable_everywhere: " << (s.solvable ? "true" : "false") << "\n";
    for (const auto& v : s.verdicts) os << render_local_verdict(v) << "\n";
    r.text = os.str();
    return r;
}

inline Rendered do_classgroup(const std::string& sd) {
    Int D = parse_int(sd, "--disc");
    const FormClassGroup& G = form_class_group(D);
    Rendered r;
    r.inputs = {{"disc", D.str()}};
    r.result = G;
    std::ostringstream os;
    os << "disc: " << D.str() << "\n";
    os << "class_number: " << G.reps.size() << "\n";
    os << "genus_count: " << G.genus_count << "\n";
    os << "exponent: " << G.exponent << "\n";
    for (size_t i = 0; i < G.reps.size(); ++i)
        os << "form " << G.reps[i].str() << " order " << G.orders[i] << "\n";
    r.text = os.str();
    return r;
}

inline Rendered do_classpoly(const std::string& sd) {
    Int D = parse_int(sd, "--disc");
    const IntPolynomial& H = class_polynomial(D);
    Rendered r;
    r.inputs = {{"disc", D.str()}};
    r.result = H;
    r.result["disc"] = D.str();
    std::ostringstream os;
    os << "disc: " << D.str() << "\n";
    os << "degree: " << H.degree() << "\n";
    os << "polynomial: " << H.str() << "\n";
    for (int i = 0; i <= H.degree(); ++i)
        os << "coeff[" << i << "]: " << H.coeffs[i].str() << "\n";
    r.text = os.str();
    return r;
}

inline Rendered do_pattern(const std::string& sd, const std::string& sp) {
    Int D = parse_int(sd, "--disc"), p = parse_int(sp, "--p");
    FactorPattern pat = degree_pattern(class_polynomial(D), p);
    Rendered r;
    r.inputs = {{"disc", D.str()}, {"p", p.str()}};
    r.result = pat;
    r.result["disc"] = D.str();
    std::ostringstream os;
    os << "disc: " << D.str() << "\n";
    os << "prime: " << p.str() << "\n";
    os << "degrees:";
    for (int d : pat.degrees) os << " " << d;
    os << "\n";
    r.text = os.str();
    return r;
}

inline Rendered do_pell(const std::string& sN, const std::string* sm) {
    Int N = parse_int(sN, "--N");
    Rendered r;
    r.inputs = {{"N", N.str()}, {"m", sm ? nlohmann::json(*sm) : nlohmann::json(nullptr)}};
    if (sm) {
        Int m = parse_int(*sm, "--m");
        PellLikeResult res = solve_pell_like(N, m);
        r.result = res;
        std::ostringstream os;
        os << "equation: x^2 - " << N.str() << "*y^2 = " << m.str() << "\n";
        os << "status: " << to_string(res.status) << "\n";
        if (res.solution)
            os << "solution: x=" << res.solution->x.str() << " y=" << res.solution->y.str()
               << "\n";
        r.text = os.str();
        return r;
    }
    CFExpansion cf = cf_sqrt(N);
    PellSolution fund = fundamental_solution(N);
    r.result = {{"continued_fraction", cf}, {"fundamental", fund}};
    std::ostringstream os;
    os << "equation: x^2 - " << N.str() << "*y^2 = 1\n";
    os << "continued_fraction: " << cf.a0.str() << ";";
    for (const Int& ak : cf.period) os << " " << ak.str();
    os << " (period " << cf.period.size() << ")\n";
    os << "fundamental: x=" << fund.x.str() << " y=" << fund.y.str() << "\n";
    r.text = os.str();
    return r;
}

inline Rendered do_condition1(const std::string& sp, const std::string& sq) {
    Int p = parse_int(sp, "--p"), q = parse_int(sq, "--q");
    if (p < 2 || q < 2) throw std::domain_error("--p and --q must be at least 2");
    bool primes_ok =
        is_probable_prime(p) && is_probable_prime(q) && p != q && mod4(p) == 1 && mod4(q) == 1;
    std::optional<int> legendre, quartic;
    bool residue_ok = false;
    if (primes_ok) {
        legendre = jacobi(p, q);
        if (*legendre == -1) {
            residue_ok = true;
        } else if (*legendre == 1) {
            quartic = quartic_symbol(p, q);
            residue_ok = *quartic == -1;
        }
    }
    bool hyp = primes_ok && residue_ok;

    Rendered r;
    r.inputs = {{"p", p.str()}, {"q", q.str()}};
    r.result = {{"p", p.str()},
                {"q", q.str()},
                {"primes_1_mod_4", primes_ok},
                {"legendre", legendre ? nlohmann::json(*legendre) : nlohmann::json(nullptr)},
                {"quartic_symbol", quartic ? nlohmann::json(*quartic) : nlohmann::json(nullptr)},
                {"hypothesis_holds", hyp},
                {"witness", nullptr}};
    std::ostringstream os;
    os << "p: " << p.str() << "\n";
    os << "q: " << q.str() << "\n";
    if (legendre) os << "legendre(p,q): " << *legendre << "\n";
    if (quartic) os << "quartic_symbol(p,q): " << *quartic << "\n";
    os << "hypothesis: " << (hyp ? "holds" : "fails") << "\n";
    if (hyp) {
        auto [x0, y0] = condition1_witness(p, q);
        QuadInt lhs =
            add(mul(x0, x0), mul(qi_from_int(q, x0.D()), mul(y0, y0)));
        bool verified = lhs == qi_from_int(-1, x0.D());
        if (!verified) throw internal_error("condition1 witness fails its equation");
        r.result["witness"] = {{"x0", x0}, {"y0", y0}, {"verified", verified}};
        os << "x0: " << x0.str() << "\n";
        os << "y0: " << y0.str() << "\n";
        os << "check: x0^2 + " << q.str() << "*y0^2 = -1 verified\n";
    }
    r.text = os.str();
    return r;
}

inline Rendered do_oracle_quadfield(const std::string& sd, const std::string& sa,
                                    const std::string& sb, const std::string& salpha,
                                    const std::string& sbound) {
    Int D = parse_int(sd, "--field-disc");
    Int a = parse_int(sa, "--a"), b = parse_int(sb, "--b");
    Int bound = parse_int(sbound, "--bound");
    auto [u, v] = parse_alpha(salpha);
    QuadInt alpha(u, v, D);
    auto hit = oracle_search(a, b, alpha, bound);

    Rendered r;
    r.inputs = {{"field_disc", D.str()},
                {"a", a.str()},
                {"b", b.str()},
                {"alpha", {{"u", u.str()}, {"v", v.str()}}},
                {"bound", bound.str()}};
    std::ostringstream os;
    os << "equation: " << a.str() << "*x^2 + " << b.str() << "*y^2 = " << alpha.str()
       << " over field_disc " << D.str() << "\n";
    if (hit) {
        r.result = {{"status", "found"}, {"x", hit->first}, {"y", hit->second}};
        os << "status: found\n";
        os << "x: " << hit->first.str() << "\n";
        os << "y: " << hit->second.str() << "\n";
    } else {
        r.result = {{"status", "not_found_within_bound"},
                    {"x", nullptr},
                    {"y", nullptr}};
        os << "status: not found within bound " << bound.str() << "\n";
    }
    r.text = os.str();
    return r;
}

} // namespace detail

inline int run(const std::vector<std::string>& argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"decides a*x^2 + b*y^2 = n over the integers, with evidence"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    auto* solve = app.add_subcommand("solve", "decide a*x^2 + b*y^2 = n");
    std::string so_a, so_b, so_n, so_method = "auto";
    solve->add_option("--a", so_a, "coefficient of x^2")->required();
    solve->add_option("--b", so_b, "coefficient of y^2")->required();
    solve->add_option("--n", so_n, "target integer")->required();
    solve->add_option("--method", so_method, "decision engine")
        ->check(CLI::IsMember({"auto", "classfield", "oracle"}));
    solve->fallthrough();

    auto* crit = app.add_subcommand("criterion-2-7", "decide 2*x^2 + 7*y^2 = n");
    std::string cr_n;
    crit->add_option("--n", cr_n, "target integer")->required();
    crit->fallthrough();

    auto* local = app.add_subcommand("local", "solvability over the reals and all Z_p");
    std::string lo_a, lo_b, lo_n, lo_p;
    local->add_option("--a", lo_a)->required();
    local->add_option("--b", lo_b)->required();
    local->add_option("--n", lo_n)->required();
    auto* lo_p_opt = local->add_option("--p", lo_p, "restrict to one prime");
    local->fallthrough();

    auto* classgroup = app.add_subcommand("classgroup", "reduced forms and group structure");
    std::string cg_d;
    classgroup->add_option("--disc", cg_d, "negative discriminant, 0 or 1 mod 4")->required();
    classgroup->fallthrough();

    auto* classpoly = app.add_subcommand("classpoly", "ring class polynomial");
    std::string cp_d;
    classpoly->add_option("--disc", cp_d, "negative discriminant, 0 or 1 mod 4")->required();
    classpoly->fallthrough();

    auto* pattern = app.add_subcommand("pattern", "factorization degrees of the class polynomial mod p");
    std::string pa_d, pa_p;
    pattern->add_option("--disc", pa_d)->required();
    pattern->add_option("--p", pa_p, "prime not dividing the discriminant of the polynomial")
        ->required();
    pattern->fallthrough();

    auto* pell = app.add_subcommand("pell", "x^2 - N*y^2 = 1, or = m with --m");
    std::string pe_N, pe_m;
    pell->add_option("--N", pe_N, "positive nonsquare")->required();
    auto* pe_m_opt = pell->add_option("--m", pe_m, "right-hand side");
    pell->fallthrough();

    auto* cond1 = app.add_subcommand("condition1",
                                     "residue hypothesis for p, q and a witness of x^2 + q*y^2 = -1");
    std::string c1_p, c1_q;
    cond1->add_option("--p", c1_p)->required();
    cond1->add_option("--q", c1_q)->required();
    cond1->fallthrough();

    auto* oq = app.add_subcommand("oracle-quadfield",
                                  "bounded search for a*x^2 + b*y^2 = alpha in a quadratic order");
    std::string oq_d, oq_a, oq_b, oq_alpha, oq_bound;
    oq->add_option("--field-disc", oq_d, "negative squarefree field parameter")->required();
    oq->add_option("--a", oq_a)->required();
    oq->add_option("--b", oq_b)->required();
    oq->add_option("--alpha", oq_alpha, "U,V meaning (U + V*sqrt(D))/2")->required();
    oq->add_option("--bound", oq_bound, "coordinate box half-width")->required();
    oq->fallthrough();

    std::vector<const char*> cargv;
    cargv.reserve(argv.size());
    for (const auto& s : argv) cargv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());

        detail::Rendered r;
        if (solve->parsed())
            r = detail::do_solve(so_a, so_b, so_n, so_method);
        else if (crit->parsed())
            r = detail::do_criterion(cr_n);
        else if (local->parsed())
            r = detail::do_local(lo_a, lo_b, lo_n, lo_p_opt->count() ? &lo_p : nullptr);
        else if (classgroup->parsed())
            r = detail::do_classgroup(cg_d);
        else if (classpoly->parsed())
            r = detail::do_classpoly(cp_d);
        else if (pattern->parsed())
            r = detail::do_pattern(pa_d, pa_p);
        else if (pell->parsed())
            r = detail::do_pell(pe_N, pe_m_opt->count() ? &pe_m : nullptr);
        else if (cond1->parsed())
            r = detail::do_condition1(c1_p, c1_q);
        else
            r = detail::do_oracle_quadfield(oq_d, oq_a, oq_b, oq_alpha, oq_bound);

        if (format == "json") {
            nlohmann::json envelope = {{"tool", "qrep"},
                                       {"version", kVersion},
                                       {"inputs", r.inputs},
                                       {"result", r.result}};
            out << envelope.dump(2) << "\n";
        } else {
            out << r.text;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const ramified_pattern_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const budget_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cli
} // namespace qrep
