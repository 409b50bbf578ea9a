#pragma once
// JSON views of every report type. Big integers travel as decimal strings so
// consumers never overflow; each to_json has a from_json inverse and the pair
// round-trips exactly.

#include "qrep/decision.hpp"
#include "qrep/pell.hpp"

#include <json.hpp>

namespace qrep {

namespace detail {

inline nlohmann::json to_js(const Int& z) { return z.str(); }

inline Int int_from_js(const nlohmann::json& j) {
    try {
        return Int(j.get<std::string>());
    } catch (const std::exception&) {
        throw std::domain_error("expected a decimal integer string, got " + j.dump());
    }
}

inline std::vector<std::string> int_strings(const std::vector<Int>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const Int& z : v) out.push_back(z.str());
    return out;
}

template <typename E>
inline E enum_from(const nlohmann::json& j, std::initializer_list<E> all) {
    auto s = j.get<std::string>();
    for (E e : all)
        if (s == to_string(e)) return e;
    throw std::domain_error("unknown label \"" + s + "\"");
}

} // namespace detail

inline void to_json(nlohmann::json& j, const Place& pl) {
    j = {{"infinite", pl.infinite}, {"p", detail::to_js(pl.p)}};
}

inline void from_json(const nlohmann::json& j, Place& pl) {
    pl.infinite = j.at("infinite").get<bool>();
    pl.p = detail::int_from_js(j.at("p"));
}

inline void to_json(nlohmann::json& j, const WitnessMod& w) {
    j = {{"x", detail::to_js(w.x)}, {"y", detail::to_js(w.y)},
         {"modulus", detail::to_js(w.modulus)}};
}

inline void from_json(const nlohmann::json& j, WitnessMod& w) {
    w.x = detail::int_from_js(j.at("x"));
    w.y = detail::int_from_js(j.at("y"));
    w.modulus = detail::int_from_js(j.at("modulus"));
}

inline void to_json(nlohmann::json& j, const LocalVerdict& v) {
    j = {{"place", v.place},
         {"solvable", v.solvable},
         {"method", to_string(v.method)},
         {"witness", v.witness ? nlohmann::json(*v.witness) : nlohmann::json(nullptr)}};
}

inline void from_json(const nlohmann::json& j, LocalVerdict& v) {
    v.place = j.at("place").get<Place>();
    v.solvable = j.at("solvable").get<bool>();
    v.method = detail::enum_from(j.at("method"), {LocalMethod::closed_form,
                                                  LocalMethod::enumeration,
                                                  LocalMethod::real_sign});
    v.witness = j.at("witness").is_null()
                    ? std::nullopt
                    : std::optional<WitnessMod>(j.at("witness").get<WitnessMod>());
}

inline void to_json(nlohmann::json& j, const LocalSurvey& s) {
    j = {{"solvable", s.solvable}, {"verdicts", s.verdicts}};
}

inline void from_json(const nlohmann::json& j, LocalSurvey& s) {
    s.solvable = j.at("solvable").get<bool>();
    s.verdicts = j.at("verdicts").get<std::vector<LocalVerdict>>();
}

inline void to_json(nlohmann::json& j, const QuadForm& f) {
    j = {{"a", detail::to_js(f.a)}, {"b", detail::to_js(f.b)}, {"c", detail::to_js(f.c)}};
}

inline void from_json(const nlohmann::json& j, QuadForm& f) {
    f.a = detail::int_from_js(j.at("a"));
    f.b = detail::int_from_js(j.at("b"));
    f.c = detail::int_from_js(j.at("c"));
}

inline void to_json(nlohmann::json& j, const FormClassGroup& g) {
    j = {{"disc", detail::to_js(g.disc)},
         {"reduced_forms", g.reps},
         {"class_number", g.reps.size()},
         {"orders", g.orders},
         {"genus_count", g.genus_count},
         {"exponent", g.exponent}};
}

inline void from_json(const nlohmann::json& j, FormClassGroup& g) {
    g.disc = detail::int_from_js(j.at("disc"));
    g.reps = j.at("reduced_forms").get<std::vector<QuadForm>>();
    g.orders = j.at("orders").get<std::vector<int>>();
    g.genus_count = j.at("genus_count").get<int>();
    g.exponent = j.at("exponent").get<int>();
}

inline void to_json(nlohmann::json& j, const IntPolynomial& f) {
    j = {{"degree", f.degree()}, {"coeffs", detail::int_strings(f.coeffs)}};
}

inline void from_json(const nlohmann::json& j, IntPolynomial& f) {
    f.coeffs.clear();
    for (const auto& c : j.at("coeffs")) f.coeffs.push_back(detail::int_from_js(c));
}

inline void to_json(nlohmann::json& j, const FactorPattern& pat) {
    j = {{"prime", detail::to_js(pat.prime)}, {"degrees", pat.degrees}};
}

inline void from_json(const nlohmann::json& j, FactorPattern& pat) {
    pat.prime = detail::int_from_js(j.at("prime"));
    pat.degrees = j.at("degrees").get<std::vector<int>>();
}

inline void to_json(nlohmann::json& j, const CFExpansion& cf) {
    j = {{"n", detail::to_js(cf.N)},
         {"floor_sqrt", detail::to_js(cf.a0)},
         {"period", detail::int_strings(cf.period)}};
}

inline void from_json(const nlohmann::json& j, CFExpansion& cf) {
    cf.N = detail::int_from_js(j.at("n"));
    cf.a0 = detail::int_from_js(j.at("floor_sqrt"));
    cf.period.clear();
    for (const auto& a : j.at("period")) cf.period.push_back(detail::int_from_js(a));
}

inline void to_json(nlohmann::json& j, const PellSolution& s) {
    j = {{"x", detail::to_js(s.x)}, {"y", detail::to_js(s.y)},
         {"n", detail::to_js(s.N)}, {"m", detail::to_js(s.m)}};
}

inline void from_json(const nlohmann::json& j, PellSolution& s) {
    s.x = detail::int_from_js(j.at("x"));
    s.y = detail::int_from_js(j.at("y"));
    s.N = detail::int_from_js(j.at("n"));
    s.m = detail::int_from_js(j.at("m"));
}

inline void to_json(nlohmann::json& j, const PellLikeResult& r) {
    j = {{"status", to_string(r.status)},
         {"solution", r.solution ? nlohmann::json(*r.solution) : nlohmann::json(nullptr)}};
}

inline void from_json(const nlohmann::json& j, PellLikeResult& r) {
    r.status = detail::enum_from(j.at("status"), {SearchStatus::found,
                                                  SearchStatus::none_complete,
                                                  SearchStatus::budget_exhausted});
    r.solution = j.at("solution").is_null()
                     ? std::nullopt
                     : std::optional<PellSolution>(j.at("solution").get<PellSolution>());
}

// (u + v*sqrt(field_disc))/2, matching the element representation exactly
inline void to_json(nlohmann::json& j, const QuadInt& z) {
    j = {{"u", detail::to_js(z.u())}, {"v", detail::to_js(z.v())},
         {"field_disc", detail::to_js(z.D())}, {"text", z.str()}};
}

inline void from_json(const nlohmann::json& j, QuadInt& z) {
    z = QuadInt(detail::int_from_js(j.at("u")), detail::int_from_js(j.at("v")),
                detail::int_from_js(j.at("field_disc")));
}

inline void to_json(nlohmann::json& j, const PrimeClassification& c) {
    j = {{"prime", detail::to_js(c.prime)},
         {"role", to_string(c.role)},
         {"frobenius_order",
          c.frobenius_order ? nlohmann::json(*c.frobenius_order) : nlohmann::json(nullptr)},
         {"source", to_string(c.source)}};
}

inline void from_json(const nlohmann::json& j, PrimeClassification& c) {
    c.prime = detail::int_from_js(j.at("prime"));
    c.role = detail::enum_from(j.at("role"), {Role::SplitPrincipal, Role::D1, Role::D2,
                                              Role::Inert, Role::Ramified});
    c.frobenius_order = j.at("frobenius_order").is_null()
                            ? std::nullopt
                            : std::optional<int>(j.at("frobenius_order").get<int>());
    c.source = detail::enum_from(j.at("source"), {ClassSource::polynomial_pattern,
                                                  ClassSource::form_representation});
}

inline void to_json(nlohmann::json& j, const ParityTerms& p) {
    j = {{"s1", p.s1},
         {"s2", p.s2},
         {"d1_sum", p.d1_sum},
         {"d2_sum", p.d2_sum},
         {"base", p.base},
         {"ramified_weighted", p.ramified_weighted},
         {"d1_present", p.d1_present},
         {"condition", p.condition}};
}

inline void from_json(const nlohmann::json& j, ParityTerms& p) {
    p.s1 = j.at("s1").get<int>();
    p.s2 = j.at("s2").get<int>();
    p.d1_sum = j.at("d1_sum").get<int>();
    p.d2_sum = j.at("d2_sum").get<int>();
    p.base = j.at("base").get<int>();
    p.ramified_weighted = j.at("ramified_weighted").get<int>();
    p.d1_present = j.at("d1_present").get<bool>();
    p.condition = j.at("condition").get<bool>();
}

inline void to_json(nlohmann::json& j, const DecisionReport& r) {
    nlohmann::json w(nullptr);
    if (r.witness)
        w = {{"x", detail::to_js(r.witness->first)}, {"y", detail::to_js(r.witness->second)}};
    j = {{"a", detail::to_js(r.a)},
         {"b", detail::to_js(r.b)},
         {"n", detail::to_js(r.n)},
         {"verdict", to_string(r.verdict)},
         {"method", to_string(r.method)},
         {"local_verdicts", r.local_verdicts},
         {"classifications", r.classifications},
         {"parity", r.parity},
         {"witness", w}};
}

inline void from_json(const nlohmann::json& j, DecisionReport& r) {
    r.a = detail::int_from_js(j.at("a"));
    r.b = detail::int_from_js(j.at("b"));
    r.n = detail::int_from_js(j.at("n"));
    r.verdict = detail::enum_from(j.at("verdict"), {Verdict::Solvable, Verdict::LocallyObstructed,
                                                    Verdict::ArtinObstructed});
    r.method = detail::enum_from(j.at("method"), {Method::class_field,
                                                  Method::one_class_per_genus, Method::oracle});
    r.local_verdicts = j.at("local_verdicts").get<std::vector<LocalVerdict>>();
    r.classifications = j.at("classifications").get<std::vector<PrimeClassification>>();
    r.parity = j.at("parity").get<ParityTerms>();
    const auto& w = j.at("witness");
    r.witness = w.is_null() ? std::nullopt
                            : std::optional<std::pair<Int, Int>>(std::pair<Int, Int>{
                                  detail::int_from_js(w.at("x")), detail::int_from_js(w.at("y"))});
}

inline void to_json(nlohmann::json& j, const QuarticAuditRow& r) {
    j = {{"p", detail::to_js(r.p)},
         {"reference_role", to_string(r.reference_role)},
         {"computed_role", to_string(r.computed_role)}};
}

inline void from_json(const nlohmann::json& j, QuarticAuditRow& r) {
    r.p = detail::int_from_js(j.at("p"));
    r.reference_role = detail::enum_from(j.at("reference_role"),
                                         {Role::SplitPrincipal, Role::D1, Role::D2});
    r.computed_role = detail::enum_from(j.at("computed_role"),
                                        {Role::SplitPrincipal, Role::D1, Role::D2});
}

inline void to_json(nlohmann::json& j, const QuarticAudit& a) {
    j = {{"reference", a.reference},
         {"computed", a.computed},
         {"same_polynomial", a.same_polynomial},
         {"primes_checked", a.primes_checked},
         {"reference_pattern_failures", a.reference_pattern_failures},
         {"disagreements", a.disagreements}};
}

inline void from_json(const nlohmann::json& j, QuarticAudit& a) {
    a.reference = j.at("reference").get<IntPolynomial>();
    a.computed = j.at("computed").get<IntPolynomial>();
    a.same_polynomial = j.at("same_polynomial").get<bool>();
    a.primes_checked = j.at("primes_checked").get<int>();
    a.reference_pattern_failures = j.at("reference_pattern_failures").get<int>();
    a.disagreements = j.at("disagreements").get<std::vector<QuarticAuditRow>>();
}

} // namespace qrep
