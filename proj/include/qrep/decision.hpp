#pragma once
// Top-level solvability verdicts for a x^2 + b y^2 = n, with evidence:
// local survey, prime classifications against the ring class polynomial,
// parity bookkeeping, and a search witness whenever the answer is yes.

#include "qrep/classpoly.hpp"
#include "qrep/local.hpp"

namespace qrep {

enum class Role { SplitPrincipal, D1, D2, Inert, Ramified };
enum class Verdict { Solvable, LocallyObstructed, ArtinObstructed };
enum class Method { class_field, one_class_per_genus, oracle };
enum class ClassSource { polynomial_pattern, form_representation };

inline const char* to_string(Role r) {
    switch (r) {
        case Role::SplitPrincipal: return "split_principal";
        case Role::D1: return "d1";
        case Role::D2: return "d2";
        case Role::Inert: return "inert";
        case Role::Ramified: return "ramified";
    }
    return "?";
}

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Solvable: return "solvable";
        case Verdict::LocallyObstructed: return "locally_obstructed";
        case Verdict::ArtinObstructed: return "artin_obstructed";
    }
    return "?";
}

inline const char* to_string(Method m) {
    switch (m) {
        case Method::class_field: return "class_field";
        case Method::one_class_per_genus: return "one_class_per_genus";
        case Method::oracle: return "oracle";
    }
    return "?";
}

inline const char* to_string(ClassSource s) {
    return s == ClassSource::polynomial_pattern ? "polynomial_pattern" : "form_representation";
}

struct PrimeClassification {
    Int prime;
    Role role;
    std::optional<int> frobenius_order;
    ClassSource source;
};

struct ParityTerms {
    int s1 = 0;                // v_2(n)
    int s2 = 0;                // total exponent in n of the odd ramified primes
    int d1_sum = 0;            // sum of v_p(n) over order-4 split primes
    int d2_sum = 0;            // sum of v_p(n) over order-2 split primes
    int base = 0;              // 1 when the form's own class has order 2
    int ramified_weighted = 0; // sum of v_p(n) over ramified p landing in the order-2 class
    bool d1_present = false;
    bool condition = false;
};

struct DecisionReport {
    Int a, b, n;
    Verdict verdict = Verdict::Solvable;
    Method method = Method::oracle;
    std::vector<LocalVerdict> local_verdicts;
    std::vector<PrimeClassification> classifications;
    ParityTerms parity;
    std::optional<std::pair<Int, Int>> witness;
};

namespace detail {

inline Role role_from_order(int order) {
    switch (order) {
        case 1: return Role::SplitPrincipal;
        case 2: return Role::D2;
        case 4: return Role::D1;
    }
    throw internal_error("class order " + std::to_string(order) + " in a quartic group");
}

inline std::optional<Role> role_from_pattern(const IntPolynomial& f, const Int& p) {
    FactorPattern pat;
    try {
        pat = degree_pattern(f, p);
    } catch (const ramified_pattern_error&) {
        return std::nullopt;
    }
    if (pat.degrees == std::vector<int>{1, 1, 1, 1}) return Role::SplitPrincipal;
    if (pat.degrees == std::vector<int>{2, 2}) return Role::D2;
    if (pat.degrees == std::vector<int>{4}) return Role::D1;
    throw internal_error("degree pattern at p = " + p.str() +
                         " does not match a cyclic quartic splitting");
}

} // namespace detail

// Classification of p against a cyclic-order-4 discriminant D, driven by the
// factor pattern of f mod p with the class group as fallback and cross-check.
inline PrimeClassification classify_prime(const Int& p, const Int& D, const IntPolynomial& f) {
    if (!is_probable_prime(p)) throw std::domain_error("classify_prime: p must be prime");
    PrimeClassification out{p, Role::Ramified, std::nullopt, ClassSource::form_representation};
    int s = (p == 2) ? kronecker_at_2(D) : jacobi(D, p);
    if (s == 0) return out;
    if (s == -1) {
        out.role = Role::Inert;
        return out;
    }
    PrimeClass pc = class_of_prime(p, D);
    Role form_role = detail::role_from_order(class_order(pc.reps.front()));
    std::optional<Role> pattern_role = detail::role_from_pattern(f, p);
    if (pattern_role && *pattern_role != form_role)
        throw internal_error("classification sources disagree at p = " + p.str() +
                             ": pattern says " + to_string(*pattern_role) + ", forms say " +
                             to_string(form_role));
    out.role = form_role;
    out.source = pattern_role ? ClassSource::polynomial_pattern : ClassSource::form_representation;
    switch (out.role) {
        case Role::SplitPrincipal: out.frobenius_order = 1; break;
        case Role::D2: out.frobenius_order = 2; break;
        case Role::D1: out.frobenius_order = 4; break;
        default: break;
    }
    return out;
}

inline PrimeClassification classify_prime_2_7(const Int& p, const IntPolynomial& f) {
    return classify_prime(p, Int(-56), f);
}

inline PrimeClassification classify_prime_2_7(const Int& p) {
    return classify_prime_2_7(p, class_polynomial(-56));
}

// The worked 2x^2 + 7y^2 criterion: congruence conditions (1)-(3), then the
// parity condition (4) over the prime classification, with every Solvable
// verdict certified by the complete search.
inline DecisionReport criterion_2_7(const Int& n) {
    if (n < 1) throw std::domain_error("criterion_2_7: n must be positive");
    DecisionReport rep;
    rep.a = 2;
    rep.b = 7;
    rep.n = n;
    rep.method = Method::class_field;

    LocalSurvey survey = local_everywhere(2, 7, n);
    rep.local_verdicts = survey.verdicts;

    int s1 = valuation(n, 2);
    int s2 = valuation(n, 7);
    rep.parity.s1 = s1;
    rep.parity.s2 = s2;

    Int odd_part = n / int_pow(Int(2), static_cast<unsigned>(s1));
    bool c1 = mod_floor(odd_part, 8) == 1 || mod_floor(odd_part, 8) == 7;
    bool c2 = jacobi(n / int_pow(Int(7), static_cast<unsigned>(s2)), 7) == 1;
    bool c3 = true;
    Factorization fac = factorize(n);
    for (const auto& [p, e] : fac.factors)
        if (p != 2 && p != 7 && e % 2 == 1 && jacobi(-14, p) != 1) c3 = false;
    if ((c1 && c2 && c3) != survey.solvable)
        throw internal_error("criterion_2_7: congruence conditions disagree with the local survey at n = " +
                             n.str());
    if (!survey.solvable) {
        rep.verdict = Verdict::LocallyObstructed;
        return rep;
    }

    const IntPolynomial& H = class_polynomial(-56);
    for (const auto& [p, e] : fac.factors) {
        PrimeClassification cls = classify_prime_2_7(p, H);
        rep.classifications.push_back(cls);
        if (cls.role == Role::D1) {
            rep.parity.d1_sum += e;
            rep.parity.d1_present = true;
        } else if (cls.role == Role::D2) {
            rep.parity.d2_sum += e;
        }
    }
    rep.parity.base = 1; // (2,0,7) lies in the order-2 class
    rep.parity.ramified_weighted = s1 + s2;
    rep.parity.condition = rep.parity.d1_present
                               ? rep.parity.d1_sum % 2 == 0
                               : (1 + s1 + s2 + rep.parity.d2_sum) % 2 == 0;

    if (rep.parity.condition) {
        rep.witness = represents(QuadForm{2, 0, 7}, n);
        if (!rep.witness)
            throw internal_error("criterion_2_7: parity predicts a representation of " + n.str() +
                                 " but the complete search found none");
        rep.verdict = Verdict::Solvable;
    } else {
        rep.verdict = Verdict::ArtinObstructed;
    }
    return rep;
}

inline bool hasse_check(const Int& a, const Int& b) {
    if (a < 1 || b < 1) throw std::domain_error("hasse_check: coefficients must be positive");
    return is_one_class_per_genus(-4 * a * b);
}

// General dispatch: local filter, then the strongest applicable global
// argument (genus theory, cyclic-quartic class field, or complete search).
inline DecisionReport decide(const Int& a, const Int& b, const Int& n) {
    if (a < 1 || b < 1) throw std::domain_error("decide: coefficients must be positive");
    if (n == 0) throw std::domain_error("decide: n must be nonzero");

    DecisionReport rep;
    rep.a = a;
    rep.b = b;
    rep.n = n;

    const Int D = -4 * a * b;
    const FormClassGroup& G = form_class_group(D);
    bool cyclic4 = G.reps.size() == 4 && G.exponent == 4;
    if (G.exponent <= 2) rep.method = Method::one_class_per_genus;
    else if (cyclic4 && gcd(a, b) == 1) rep.method = Method::class_field;
    else rep.method = Method::oracle;

    LocalSurvey survey = local_everywhere(a, b, n);
    rep.local_verdicts = survey.verdicts;
    if (!survey.solvable) {
        rep.verdict = Verdict::LocallyObstructed;
        return rep;
    }

    if (rep.method == Method::one_class_per_genus) {
        rep.witness = represents(QuadForm{a, 0, b}, n);
        if (!rep.witness)
            throw internal_error("decide: exponent-2 class group with local solvability everywhere, "
                                 "yet no representation of " + n.str());
        rep.verdict = Verdict::Solvable;
        return rep;
    }

    if (rep.method == Method::class_field) {
        const IntPolynomial& H = class_polynomial(D);
        bool usable = true;
        for (const auto& [p, e] : factorize(n).factors) {
            int s = (p == 2) ? kronecker_at_2(D) : jacobi(D, p);
            if (s == 0) {
                PrimeClass pc = class_of_prime(p, D);
                if (pc.reps.empty()) {
                    usable = false; // conductor prime: no invertible ideal above p
                    break;
                }
                rep.classifications.push_back(
                    {p, Role::Ramified, std::nullopt, ClassSource::form_representation});
                if (class_order(pc.reps.front()) == 2) rep.parity.ramified_weighted += e;
                if (p == 2) rep.parity.s1 = e;
                else rep.parity.s2 += e;
                continue;
            }
            PrimeClassification cls = classify_prime(p, D, H);
            rep.classifications.push_back(cls);
            if (cls.role == Role::Inert) {
                if (e % 2 == 1)
                    throw internal_error("decide: odd inert exponent survived the local survey");
            } else if (cls.role == Role::D1) {
                rep.parity.d1_sum += e;
                rep.parity.d1_present = true;
            } else if (cls.role == Role::D2) {
                rep.parity.d2_sum += e;
            }
        }
        if (usable) {
            QuadForm own = reduce(QuadForm{a, 0, b});
            int own_order = class_order(own);
            if (own_order > 2)
                throw internal_error("decide: diagonal form has class order > 2");
            rep.parity.base = own_order == 2 ? 1 : 0;
            rep.parity.condition =
                rep.parity.d1_present
                    ? rep.parity.d1_sum % 2 == 0
                    : (rep.parity.base + rep.parity.ramified_weighted + rep.parity.d2_sum) % 2 == 0;
            if (rep.parity.condition) {
                rep.witness = represents(QuadForm{a, 0, b}, n);
                if (!rep.witness)
                    throw internal_error("decide: parity predicts a representation of " + n.str() +
                                         " but the complete search found none");
                rep.verdict = Verdict::Solvable;
            } else {
                rep.verdict = Verdict::ArtinObstructed;
            }
            return rep;
        }
        rep.method = Method::oracle;
        rep.classifications.clear();
        rep.parity = ParityTerms{};
    }

    rep.witness = represents(QuadForm{a, 0, b}, n);
    rep.verdict = rep.witness ? Verdict::Solvable : Verdict::ArtinObstructed;
    return rep;
}

struct QuarticAuditRow {
    Int p;
    Role reference_role;
    Role computed_role;
};

// Side-by-side partition of split primes by the reference quartic
// x^4 - x^3 + x + 1 and by the computed class polynomial for -56. Reported,
// never assumed: disagreement rows are findings for the caller.
struct QuarticAudit {
    IntPolynomial reference;
    IntPolynomial computed;
    bool same_polynomial = false;
    int primes_checked = 0;
    int reference_pattern_failures = 0;
    std::vector<QuarticAuditRow> disagreements;
};

inline QuarticAudit audit_reference_quartic(const Int& bound = 5000) {
    QuarticAudit out;
    out.reference = IntPolynomial{{1, 1, 0, -1, 1}};
    out.computed = class_polynomial(-56);
    out.same_polynomial = out.reference.coeffs == out.computed.coeffs;
    for (Int p = 3; p < bound; ++p) {
        if (!is_probable_prime(p) || p == 7 || jacobi(-14, p) != 1) continue;
        std::optional<Role> ref_role = detail::role_from_pattern(out.reference, p);
        if (!ref_role) {
            ++out.reference_pattern_failures;
            continue;
        }
        Role computed_role = classify_prime_2_7(p).role;
        ++out.primes_checked;
        if (*ref_role != computed_role)
            out.disagreements.push_back({p, *ref_role, computed_role});
    }
    return out;
}

} // namespace qrep
