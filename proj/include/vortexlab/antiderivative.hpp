#pragma once

#include <variant>

#include "vortexlab/linalg.hpp"
#include "vortexlab/rational_function.hpp"

namespace vortexlab {

/// Certificate that an antiderivative would contain logarithmic terms.
/// The residue of the integrand at a root a of `squarefree_den` equals
/// residue_num(a) / squarefree_den'(a); a nonzero numerator is the exact
/// witness.
struct LogObstruction {
    Poly squarefree_den;
    Poly residue_num;
};

using AntiderivativeResult = std::variant<RationalFunction, LogObstruction>;

namespace detail {

// extended Euclid: g = gcd(a, b) monic with x a + y b = g
struct ExtGcd {
    Poly g, x, y;
};

inline ExtGcd poly_ext_gcd(const Poly& a, const Poly& b) {
    Var v = a.var();
    Poly r0 = a, r1 = b;
    Poly x0(v, Scalar(1)), x1(v), y0(v), y1(v, Scalar(1));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        Poly x2 = x0 - q * x1, y2 = y0 - q * y1;
        r0 = r1;
        r1 = r;
        x0 = x1;
        x1 = x2;
        y0 = y1;
        y1 = y2;
    }
    Scalar li = r0.leading().inv();
    return {li * r0, li * x0, li * y0};
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f) {
    return (a * b).divmod(f).second;
}

// inverse of a modulo the square-free f (gcd(a, f) must be 1)
inline Poly invmod(const Poly& a, const Poly& f) {
    ExtGcd e = poly_ext_gcd(a.divmod(f).second, f);
    if (!e.g.is_constant()) throw std::domain_error("invmod: not invertible");
    return e.x.divmod(f).second;
}

// Residue polynomial of N / (F^m G) at the roots of the square-free factor
// F: expand in eps = z - a over Q(i)[a]/(F) and read the eps^{m-1}
// coefficient of N inv(G) inv(U)^m, where F(a+eps) = eps U(eps). The value
// of the residue at a root a is R(a).
inline Poly residue_polynomial(const Poly& n, const Poly& g, const Poly& f, long m) {
    Var v = f.var();
    std::size_t ord = static_cast<std::size_t>(m);
    auto taylor = [&](const Poly& p) {
        std::vector<Poly> c(ord, Poly(v));
        Poly d = p;
        Scalar fact(1);
        for (std::size_t k = 0; k < ord; ++k) {
            if (k > 0) fact = fact * Scalar(static_cast<long>(k));
            c[k] = (fact.inv() * d).divmod(f).second;
            d = d.deriv_var();
        }
        return c;
    };
    auto mul = [&](const std::vector<Poly>& a, const std::vector<Poly>& b) {
        std::vector<Poly> c(ord, Poly(v));
        for (std::size_t i = 0; i < ord; ++i)
            for (std::size_t j = 0; i + j < ord; ++j) c[i + j] += mulmod(a[i], b[j], f);
        return c;
    };
    auto inv = [&](const std::vector<Poly>& a) {
        std::vector<Poly> c(ord, Poly(v));
        c[0] = invmod(a[0], f);
        for (std::size_t k = 1; k < ord; ++k) {
            Poly acc(v);
            for (std::size_t j = 1; j <= k; ++j) acc += mulmod(a[j], c[k - j], f);
            c[k] = -mulmod(c[0], acc, f);
        }
        return c;
    };

    // U: F(a + eps)/eps, shifted Taylor coefficients of F
    std::vector<Poly> u(ord, Poly(v));
    {
        Poly d = f.deriv_var();
        Scalar fact(1);
        for (std::size_t k = 0; k < ord; ++k) {
            fact = fact * Scalar(static_cast<long>(k + 1));
            u[k] = (fact.inv() * d).divmod(f).second;
            d = d.deriv_var();
        }
    }
    std::vector<Poly> w = mul(taylor(n), inv(taylor(g)));
    std::vector<Poly> ui = inv(u);
    for (long k = 0; k < m; ++k) w = mul(w, ui);
    return w[ord - 1];
}

}  // namespace detail

/// Rational antiderivative of f (z-ring), no integration constant.
///
/// The denominator is square-free decomposed; the residue layer of each
/// factor is computed by exact remainder arithmetic and any nonzero residue
/// polynomial is reported as the obstruction. With all residues zero the
/// rational part A/(D/S) is recovered by one linear solve in the unknown
/// coefficients of A, and the polynomial part integrates termwise.
inline AntiderivativeResult rational_antiderivative(const RationalFunction& f) {
    if (f.var() != Var::z)
        throw std::invalid_argument("rational_antiderivative: z-ring only");
    Var v = Var::z;
    if (f.is_zero()) return RationalFunction(v);

    const Poly& den = f.den();
    auto [quot, rem] = f.num().divmod(den);
    Poly poly_int(v);
    for (auto& [e, c] : quot.terms()) poly_int.set(e + 1, c / Scalar(e + 1));
    if (rem.is_zero()) return RationalFunction(poly_int);

    SquareFree sf = squarefree_decompose(den);
    std::vector<std::pair<Poly, long>> factors = sf.factors;
    if (sf.unit_exponent > 0) factors.push_back({Poly::variable(v), sf.unit_exponent});
    Poly reduced_num = sf.lead.inv() * rem;

    Poly s_part(v, Scalar(1));
    for (auto& [fac, mult] : factors) {
        Poly cof = *den.divide_exact(fac.pow(mult));
        cof = sf.lead.inv() * cof;
        Poly r = detail::residue_polynomial(reduced_num, cof, fac, mult);
        if (!r.is_zero())
            return LogObstruction{fac, detail::mulmod(r, fac.deriv_var(), fac)};
        s_part *= fac;
    }

    // all residues vanish: rem/den = (A / Dg)' with Dg = den/S, deg A < deg Dg
    Poly dg = sf.lead.inv() * *den.divide_exact(s_part);
    if (dg.is_constant()) {
        // square-free denominator with zero residues means the proper part is 0
        if (!rem.is_zero()) throw std::logic_error("rational_antiderivative: residue check lied");
        return RationalFunction(poly_int);
    }
    // identity over Dg^2 S: (A' Dg - A Dg') S = rem_reduced Dg
    long na = dg.degree();
    Poly dgp = dg.deriv_var();
    std::vector<Poly> cols;
    long top = 0;
    for (long k = 0; k < na; ++k) {
        Poly zk = Poly::monomial(v, k);
        Poly col = (zk.deriv_var() * dg - zk * dgp) * s_part;
        cols.push_back(col);
        if (!col.is_zero()) top = std::max(top, col.degree());
    }
    Poly rhs = reduced_num * dg;
    top = std::max(top, rhs.degree());
    Matrix<Scalar> m(static_cast<std::size_t>(top) + 1,
                     std::vector<Scalar>(static_cast<std::size_t>(na), Scalar(0)));
    std::vector<Scalar> b(static_cast<std::size_t>(top) + 1, Scalar(0));
    for (long k = 0; k < na; ++k)
        for (auto& [e, c] : cols[static_cast<std::size_t>(k)].terms())
            m[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)] = c;
    for (auto& [e, c] : rhs.terms()) b[static_cast<std::size_t>(e)] = c;
    LinearSolution sol = solve_linear(m, b);
    if (sol.status == LinearSolution::Status::inconsistent)
        throw std::logic_error("rational_antiderivative: rational part solve failed");
    Poly a(v);
    for (long k = 0; k < na; ++k) a.set(k, sol.x[static_cast<std::size_t>(k)]);
    return RationalFunction(a, dg) + RationalFunction(poly_int);
}

/// True when every residue of f vanishes, i.e. the partial-fraction
/// expansion of f has no simple-pole layer; by the exact per-factor
/// remainder computation, no linear algebra involved.
inline bool residues_all_zero(const RationalFunction& f) {
    if (f.var() != Var::z) throw std::invalid_argument("residues_all_zero: z-ring only");
    if (f.is_zero() || f.is_polynomial()) return true;
    const Poly& den = f.den();
    Poly rem = f.num().divmod(den).second;
    if (rem.is_zero()) return true;
    SquareFree sf = squarefree_decompose(den);
    std::vector<std::pair<Poly, long>> factors = sf.factors;
    if (sf.unit_exponent > 0) factors.push_back({Poly::variable(Var::z), sf.unit_exponent});
    Poly reduced_num = sf.lead.inv() * rem;
    for (auto& [fac, mult] : factors) {
        Poly cof = sf.lead.inv() * *den.divide_exact(fac.pow(mult));
        if (!detail::residue_polynomial(reduced_num, cof, fac, mult).is_zero()) return false;
    }
    return true;
}

}  // namespace vortexlab
