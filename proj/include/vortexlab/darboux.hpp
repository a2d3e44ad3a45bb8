#pragma once

#include <optional>

#include "vortexlab/antiderivative.hpp"
#include "vortexlab/diffop.hpp"

namespace vortexlab {

/// Schrodinger operator H = -d^2 + u, optionally carrying its tau-function
/// provenance u = u0 - 2 (log tau)''. The provenance is recomputable:
/// consistent() re-derives the potential and compares exactly.
struct SchrodingerOp {
    RationalFunction u;
    std::optional<QuasiFactored> tau;
    RationalFunction u0{Var::z};

    DiffOp as_operator() const {
        DiffOp h(u.var());
        h.set(2, RationalFunction(u.var(), Scalar(-1)));
        if (!u.is_zero()) h.set(0, u);
        return h;
    }
    static SchrodingerOp from_tau(const QuasiFactored& t, const RationalFunction& base) {
        return {base - Scalar(2) * t.log_derivative().deriv_z(), t, base};
    }
    bool consistent() const {
        if (!tau) return true;
        return u == u0 - Scalar(2) * tau->log_derivative().deriv_z();
    }
};

/// Third-order operator L = d^3 - u d (no zeroth-order term by construction).
struct ThirdOrderOp {
    RationalFunction u;

    DiffOp as_operator() const {
        DiffOp l(u.var());
        l.set(3, RationalFunction(u.var(), Scalar(1)));
        if (!u.is_zero()) l.set(1, -u);
        return l;
    }
};

/// Darboux transform of an eigenfunction: psi' - (kappa'/kappa) psi.
inline QuasiFactored darboux2(const QuasiFactored& psi, const QuasiFactored& kappa) {
    if (psi.is_zero()) return psi;
    return psi.times_rational(psi.log_derivative() - kappa.log_derivative());
}

/// Zero-level transform (C/kappa) int kappa^2 dz with the caller's
/// integration constant added before monic normalization (for kappa = z the
/// constant c maps to the chain parameter s_1 = 3c). The obstruction fires
/// exactly when kappa^2 has a nonzero residue, i.e. when a charge -1/2 is
/// present.
inline std::variant<QuasiFactored, LogObstruction> zero_level2(const QuasiFactored& kappa,
                                                               const Scalar& c) {
    if (kappa.is_zero()) throw std::invalid_argument("zero_level2: zero seed");
    QuasiFactored k2 = kappa.pow(Scalar(2));
    RationalFunction k2r = k2.to_rational();  // throws unless all charges are half-integers
    RationalFunction sq(Var::z);
    if (k2.var() == Var::w) {
        // w is a unit of the Laurent ring but z = w^2 is not: move the
        // monomial content back under the bar before integrating in z
        Poly n = k2r.num(), d = k2r.den();
        long lo = std::min(n.low_exponent(), 0l);
        if (lo % 2 != 0) --lo;
        sq = RationalFunction(w_to_z(n.shifted(-lo)),
                              w_to_z(d.shifted(-lo)));
    } else {
        sq = k2r;
    }
    auto prim = rational_antiderivative(sq);
    if (std::holds_alternative<LogObstruction>(prim)) return std::get<LogObstruction>(prim);
    RationalFunction integral = std::get<RationalFunction>(prim) + RationalFunction(Var::z, c);
    QuasiFactored num = kappa.var() == Var::w
                            ? QuasiFactored(Var::w,
                                            {{z_to_w(integral.num()), Scalar(1)},
                                             {z_to_w(integral.den()), Scalar(-1)}})
                            : QuasiFactored(Var::z, {{integral.num(), Scalar(1)},
                                                     {integral.den(), Scalar(-1)}});
    return (num / kappa).monic_normalized();
}

/// u = (log psi)'' + ((log psi)')^2 + lambda, with the exact simple-pole test
/// (true iff every residue of u vanishes, i.e. psi corresponds to an
/// equilibrium).
struct PotentialResult {
    RationalFunction u;
    bool simple_pole_free;
};

inline PotentialResult potential_from_eigenfunction(const QuasiFactored& psi,
                                                    const Scalar& lambda) {
    if (psi.is_zero()) throw std::invalid_argument("potential_from_eigenfunction: zero input");
    RationalFunction l = psi.log_derivative();
    // assemble (log psi)'' + ((log psi)')^2 + lambda over B^2 in one piece so
    // the equilibrium cancellations cost a single reduction
    const Poly &a = l.num(), &b = l.den();
    Poly num = a.deriv_z() * b - a * b.deriv_z() + a * a + lambda * (b * b);
    RationalFunction u(num, b * b);
    if (u.is_zero()) return {u, true};
    RationalFunction uz(Var::z);
    if (psi.var() == Var::z)
        uz = u;
    else if (psi.var() == Var::w) {
        // clear the w-parity: num and den of u are parity-uniform for any
        // half-integer charge configuration
        Poly num = u.num(), den = u.den();
        long shift = num.low_exponent() % 2 != 0 || den.low_exponent() % 2 != 0 ? 1 : 0;
        auto even = [](const Poly& p) {
            for (auto& [e, c] : p.terms())
                if (((e % 2) + 2) % 2 != 0) return false;
            return true;
        };
        Poly n2 = num.shifted(shift), d2 = den.shifted(shift);
        if (!even(n2) || !even(d2))
            throw std::domain_error("potential is not a rational function of z");
        long lift = std::min(n2.low_exponent(), std::min(d2.low_exponent(), 0l));
        uz = RationalFunction(w_to_z(n2.shifted(-lift)), w_to_z(d2.shifted(-lift)));
    } else {
        throw std::invalid_argument("potential_from_eigenfunction: z or w ring only");
    }
    return {u, residues_all_zero(uz)};
}

/// Crum composition: psi_hat = W[seeds, psi] / W[seeds] and
/// u_n = u0 - 2 (log W[seeds])''. Throws on dependent seeds.
struct CrumResult {
    QuasiFactored psi_hat;
    RationalFunction u_n;
};

inline CrumResult crum(const std::vector<QuasiFactored>& seeds, const QuasiFactored& psi,
                       const RationalFunction& u0) {
    if (seeds.empty()) throw std::invalid_argument("crum: no seeds");
    QuasiFactored wn = wronskian(seeds);
    if (wn.is_zero()) throw std::invalid_argument("crum: dependent seeds");
    std::vector<QuasiFactored> all = seeds;
    all.push_back(psi);
    QuasiFactored wtop = wronskian(all);
    return {wtop / wn, u0 - Scalar(2) * wn.log_derivative().deriv_z()};
}

inline CrumResult crum(const std::vector<QuasiFactored>& seeds, const QuasiFactored& psi) {
    return crum(seeds, psi, RationalFunction(seeds.empty() ? psi.var() : seeds[0].var()));
}

/// KWCC transformation: zero-level Darboux transform followed by
/// exponentiation psi -> psi_hat^gamma, gamma in {1/2, 1, 2}. The charge map
/// Q -> -gamma Q or gamma (Q + 1) (new charges gamma) is verified on the
/// output exactly; a violation indicates an implementation bug and throws.
inline std::variant<QuasiFactored, LogObstruction> kwcc(const QuasiFactored& psi,
                                                        const Scalar& gamma, const Scalar& c) {
    if (!(gamma == Scalar(1) || gamma == Scalar(2) || gamma == Scalar(1, 2)))
        throw std::invalid_argument("kwcc: gamma must be 1/2, 1 or 2");
    auto inner = zero_level2(psi, c);
    if (std::holds_alternative<LogObstruction>(inner)) return std::get<LogObstruction>(inner);
    QuasiFactored hat = std::get<QuasiFactored>(inner);
    QuasiFactored out = hat.pow(gamma).monic_normalized();

    for (const auto& of : out.factors()) {
        bool overlapped = false, ok = false;
        for (const auto& inf : psi.factors()) {
            if (poly_gcd(of.base, inf.base).is_constant()) continue;
            overlapped = true;
            if (of.exponent == -gamma * inf.exponent ||
                of.exponent == gamma * (inf.exponent + Scalar(1)))
                ok = true;
        }
        if (!overlapped) ok = of.exponent == gamma;  // created from a zero charge
        if (!ok) throw std::logic_error("kwcc: charge map violated");
    }
    return out;
}

/// Factorization L = B A of the third-order operator with kernel element
/// kappa: A = d - v, B = d^2 + v d - v' - v''/v, v = kappa'/kappa, and the
/// potential u = 3v' + v^2 + v''/v. The product is re-expanded and checked
/// against d^3 - u d exactly.
struct Factorization3 {
    DiffOp b, a;
    RationalFunction u;
};

inline Factorization3 factorize3(const QuasiFactored& kappa) {
    if (kappa.is_zero() || kappa.is_constant())
        throw std::invalid_argument("factorize3: kappa must be non-constant");
    Var var = kappa.var();
    RationalFunction v = kappa.log_derivative();
    if (v.is_zero()) throw std::invalid_argument("factorize3: zero logarithmic derivative");
    RationalFunction one(var, Scalar(1));
    DiffOp a(var);
    a.set(1, one);
    a.set(0, -v);
    DiffOp b(var);
    b.set(2, one);
    b.set(1, v);
    b.set(0, -v.deriv_z() - v.deriv_z().deriv_z() / v);
    RationalFunction u = Scalar(3) * v.deriv_z() + v * v + v.deriv_z().deriv_z() / v;
    DiffOp expect(var);
    expect.set(3, one);
    if (!u.is_zero()) expect.set(1, -u);
    if (compose(b, a) != expect) throw std::logic_error("factorize3: BA != d^3 - u d");
    return {b, a, u};
}

/// Zero-level Darboux transform for L = d^3 - u d:
///   kappa_hat = int kappa^3/(kappa')^2 dz - kappa^{-1} int kappa^4/(kappa')^2 dz,
/// with the two integration constants (c1, c2) supplied by the caller and
/// the result normalized monic over monic. The potential shifts by
/// u_hat = u - 6 (log kappa)''.
struct Darboux3Result {
    QuasiFactored kappa_hat;
    RationalFunction u_shift;  // -6 (log kappa)''
};

inline std::variant<Darboux3Result, LogObstruction> darboux3(const QuasiFactored& kappa,
                                                             const Scalar& c1, const Scalar& c2) {
    if (kappa.is_constant()) throw std::invalid_argument("darboux3: constant kappa");
    RationalFunction k = kappa.to_rational();
    if (k.var() != Var::z) throw std::invalid_argument("darboux3: z-ring only");
    RationalFunction kp = k.deriv_z();
    if (kp.is_zero()) throw std::invalid_argument("darboux3: constant kappa");
    RationalFunction f1 = k * k * k / (kp * kp);
    RationalFunction f2 = f1 * k;
    auto i1 = rational_antiderivative(f1);
    if (std::holds_alternative<LogObstruction>(i1)) return std::get<LogObstruction>(i1);
    auto i2 = rational_antiderivative(f2);
    if (std::holds_alternative<LogObstruction>(i2)) return std::get<LogObstruction>(i2);
    RationalFunction hat = std::get<RationalFunction>(i1) + RationalFunction(Var::z, c1) -
                           (std::get<RationalFunction>(i2) + RationalFunction(Var::z, c2)) / k;
    QuasiFactored out =
        QuasiFactored(Var::z, {{hat.num(), Scalar(1)}, {hat.den(), Scalar(-1)}})
            .monic_normalized();
    return Darboux3Result{out, Scalar(-6) * kappa.log_derivative().deriv_z()};
}

}  // namespace vortexlab
