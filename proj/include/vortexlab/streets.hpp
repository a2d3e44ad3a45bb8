#pragma once

#include "vortexlab/chains.hpp"
#include "vortexlab/diffop.hpp"

namespace vortexlab {

// Cylinder conventions: the period is pi and xi = e^{iz}, so
//   sin(k z + zeta) ~ zhat xi^k - xi^{-k}   with zhat = e^{2 i zeta},
// normalized to leading Laurent coefficient 1. All zeta parameters enter
// through their exact Gaussian-rational values zhat.

/// Seed sin(k z + zeta) as a xi-Laurent polynomial, leading coefficient 1.
inline Poly soliton_seed(long k, const Scalar& zeta_hat) {
    if (k <= 0) throw std::invalid_argument("soliton_seed: frequency must be positive");
    if (zeta_hat.is_zero()) throw std::invalid_argument("soliton_seed: zeta_hat must be nonzero");
    Poly p(Var::xi);
    p.set(k, Scalar(1));
    p.set(-k, -zeta_hat.inv());
    return p;
}

/// tau_n = W[sin(k_1 z + zeta_1), ..., sin(k_n z + zeta_n)] as a xi-Laurent
/// polynomial with leading coefficient 1. Frequencies must be strictly
/// increasing positive integers; a duplicate makes the seeds dependent.
inline Poly soliton_tau(const std::vector<std::pair<long, Scalar>>& spec) {
    if (spec.empty()) throw std::invalid_argument("soliton_tau: empty spec");
    for (std::size_t i = 0; i + 1 < spec.size(); ++i)
        if (spec[i].first >= spec[i + 1].first)
            throw std::invalid_argument("soliton_tau: frequencies must increase strictly");
    std::size_t n = spec.size();
    Matrix<Poly> m(n, std::vector<Poly>(n, Poly(Var::xi)));
    for (std::size_t j = 0; j < n; ++j) {
        Poly d = soliton_seed(spec[j].first, spec[j].second);
        for (std::size_t r = 0; r < n; ++r) {
            m[r][j] = d;
            d = d.deriv_z();
        }
    }
    Poly det = fraction_free_det(m);
    if (det.is_zero()) return det;
    return det.monic();
}

/// Periodic bilinear residual p''q - 2g p'q' + g^2 p q'' + (l - g m)^2 p q,
/// with l, m the sine-degrees of p and q (half the Laurent span) and the
/// Lambda-generalization parameter g (1 for the Tkachenko case).
inline Poly street_bilinear_residual(const Poly& p, const Poly& q, const Scalar& l,
                                     const Scalar& m, const Scalar& gamma = Scalar(1)) {
    p.check_tag(q);
    if (p.var() != Var::xi) throw std::invalid_argument("street residual: xi-ring expected");
    Scalar c = l - gamma * m;
    return p.deriv_z().deriv_z() * q - (Scalar(2) * gamma) * (p.deriv_z() * q.deriv_z()) +
           gamma * gamma * (p * q.deriv_z().deriv_z()) + c * c * (p * q);
}

inline Scalar sine_degree(const Poly& tau) {
    if (tau.is_zero()) throw std::invalid_argument("sine_degree of zero");
    if (tau.is_constant()) return Scalar(0);
    return Scalar(tau.degree() - tau.low_exponent(), 2);
}

/// Trigonometric Baker-Akhiezer eigenfunction
/// W[seeds, e^{kz}] / W[seeds]; k = 0 degenerates to the static ratio.
inline QuasiFactored periodic_ba(const std::vector<std::pair<long, Scalar>>& spec,
                                 const Scalar& k) {
    std::vector<QuasiFactored> seeds;
    for (auto& [ki, zhat] : spec) seeds.push_back(QuasiFactored(soliton_seed(ki, zhat)));
    QuasiFactored wn = wronskian(seeds);
    if (wn.is_zero()) throw std::invalid_argument("periodic_ba: dependent seeds");
    seeds.push_back(QuasiFactored::exponential(Var::xi, k));
    return wronskian(seeds) / wn;
}

// -- Poschl-Teller seeds -------------------------------------------------------

/// The trigonometric Poschl-Teller operator
/// H = -d^2 + a(a-1)/sin^2 z + b(b-1)/cos^2 z in exact xi-ring form.
inline DiffOp pt_hamiltonian(const Scalar& a, const Scalar& b) {
    Poly xi2 = Poly::monomial(Var::xi, 2);
    Poly sm = xi2 - Poly(Var::xi, Scalar(1));  // xi^2 - 1
    Poly sp = xi2 + Poly(Var::xi, Scalar(1));  // xi^2 + 1
    // 1/sin^2 z = -4 xi^2/(xi^2-1)^2 ; 1/cos^2 z = 4 xi^2/(xi^2+1)^2
    RationalFunction inv_sin2(Scalar(-4) * xi2, sm * sm);
    RationalFunction inv_cos2(Scalar(4) * xi2, sp * sp);
    DiffOp h(Var::xi);
    h.set(2, RationalFunction(Var::xi, Scalar(-1)));
    RationalFunction u = (a * (a - Scalar(1))) * inv_sin2 + (b * (b - Scalar(1))) * inv_cos2;
    if (!u.is_zero()) h.set(0, u);
    return h;
}

inline bool pt_generic(const Scalar& a, const Scalar& b) {
    return !(a + b).is_integer() && !(a - b).is_integer();
}

struct PtSeed {
    QuasiFactored kappa;
    Scalar lambda;
};

namespace detail {

// substitute a Laurent value for the abstract variable of a z-tagged
// polynomial (used for P(x) at x = cos 2z)
inline Poly subst(const Poly& coeffs, const Poly& value) {
    Poly acc(value.var());
    for (long e = coeffs.is_zero() ? -1 : coeffs.degree(); e >= 0; --e) {
        acc = acc * value;
        Scalar c = coeffs.coeff(e);
        if (!c.is_zero()) acc += Poly(value.var(), c);
    }
    return acc;
}

// sin^alpha z cos^beta z as prefactor bases; constants of fractional powers
// are dropped (values defined up to a nonzero constant)
inline QuasiFactored sincos_power(const Scalar& alpha, const Scalar& beta) {
    Poly xi2 = Poly::monomial(Var::xi, 2);
    Poly sm = xi2 - Poly(Var::xi, Scalar(1));
    Poly sp = xi2 + Poly(Var::xi, Scalar(1));
    // sin^a: (xi^2-1)^a xi^{-a} (2i)^{-a};  cos^b: (xi^2+1)^b xi^{-b} 2^{-b};
    // the xi-units carry into the plane-wave rate
    Scalar rate(mpq_class(0), (-(alpha + beta)).real());
    return QuasiFactored(Var::xi, {{sm, alpha}, {sp, beta}}, Scalar(1), Poly(), rate);
}

}  // namespace detail

/// Factorizable eigenfunction of the Poschl-Teller operator: one of the four
/// 2F1(-i, *; *; sin^2 z) sin^* z cos^* z rows with its eigenvalue. The
/// terminating hypergeometric sum is evaluated exactly in the xi-ring.
inline PtSeed pt_seed(int type, long i, const Scalar& a, const Scalar& b) {
    if (type < 1 || type > 4) throw std::invalid_argument("pt_seed: type must be 1..4");
    if (i < 0) throw std::invalid_argument("pt_seed: nonnegative index required");
    Scalar one(1), two(2);
    Scalar alpha, beta, bb, cc, lam;
    switch (type) {
        case 1:
            alpha = a; beta = b;
            bb = Scalar(i) + a + b;
            cc = Scalar(1, 2) + a;
            lam = (Scalar(2 * i) + a + b).pow(2);
            break;
        case 2:
            alpha = one - a; beta = b;
            bb = Scalar(i) + one - a + b;
            cc = Scalar(3, 2) - a;
            lam = (Scalar(2 * i) + one - a + b).pow(2);
            break;
        case 3:
            alpha = a; beta = one - b;
            bb = Scalar(i) + a + one - b;
            cc = Scalar(1, 2) + a;
            lam = (Scalar(2 * i) + one + a - b).pow(2);
            break;
        default:
            alpha = one - a; beta = one - b;
            bb = Scalar(i) + two - a - b;
            cc = Scalar(3, 2) - a;
            lam = (Scalar(2 * i) + two - a - b).pow(2);
            break;
    }
    // terminating 2F1(-i, bb; cc; sin^2 z)
    Poly x(Var::xi);  // sin^2 z = (2 - xi^2 - xi^{-2})/4
    x.set(0, Scalar(1, 2));
    x.set(2, Scalar(-1, 4));
    x.set(-2, Scalar(-1, 4));
    Poly hyp(Var::xi, Scalar(1));
    Poly xpow(Var::xi, Scalar(1));
    Scalar term(1);
    for (long j = 0; j < i; ++j) {
        Scalar cj = cc + Scalar(j);
        if (cj.is_zero())
            throw std::domain_error("pt_seed: lower parameter collision in 2F1");
        term = term * (Scalar(-i) + Scalar(j)) * (bb + Scalar(j)) / (cj * Scalar(j + 1));
        xpow = xpow * x;
        hyp += Poly(Var::xi, term) * xpow;
    }
    QuasiFactored pre = detail::sincos_power(alpha, beta);
    return {QuasiFactored(hyp) * pre, lam};
}

// -- para-Gegenbauer polynomials and the even street family --------------------

namespace detail {

inline Scalar fact(long n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Scalar(mpq_class(f));
}

}  // namespace detail

/// Para-Gegenbauer polynomial P_n^{(-m,-m)}(x, zeta), m <= n < 2m, linear in
/// the free parameter zeta. The closed form is the explicit double sum; the
/// zeta-part normalization is fixed by the m = n = 1 case x + 1 + zeta.
inline Poly para_gegenbauer(long n, long m, const Scalar& zeta) {
    if (!(m <= n && n < 2 * m)) throw std::invalid_argument("para_gegenbauer: need m <= n < 2m");
    using detail::fact;
    Poly xp1(Var::z);  // (1 + x)/2 in the abstract variable x
    xp1.set(1, Scalar(1, 2));
    xp1.set(0, Scalar(1, 2));
    Scalar sign_n = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
    Scalar pref1 = sign_n * Scalar(2).pow(n) * fact(n - m) * fact(n) / fact(2 * (n - m));
    Poly sum1(Var::z);
    for (long k = 0; k <= n - m; ++k) {
        Scalar c = fact(2 * n - 2 * m - k) / (fact(k) * fact(n - m - k) * fact(n - k));
        if ((n - k) % 2 != 0) c = -c;
        sum1 += c * xp1.pow(n - k);
    }
    Scalar pref2 = sign_n * Scalar(2).pow(n) * fact(2 * (n - m) + 1) * fact(2 * m - n - 1) /
                   fact(n - m);
    Poly sum2(Var::z);
    for (long k = 2 * (n - m) + 1; k <= n; ++k) {
        Scalar c = fact(k - n + m - 1) / (fact(k) * fact(k + 2 * m - 2 * n - 1) * fact(n - k));
        if ((n - k) % 2 != 0) c = -c;
        sum2 += c * xp1.pow(n - k);
    }
    // the formula's zeta-part carries -2 zeta at (1,1) where the displayed
    // example has +zeta; the -1/2 rescaling of zeta reconciles them
    return pref1 * sum1 + (Scalar(-1, 2) * zeta * pref2) * sum2;
}

/// Jacobi polynomial P_i^{(l,m)}(x) by the terminating hypergeometric sum.
inline Poly jacobi_polynomial(long i, long l, long m) {
    if (i < 0) throw std::invalid_argument("jacobi: nonnegative index required");
    using detail::fact;
    Poly x1m(Var::z);  // (1 - x)/2
    x1m.set(1, Scalar(-1, 2));
    x1m.set(0, Scalar(1, 2));
    Poly acc(Var::z);
    Scalar term = fact(i + l) / (fact(i) * fact(l));  // (l+1)_i / i!
    Poly xpow(Var::z, Scalar(1));
    acc += Poly(Var::z, term);
    Scalar t(1);
    for (long j = 0; j < i; ++j) {
        t = t * (Scalar(-i) + Scalar(j)) * (Scalar(i + l + m + 1) + Scalar(j)) /
            ((Scalar(l + 1) + Scalar(j)) * Scalar(j + 1));
        xpow = xpow * x1m;
        acc += (term * t) * xpow;
    }
    return acc;
}

/// Para-Gegenbauer seed kappa_{m+i} = (sin z cos z)^{1/2-m} P^{(-m,-m)}_{m+i}(cos 2z, zeta).
inline QuasiFactored even_street_seed(long m, long i, const Scalar& zeta) {
    Poly cos2z(Var::xi);  // (xi^2 + xi^{-2})/2
    cos2z.set(2, Scalar(1, 2));
    cos2z.set(-2, Scalar(1, 2));
    Poly p = detail::subst(para_gegenbauer(m + i, m, zeta), cos2z);
    QuasiFactored pre = detail::sincos_power(Scalar(1 - 2 * m, 2), Scalar(1 - 2 * m, 2));
    return QuasiFactored(p) * pre;
}

/// Jacobi continuation seed P^{(m,m)}_i(cos 2z) (sin z cos z)^{m+1/2}.
inline QuasiFactored even_street_jacobi_seed(long m, long i) {
    Poly cos2z(Var::xi);
    cos2z.set(2, Scalar(1, 2));
    cos2z.set(-2, Scalar(1, 2));
    Poly p = detail::subst(jacobi_polynomial(i, m, m), cos2z);
    QuasiFactored pre = detail::sincos_power(Scalar(2 * m + 1, 2), Scalar(2 * m + 1, 2));
    return QuasiFactored(p) * pre;
}

/// Consecutive Wronskian-ratio eigenfunctions psi_m, psi_{m+1}, ... of the
/// a = b = m + 1/2 even street family: the first m steps use para-Gegenbauer
/// seeds (one free zeta each), further steps continue with Jacobi seeds.
inline std::vector<QuasiFactored> even_street_sequence(long m, const std::vector<Scalar>& zetas,
                                                       long steps) {
    if (m < 1) throw std::invalid_argument("even_street_sequence: m >= 1 required");
    if (steps < 1 || zetas.size() < static_cast<std::size_t>(std::min(steps, m)))
        throw std::invalid_argument("even_street_sequence: need one zeta per degenerate step");
    std::vector<QuasiFactored> seeds, out;
    for (long i = 0; i < steps; ++i) {
        if (i < m)
            seeds.push_back(even_street_seed(m, i, zetas[static_cast<std::size_t>(i)]));
        else
            seeds.push_back(even_street_jacobi_seed(m, i - m));
        QuasiFactored wn = wronskian(seeds);
        if (wn.is_zero()) throw std::invalid_argument("even_street_sequence: dependent seeds");
        if (i == 0) {
            out.push_back(wn);
        } else {
            std::vector<QuasiFactored> prev(seeds.begin(), seeds.end() - 1);
            out.push_back(wn / wronskian(prev));
        }
    }
    return out;
}

// -- trigonometric Lambda = 2 steps ---------------------------------------------

/// Solves the periodic bilinear pair equation for the next tau of sine-degree
/// d_next, given tau_cur and the step's gamma (1/2 or 2):
///   tau_cur'' t - 2 g tau_cur' t' + g^2 tau_cur t'' + (d_cur - g d_next)^2 tau_cur t = 0.
/// The unknown ranges over exponents -d_next..d_next of the parity of d_next,
/// pinned monic at the top; the free-parameter slot is the coefficient of
/// xi^{-sine_degree(tau_prev)} (the homogeneous direction is tau_prev), or
/// the lowest exponent -d_next for the first step. Inconsistency is the
/// terminating-sequence endpoint; the certificate value is reported as a
/// constant residual.
inline ChainResult<Poly> trig_lambda2_step(const Poly* tau_prev, const Poly& tau_cur,
                                           const Scalar& gamma, long d_next,
                                           const Scalar& slot_val) {
    if (!(gamma == Scalar(2) || gamma == Scalar(1, 2)))
        throw std::invalid_argument("trig_lambda2_step: gamma must be 1/2 or 2");
    if (tau_cur.var() != Var::xi) throw std::invalid_argument("trig_lambda2_step: xi-ring only");
    Scalar d_cur = sine_degree(tau_cur);
    long slot_exp = tau_prev ? tau_prev->low_exponent() : -d_next;

    std::vector<long> exps;  // the parity grid of d_next
    for (long e = -d_next; e <= d_next; e += 2) exps.push_back(e);

    std::vector<Poly> cols;
    long lo = 0, hi = 0;
    Scalar cconst = d_cur - gamma * Scalar(d_next);
    for (long e : exps) {
        Poly mono = Poly::monomial(Var::xi, e);
        Poly col = tau_cur.deriv_z().deriv_z() * mono -
                   (Scalar(2) * gamma) * (tau_cur.deriv_z() * mono.deriv_z()) +
                   gamma * gamma * (tau_cur * mono.deriv_z().deriv_z()) +
                   (cconst * cconst) * (tau_cur * mono);
        if (!col.is_zero()) {
            lo = std::min(lo, col.low_exponent());
            hi = std::max(hi, col.degree());
        }
        cols.push_back(col);
    }
    std::size_t rows = static_cast<std::size_t>(hi - lo + 1) + 2;
    Matrix<Scalar> mat(rows, std::vector<Scalar>(exps.size(), Scalar(0)));
    std::vector<Scalar> rhs(rows, Scalar(0));
    for (std::size_t k = 0; k < exps.size(); ++k)
        for (auto& [e, c] : cols[k].terms())
            mat[static_cast<std::size_t>(e - lo)][k] = c;
    // pins: monic at +d_next, free parameter at the slot exponent
    for (std::size_t k = 0; k < exps.size(); ++k) {
        if (exps[k] == d_next) mat[rows - 2][k] = Scalar(1);
        if (exps[k] == slot_exp) mat[rows - 1][k] = Scalar(1);
    }
    rhs[rows - 2] = Scalar(1);
    rhs[rows - 1] = slot_val;

    LinearSolution sol = solve_linear(mat, rhs);
    if (sol.status == LinearSolution::Status::inconsistent)
        return ChainObstruction{Poly(Var::xi, sol.certificate_value)};
    Poly tau(Var::xi);
    for (std::size_t k = 0; k < exps.size(); ++k) tau.set(exps[k], sol.x[k]);
    return tau;
}

}  // namespace vortexlab
