#pragma once

#include <variant>

#include "vortexlab/linalg.hpp"
#include "vortexlab/poly.hpp"

namespace vortexlab {

/// Terminating-chain certificate: the part of the defining relation that no
/// choice of remaining coefficients can cancel.
struct ChainObstruction {
    Poly residual;
};

template <typename T>
using ChainResult = std::variant<T, ChainObstruction>;

inline bool obstructed(const ChainResult<Poly>& r) {
    return std::holds_alternative<ChainObstruction>(r);
}

/// p''q - 2 L p'q' + L^2 p q''. Zero iff the two-species static equilibrium
/// holds (for p, q without common or multiple roots).
inline Poly bilinear_residual(const Poly& p, const Poly& q, const Scalar& lambda) {
    p.check_tag(q);
    Poly pp = p.deriv_z(), qq = q.deriv_z();
    return p.deriv_z().deriv_z() * q - (Scalar(2) * lambda) * (pp * qq) +
           lambda * lambda * (p * q.deriv_z().deriv_z());
}

/// Multi-species static residual: (prod P_i^2) times
/// sum_i L_i^2 P_i''/P_i + 2 sum_{i<j} L_i L_j (P_i'/P_i)(P_j'/P_j),
/// expanded to a polynomial. Species must be square-free and pairwise
/// coprime (distinct vortex positions).
inline Poly polylinear_residual(const std::vector<std::pair<Poly, Scalar>>& species) {
    if (species.empty()) throw std::invalid_argument("polylinear_residual: no species");
    Var v = species[0].first.var();
    for (std::size_t i = 0; i < species.size(); ++i) {
        const Poly& pi = species[i].first;
        if (pi.var() != v) throw std::invalid_argument("polylinear_residual: tag mismatch");
        if (!poly_gcd(pi, pi.deriv_var()).is_constant())
            throw std::invalid_argument("polylinear_residual: species with multiple roots");
        for (std::size_t j = i + 1; j < species.size(); ++j)
            if (!poly_gcd(pi, species[j].first).is_constant())
                throw std::invalid_argument("polylinear_residual: species share roots");
    }
    Poly acc(v);
    std::size_t n = species.size();
    for (std::size_t i = 0; i < n; ++i) {
        Poly term = species[i].second * species[i].second *
                    (species[i].first.deriv_z().deriv_z() * species[i].first);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) term *= species[k].first * species[k].first;
        acc += term;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Poly term = (Scalar(2) * species[i].second * species[j].second) *
                        (species[i].first.deriv_z() * species[j].first.deriv_z() *
                         species[i].first * species[j].first);
            for (std::size_t k = 0; k < n; ++k)
                if (k != i && k != j) term *= species[k].first * species[k].first;
            acc += term;
        }
    return acc;
}

// -- degree laws ------------------------------------------------------------

struct DegreePair {
    long l, m;  // deg p, deg q
};

/// Lambda = 1: l_i = i(2i+1), m_i = i(2i-1) (consecutive triangular numbers).
inline DegreePair lambda1_degrees(long i) { return {i * (2 * i + 1), i * (2 * i - 1)}; }

/// Lambda = 2: l_i = i(3i+2), m_i = i(3i-1)/2.
inline DegreePair lambda2_degrees(long i) { return {i * (3 * i + 2), i * (3 * i - 1) / 2}; }

/// deg P_n = n(n+1)/2.
inline long adler_moser_degree(long n) { return n * (n + 1) / 2; }

/// d_{next} = 2 gamma d_cur - d_prev + 1 (degrees may be half-integers).
inline Scalar kwcc_next_degree(const Scalar& gamma, const Scalar& d_prev, const Scalar& d_cur) {
    return Scalar(2) * gamma * d_cur - d_prev + Scalar(1);
}

// -- first-order relation solver ---------------------------------------------

namespace detail {

// multiplier of x^{j + sigma} in d/dz x^j, and the exponent shift sigma
inline Scalar deriv_factor(Var v, long j) {
    switch (v) {
        case Var::z: return Scalar(j);
        case Var::w: return Scalar(j, 2);
        default: return Scalar(mpq_class(0), mpq_class(j));
    }
}
inline long deriv_shift(Var v) { return v == Var::z ? -1 : (v == Var::w ? -2 : 0); }

}  // namespace detail

/// Solves P' tau_prev - P tau_prev' = rhs for the polynomial P, peeling
/// coefficients from the top degree down. The relation determines every
/// coefficient except the one at exponent deg(tau_prev) (the homogeneous
/// solution is a multiple of tau_prev); that slot is pinned to slot_val,
/// which is the (sr)-normal-form free parameter of the chain step.
/// Unknown exponents below min_exp are out of the ring; a remainder that
/// would need them (or the slot twice) is returned as the obstruction
/// certificate.
inline ChainResult<Poly> solve_first_order(const Poly& tau_prev, const Poly& rhs,
                                           const Scalar& slot_val, long min_exp = 0) {
    if (tau_prev.is_zero()) throw std::invalid_argument("solve_first_order: zero previous member");
    Var v = tau_prev.var();
    rhs.check_tag(tau_prev);
    long t = tau_prev.degree();
    Scalar dt = detail::deriv_factor(v, t);
    const Scalar& lead = tau_prev.leading();

    auto relation = [&](const Poly& p) {
        return p.deriv_z() * tau_prev - p * tau_prev.deriv_z();
    };

    Poly p = Poly::monomial(v, t, slot_val);
    if (slot_val.is_zero()) p = Poly(v);
    Poly e = rhs - relation(p);
    while (!e.is_zero()) {
        long m = e.degree();
        long j = m - t - detail::deriv_shift(v);
        Scalar dj = detail::deriv_factor(v, j);
        if (j == t || dj == dt || j < min_exp) return ChainObstruction{e};
        Scalar a = e.leading() / ((dj - dt) * lead);
        Poly mono = Poly::monomial(v, j, a);
        p += mono;
        e -= relation(mono);
    }
    return p;
}

// -- Adler-Moser (Lambda = 1 main sequence) ----------------------------------

/// P_0..P_n in the (AMExamples) normal form: P_0 = 1, P_1 = z,
/// P_2 = z^3 + s_1, ... with s_i pinned as the z^{deg P_{i-1}} coefficient of
/// P_{i+1}. Built two ways, (i) by the first-order recurrence and (ii) as
/// Wronskians of the polynomial chain X''_{n+1} = (2n+1) X_n with the
/// integration constants matched by coefficient comparison; the two paths
/// are cross-checked for exact equality.
inline std::vector<Poly> adler_moser_sequence(long n, const std::vector<Scalar>& s) {
    if (n < 0) throw std::invalid_argument("adler_moser: negative index");
    if (n >= 2 && s.size() + 1 < static_cast<std::size_t>(n))
        throw std::invalid_argument("adler_moser: expected s_1..s_{n-1}");
    std::vector<Poly> p;
    p.push_back(Poly(Var::z, Scalar(1)));
    if (n >= 1) p.push_back(Poly::variable(Var::z));
    for (long i = 1; i + 1 <= n; ++i) {
        Poly rhs = Scalar(2 * i + 1) * (p[i] * p[i]);
        auto r = solve_first_order(p[i - 1], rhs, s[static_cast<std::size_t>(i - 1)]);
        if (obstructed(r)) throw std::logic_error("adler_moser: main sequence obstructed");
        Poly next = std::get<Poly>(r);
        if (next.degree() != adler_moser_degree(i + 1) || !next.leading().is_one())
            throw std::logic_error("adler_moser: degree law violated");
        p.push_back(next);
    }

    // independent Wronskian route over the X-chain, constants matched to the
    // same normal form through the affine dependence of W on each constant
    std::vector<Poly> xs = {Poly::variable(Var::z)};
    auto wronskian_of = [&](const std::vector<Poly>& cols) {
        std::size_t k = cols.size();
        Matrix<Poly> m(k, std::vector<Poly>(k, Poly(Var::z)));
        for (std::size_t j = 0; j < k; ++j) {
            Poly d = cols[j];
            for (std::size_t r = 0; r < k; ++r) {
                m[r][j] = d;
                d = d.deriv_z();
            }
        }
        return fraction_free_det(m);
    };
    for (long i = 1; i + 1 <= n; ++i) {
        Poly dd = Scalar(2 * i + 1) * xs.back();
        Poly prim(Var::z);  // double primitive with zero constants
        for (auto& [e, c] : dd.terms())
            prim.set(e + 2, c / Scalar((e + 1) * (e + 2)));
        long slot = adler_moser_degree(i - 1);
        std::vector<Poly> cols = xs;
        cols.push_back(prim);
        Poly w0 = wronskian_of(cols);
        cols.back().set(0, cols.back().coeff(0) + Scalar(1));
        Poly w1 = wronskian_of(cols);
        Scalar c0 = w0.coeff(slot), c1 = w1.coeff(slot);
        if (c0 == c1) throw std::logic_error("adler_moser: slot insensitive to the constant");
        Scalar b = (s[static_cast<std::size_t>(i - 1)] - c0) / (c1 - c0);
        prim.set(0, prim.coeff(0) + b);
        xs.push_back(prim);
        Poly w = w0 + b * (w1 - w0);
        if (w != p[static_cast<std::size_t>(i + 1)])
            throw std::logic_error("adler_moser: recurrence and Wronskian routes disagree");
    }
    return p;
}

inline Poly adler_moser(long n, const std::vector<Scalar>& s) {
    return adler_moser_sequence(n, s).back();
}

// -- Lambda = 2 main chain ----------------------------------------------------

/// Both branches start from p_0 = q_0 = 1. Positive branch parameters:
/// r_1..r_n and s_2..s_n (q_1 = z fixes the z-shift); negative branch:
/// s_1..s_n and r_2..r_n (p_{-1} = z). Index k in the vectors holds the
/// members of absolute index k.
struct Lambda2Chain {
    std::vector<Poly> p, q;
};

/// The first-order relation constants are taken from the generic recurrences
/// with coefficients 2 l_i / Lambda - 2 m_i + 1 and 2 Lambda m_i - 2 l_{i-1} + 1
/// evaluated on the (lmlambda2) degree law, which reproduces the published
/// positive-branch constants (3i+1), (6i-1) and fixes the negative branch.
inline Lambda2Chain lambda2_chain(long n, int branch, const std::vector<Scalar>& r,
                                  const std::vector<Scalar>& s) {
    if (n < 0 || (branch != 1 && branch != -1))
        throw std::invalid_argument("lambda2_chain: bad index or branch");
    Lambda2Chain ch;
    ch.p.push_back(Poly(Var::z, Scalar(1)));
    ch.q.push_back(Poly(Var::z, Scalar(1)));
    auto param = [](const std::vector<Scalar>& v, long k) {
        return k < 1 || static_cast<std::size_t>(k) > v.size() ? Scalar(0)
                                                               : v[static_cast<std::size_t>(k - 1)];
    };
    for (long k = 1; k <= n; ++k) {
        long i = branch > 0 ? k : -k;
        DegreePair dk = lambda2_degrees(i);
        DegreePair dprev = lambda2_degrees(branch > 0 ? k - 1 : -(k - 1));
        if (branch > 0) {
            // q_k first (relation at i-1), then p_k (relation at i)
            Scalar cq(2 * dprev.l / 2 - 2 * dprev.m + 1);  // Lambda = 2
            auto rq = solve_first_order(ch.q.back(), cq * ch.p.back(), param(s, k));
            if (obstructed(rq)) throw std::logic_error("lambda2_chain: q step obstructed");
            ch.q.push_back(std::get<Poly>(rq));
            Scalar cp(4 * dk.m - 2 * dprev.l + 1);
            Poly q4 = ch.q.back().pow(4);
            auto rp = solve_first_order(ch.p.back(), cp * q4, param(r, k));
            if (obstructed(rp)) throw std::logic_error("lambda2_chain: p step obstructed");
            ch.p.push_back(std::get<Poly>(rp));
        } else {
            // p_{-k} first (relation at i+1), then q_{-k} (relation at i)
            Scalar cp(4 * dprev.m - 2 * dprev.l + 1);
            Poly q4 = ch.q.back().pow(4);
            auto rp = solve_first_order(ch.p.back(), cp * q4, param(r, k));
            if (obstructed(rp)) throw std::logic_error("lambda2_chain: p step obstructed");
            ch.p.push_back(std::get<Poly>(rp));
            Scalar cq(2 * dk.l / 2 - 2 * dprev.m + 1);
            auto rq = solve_first_order(ch.q.back(), cq * ch.p.back(), param(s, k));
            if (obstructed(rq)) throw std::logic_error("lambda2_chain: q step obstructed");
            ch.q.push_back(std::get<Poly>(rq));
        }
        if (ch.p.back().degree() != dk.l || ch.q.back().degree() != dk.m)
            throw std::logic_error("lambda2_chain: degree law violated");
    }
    return ch;
}

// -- even bispectral family (Lambda = 1 terminating) --------------------------

/// P_0 = 1, P_1 = z^{1/2} in the w-ring (w^2 = z); the recurrence
/// P'_{i+1} P_{i-1} - P'_{i-1} P_{i+1} = 2i P_i^2 is solved step by step.
/// Violating the termination constraints (s_1 != 0 at step 3, ...) is
/// detected by the returned obstruction, not assumed.
inline ChainResult<std::vector<Poly>> even_bispectral_sequence(long n,
                                                               const std::vector<Scalar>& s) {
    if (n < 0) throw std::invalid_argument("even_bispectral: negative index");
    std::vector<Poly> p;
    p.push_back(Poly(Var::w, Scalar(1)));
    if (n >= 1) p.push_back(Poly::variable(Var::w));
    for (long i = 1; i + 1 <= n; ++i) {
        Scalar sv = static_cast<std::size_t>(i) <= s.size() ? s[static_cast<std::size_t>(i - 1)]
                                                            : Scalar(0);
        Poly rhs = Scalar(2 * i) * (p[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)]);
        auto r = solve_first_order(p[static_cast<std::size_t>(i - 1)], rhs, sv);
        if (obstructed(r)) return std::get<ChainObstruction>(r);
        Poly next = std::get<Poly>(r);
        // z-degree of P_n is n^2/2, i.e. w-degree n^2
        if (next.degree() != (i + 1) * (i + 1) || !next.leading().is_one())
            throw std::logic_error("even_bispectral: degree law violated");
        p.push_back(next);
    }
    return p;
}

inline ChainResult<Poly> even_bispectral(long n, const std::vector<Scalar>& s) {
    auto r = even_bispectral_sequence(n, s);
    if (std::holds_alternative<ChainObstruction>(r)) return std::get<ChainObstruction>(r);
    return std::get<std::vector<Poly>>(r).back();
}

// -- generic KWCC chain step ---------------------------------------------------

/// One step of the tau-recurrence
///   tau'_{next} tau_prev - tau_next tau'_prev = (2 g d_cur - 2 d_prev + 1) tau_cur^{2g},
/// g in {1/2, 1, 2}. Degrees are z-degrees and may be half-integers in the
/// w-ring. Returns the terminating-family obstruction when the linear system
/// is inconsistent.
inline ChainResult<Poly> kwcc_step(const Poly& tau_prev, const Poly& tau_cur,
                                   const Scalar& gamma, const Scalar& d_prev,
                                   const Scalar& d_cur, const Scalar& slot_val) {
    if (!(gamma == Scalar(1) || gamma == Scalar(2) || gamma == Scalar(1, 2)))
        throw std::invalid_argument("kwcc_step: gamma must be 1/2, 1 or 2");
    Scalar two_gamma = Scalar(2) * gamma;
    Poly rhs_base = tau_cur.pow(two_gamma.to_long());
    Scalar c = Scalar(2) * gamma * d_cur - Scalar(2) * d_prev + Scalar(1);
    auto r = solve_first_order(tau_prev, c * rhs_base, slot_val);
    if (obstructed(r)) return r;
    Poly next = std::get<Poly>(r);
    // degree law: d_next = 2 g d_cur - d_prev + 1 (z-degrees)
    Scalar expected = kwcc_next_degree(gamma, d_prev, d_cur);
    Scalar got = next.var() == Var::w ? Scalar(next.degree(), 2) : Scalar(next.degree());
    if (got != expected) throw std::logic_error("kwcc_step: degree law violated");
    return next;
}

/// Three-species residual with a charge `a` at the origin, cleared of the
/// 1/z denominator in the w-ring (z = w^2):
///   z (p''q - 2 p'q' + p q'') + 2a (q'p - p'q).
/// Zero iff the configuration {-1 at p-roots, +1 at q-roots, a at 0} is a
/// static equilibrium; the even bispectral pairs satisfy it with a = 1/2
/// (p the integer-degree member, q the half-integer member divided by w).
inline Poly generalized_tkachenko_residual(const Poly& p, const Poly& q, const Scalar& a) {
    p.check_tag(q);
    if (p.var() != Var::w) throw std::invalid_argument("generalized tkachenko: w-ring expected");
    Poly z2 = Poly::monomial(Var::w, 2);
    Poly core = p.deriv_z().deriv_z() * q - Scalar(2) * (p.deriv_z() * q.deriv_z()) +
                p * q.deriv_z().deriv_z();
    Poly swap = q.deriv_z() * p - p.deriv_z() * q;
    return z2 * core + (Scalar(2) * a) * swap;
}

/// Iterates kwcc_step with the alternating gamma law g_{i+1} = 1/g_i from
/// the pair (tau_0, tau_1). params[j] is the free constant of the step that
/// creates tau_{j+2}. Stops at `extra_steps` new members or at the first
/// obstruction (terminating family endpoint).
struct KwccChainResult {
    std::vector<Poly> taus;
    std::vector<Scalar> gammas;  // gammas[i] is the gamma of the step creating taus[i+2]
    bool terminated = false;
    Poly obstruction_residual;
};

inline KwccChainResult kwcc_chain(const Poly& tau0, const Poly& tau1, const Scalar& gamma1,
                                  long extra_steps, const std::vector<Scalar>& params) {
    KwccChainResult out;
    out.taus = {tau0, tau1};
    out.gammas = {gamma1};
    out.obstruction_residual = Poly(tau0.var());
    auto zdeg = [](const Poly& t) {
        return t.is_constant() ? Scalar(0)
               : t.var() == Var::w ? Scalar(t.degree(), 2)
                                   : Scalar(t.degree());
    };
    Scalar g = gamma1;
    for (long j = 0; j < extra_steps; ++j) {
        const Poly& prev = out.taus[out.taus.size() - 2];
        const Poly& cur = out.taus.back();
        Scalar slot = static_cast<std::size_t>(j) < params.size()
                          ? params[static_cast<std::size_t>(j)]
                          : Scalar(0);
        auto r = kwcc_step(prev, cur, g, zdeg(prev), zdeg(cur), slot);
        if (obstructed(r)) {
            out.terminated = true;
            out.obstruction_residual = std::get<ChainObstruction>(r).residual;
            return out;
        }
        out.taus.push_back(std::get<Poly>(r));
        g = Scalar(1) / g;
        out.gammas.push_back(g);
    }
    return out;
}

}  // namespace vortexlab
