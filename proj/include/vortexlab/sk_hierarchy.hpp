#pragma once

#include "vortexlab/chains.hpp"
#include "vortexlab/diffop.hpp"

namespace vortexlab {

/// Hierarchy times t_2, t_3, ... as exact scalars; t_1 is always the
/// symbolic variable z. The reduction constrains which indices may be
/// nonzero: KdV solutions do not depend on even times, Sawada-Kotera
/// solutions on times divisible by 2 or 3.
struct TimesAssignment {
    enum class Reduction { kdv, sk };
    Reduction reduction = Reduction::kdv;
    std::map<long, Scalar> t;

    static bool allowed(Reduction r, long i) {
        if (i < 2) return false;
        if (r == Reduction::kdv) return i % 2 != 0;
        return i % 2 != 0 && i % 3 != 0;
    }
    void validate() const {
        for (auto& [i, v] : t)
            if (!v.is_zero() && !allowed(reduction, i))
                throw std::invalid_argument("TimesAssignment: constrained time t_" +
                                            std::to_string(i) + " must be zero");
    }
    Scalar at(long i) const {
        auto it = t.find(i);
        return it == t.end() ? Scalar(0) : it->second;
    }
};

/// Elementary Schur polynomials with t_1 = z symbolic: n S_n = sum_i i t_i S_{n-i}.
inline std::vector<Poly> schur_list(long nmax, const TimesAssignment& t,
                                    const std::map<long, Scalar>& shift_c = {}) {
    t.validate();
    std::vector<Poly> s;
    s.push_back(Poly(Var::z, Scalar(1)));
    for (long n = 1; n <= nmax; ++n) {
        Poly acc(Var::z);
        for (long i = 1; i <= n; ++i) {
            Poly ti = i == 1 ? Poly::variable(Var::z) : Poly(Var::z, t.at(i));
            auto ci = shift_c.find(i);
            if (ci != shift_c.end()) ti += Poly(Var::z, ci->second);
            if (ti.is_zero()) continue;
            acc += Scalar(i) * (ti * s[static_cast<std::size_t>(n - i)]);
        }
        s.push_back(Scalar(n).inv() * acc);
    }
    return s;
}

inline Poly schur(long n, const TimesAssignment& t) {
    if (n < 0) throw std::invalid_argument("schur: negative index");
    return schur_list(n, t).back();
}

/// chi_{a,b} = (1/2) S_a S_b + sum_{j=1}^{b} (-1)^j S_{a+j} S_{b-j} for
/// a > b >= 0, extended antisymmetrically.
inline Poly chi_from_schur(long a, long b, const std::vector<Poly>& s) {
    if (a < 0 || b < 0) throw std::invalid_argument("chi: negative index");
    if (a == b) return Poly(Var::z);
    if (a < b) return -chi_from_schur(b, a, s);
    Poly r = Scalar(1, 2) * (s[static_cast<std::size_t>(a)] * s[static_cast<std::size_t>(b)]);
    for (long j = 1; j <= b; ++j) {
        Poly term = s[static_cast<std::size_t>(a + j)] * s[static_cast<std::size_t>(b - j)];
        r = (j % 2 != 0) ? r - term : r + term;
    }
    return r;
}

inline Poly chi(long a, long b, const TimesAssignment& t) {
    return chi_from_schur(a, b, schur_list(a + std::max(b, 0l) + 1, t));
}

// -- mu sequences and the c recursion -----------------------------------------

/// The index sequence selecting tau = q_n: case 1 holds n = 2m, case 2
/// n = 2m-1, case 3 n = -2m, case 4 n = -(2m-1).
inline std::vector<long> mu_sequence(int case_id, long m) {
    if (m < 1) throw std::invalid_argument("mu_sequence: m >= 1 required");
    std::vector<long> mu;
    switch (case_id) {
        case 1:
            for (long v = 6 * m - 2; v >= 1; v -= 3) mu.push_back(v);
            break;
        case 2:
            for (long v = 6 * m - 5; v >= 1; v -= 3) mu.push_back(v);
            mu.push_back(0);
            break;
        case 3:
            for (long v = 6 * m - 1; v >= 2; v -= 3) mu.push_back(v);
            break;
        case 4:
            for (long v = 6 * m - 4; v >= 2; v -= 3) mu.push_back(v);
            mu.push_back(0);
            break;
        default:
            throw std::invalid_argument("mu_sequence: case must be 1..4");
    }
    if (mu.size() != static_cast<std::size_t>(2 * m))
        throw std::logic_error("mu_sequence: length law violated");
    return mu;
}

/// Numeric Schur polynomial S_j(t_1, ..., t_j) over scalars.
inline Scalar schur_numeric(long n, const std::vector<Scalar>& times) {
    std::vector<Scalar> s = {Scalar(1)};
    for (long k = 1; k <= n; ++k) {
        Scalar acc(0);
        for (long i = 1; i <= k; ++i) {
            Scalar ti = static_cast<std::size_t>(i) <= times.size()
                            ? times[static_cast<std::size_t>(i - 1)]
                            : Scalar(0);
            acc += Scalar(i) * ti * s[static_cast<std::size_t>(k - i)];
        }
        s.push_back(acc / Scalar(k));
    }
    return s.back();
}

/// Fills the parameter sequence c_1..c_N (N = mu_1 + mu_2): odd entries and
/// multiples of three vanish, the case-dependent substituted entries follow
/// c_{2j} = -1/2 S_j(2c_2, ..., 2c_{2j-2}, 0), and the remaining even
/// entries are the free parameters (all of which must be supplied).
inline std::map<long, Scalar> c_fill(int case_id, long m,
                                     const std::map<long, Scalar>& free_c) {
    std::vector<long> mu = mu_sequence(case_id, m);
    long n = mu[0] + mu[1];
    std::vector<long> substituted;
    long last = case_id == 1   ? 12 * m - 10
                : case_id == 2 ? 12 * m - 16
                : case_id == 3 ? 12 * m - 8
                               : 12 * m - 14;
    for (long v = (case_id <= 2 ? 8 : 4); v <= last; v += 6) substituted.push_back(v);

    std::map<long, Scalar> c;
    for (long i = 1; i <= n; ++i) {
        if (i % 2 != 0 || i % 3 == 0) {
            c[i] = Scalar(0);
            continue;
        }
        if ((case_id == 1 || case_id == 2) && i == 2) {
            c[i] = Scalar(0);
            continue;
        }
        bool is_sub = false;
        for (long v : substituted) is_sub = is_sub || v == i;
        if (is_sub) {
            long j = i / 2;
            std::vector<Scalar> args;  // (2c_2, 2c_4, ..., 2c_{2j-2}, 0)
            for (long p = 1; p < j; ++p) args.push_back(Scalar(2) * c.at(2 * p));
            args.push_back(Scalar(0));
            c[i] = Scalar(-1, 2) * schur_numeric(j, args);
        } else {
            auto it = free_c.find(i);
            if (it == free_c.end())
                throw std::invalid_argument("c_fill: missing free parameter c_" +
                                            std::to_string(i));
            c[i] = it->second;
        }
    }
    return c;
}

/// Free parameter indices of c_fill for the given case (in increasing order).
inline std::vector<long> c_free_indices(int case_id, long m) {
    std::vector<long> mu = mu_sequence(case_id, m);
    long n = mu[0] + mu[1];
    long last = case_id == 1   ? 12 * m - 10
                : case_id == 2 ? 12 * m - 16
                : case_id == 3 ? 12 * m - 8
                               : 12 * m - 14;
    std::vector<long> out;
    for (long i = 2; i <= n; i += 2) {
        if (i % 3 == 0) continue;
        if ((case_id == 1 || case_id == 2) && i == 2) continue;
        bool sub = i >= (case_id <= 2 ? 8 : 4) && i <= last && (i - (case_id <= 2 ? 8 : 4)) % 6 == 0;
        if (!sub) out.push_back(i);
    }
    return out;
}

namespace skdetail {

inline std::pair<int, long> case_of(long n) {
    if (n == 0) throw std::invalid_argument("sk_tau: index must be nonzero");
    if (n > 0) return n % 2 == 0 ? std::make_pair(1, n / 2) : std::make_pair(2, (n + 1) / 2);
    long an = -n;
    return an % 2 == 0 ? std::make_pair(3, an / 2) : std::make_pair(4, (an + 1) / 2);
}

}  // namespace skdetail

/// Polynomial Sawada-Kotera tau-function q_n as the Pfaffian of the
/// chi-matrix over the case's mu-sequence, normalized monic in z. The
/// construction also exposes the chi-matrix for external Pf^2 = det checks.
inline Matrix<Poly> sk_chi_matrix(long n, const TimesAssignment& t,
                                  const std::map<long, Scalar>& free_c) {
    if (t.reduction != TimesAssignment::Reduction::sk)
        throw std::invalid_argument("sk_tau: Sawada-Kotera times required");
    auto [case_id, m] = skdetail::case_of(n);
    std::vector<long> mu = mu_sequence(case_id, m);
    std::map<long, Scalar> c = c_fill(case_id, m, free_c);
    std::vector<Poly> s = schur_list(mu[0] + mu[1] + 1, t, c);
    std::size_t dim = mu.size();
    Matrix<Poly> x(dim, std::vector<Poly>(dim, Poly(Var::z)));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            x[i][j] = chi_from_schur(mu[i], mu[j], s);
            x[j][i] = -x[i][j];
        }
    return x;
}

inline Poly sk_tau(long n, const TimesAssignment& t, const std::map<long, Scalar>& free_c) {
    Poly pf = fraction_free_pfaffian(sk_chi_matrix(n, t, free_c));
    if (pf.is_zero()) throw std::logic_error("sk_tau: vanishing Pfaffian");
    Poly tau = pf.monic();
    // degree cross-check against the chain law
    DegreePair d = lambda2_degrees(n);
    if (tau.degree() != d.m) throw std::logic_error("sk_tau: degree law violated");
    return tau;
}

/// Adler-Moser polynomial in KdV times: the normalization factor
/// 3^{n-1} 5^{n-2} ... (2n-1) times W[S_1, S_3, ..., S_{2n-1}], monic.
inline Poly am_in_times(long n, const TimesAssignment& t) {
    if (t.reduction != TimesAssignment::Reduction::kdv)
        throw std::invalid_argument("am_in_times: KdV times required");
    if (n < 0) throw std::invalid_argument("am_in_times: negative index");
    if (n == 0) return Poly(Var::z, Scalar(1));
    std::vector<Poly> s = schur_list(2 * n - 1, t);
    Matrix<Poly> w(static_cast<std::size_t>(n), std::vector<Poly>(static_cast<std::size_t>(n), Poly(Var::z)));
    for (long j = 0; j < n; ++j) {
        Poly d = s[static_cast<std::size_t>(2 * j + 1)];
        for (long r = 0; r < n; ++r) {
            w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = d;
            d = d.deriv_z();
        }
    }
    Poly det = fraction_free_det(w);
    Scalar norm(1);
    for (long j = 1; j < n; ++j) norm = norm * Scalar(2 * j + 1).pow(n - j);
    Poly p = norm * det;
    if (p.is_zero() || !p.leading().is_one() || p.degree() != adler_moser_degree(n))
        throw std::logic_error("am_in_times: normalization or degree law violated");
    return p;
}

// -- normal-form parameter extraction ------------------------------------------

/// Reads the (sr)-normal-form parameter of a chain member: the last free
/// parameter sits at the designated coefficient slot (z^{deg of the previous
/// member of the same letter}).
inline Scalar extract_lambda2_s(const Poly& q, long n) {
    long prev = n > 0 ? n - 1 : n + 1;
    DegreePair dn = lambda2_degrees(n), dp = lambda2_degrees(prev);
    if (q.degree() != dn.m) throw std::invalid_argument("extract: degree mismatch with family law");
    return q.coeff(dp.m);
}

inline Scalar extract_lambda2_r(const Poly& p, long n) {
    long prev = n > 0 ? n - 1 : n + 1;
    DegreePair dn = lambda2_degrees(n), dp = lambda2_degrees(prev);
    if (p.degree() != dn.l) throw std::invalid_argument("extract: degree mismatch with family law");
    return p.coeff(dp.l);
}

/// s_{n-1} from the Adler-Moser member P_n.
inline Scalar extract_am_s(const Poly& p, long n) {
    if (p.degree() != adler_moser_degree(n))
        throw std::invalid_argument("extract: degree mismatch with family law");
    return p.coeff(adler_moser_degree(n - 2));
}

// -- Sato intertwiners -----------------------------------------------------------

namespace skdetail {

/// Laurent polynomial in the spectral parameter k with z-polynomial
/// coefficients; the little ring the Sato shift expansion lives in.
struct KSeries {
    std::map<long, Poly> c;

    static KSeries zero() { return {}; }
    static KSeries constant(const Scalar& v) {
        KSeries s;
        if (!v.is_zero()) s.c[0] = Poly(Var::z, v);
        return s;
    }
    void set(long e, const Poly& p) {
        if (p.is_zero())
            c.erase(e);
        else
            c[e] = p;
    }
    bool is_zero() const { return c.empty(); }

    friend KSeries operator+(const KSeries& a, const KSeries& b) {
        KSeries r = a;
        for (auto& [e, p] : b.c) {
            auto it = r.c.find(e);
            if (it == r.c.end())
                r.c.emplace(e, p);
            else {
                it->second += p;
                if (it->second.is_zero()) r.c.erase(it);
            }
        }
        return r;
    }
    friend KSeries operator-(const KSeries& a, const KSeries& b) {
        return a + (Scalar(-1) * b);
    }
    friend KSeries operator*(const Scalar& s, const KSeries& a) {
        KSeries r;
        if (s.is_zero()) return r;
        for (auto& [e, p] : a.c) r.c.emplace(e, s * p);
        return r;
    }
    friend KSeries operator*(const KSeries& a, const KSeries& b) {
        KSeries r;
        for (auto& [ea, pa] : a.c)
            for (auto& [eb, pb] : b.c) {
                Poly prod = pa * pb;
                auto it = r.c.find(ea + eb);
                if (it == r.c.end())
                    r.c.emplace(ea + eb, prod);
                else {
                    it->second += prod;
                    if (it->second.is_zero()) r.c.erase(it);
                }
            }
        return r;
    }
};

// Schur polynomials at the Sato-shifted times t_i + c_i - w/(i k^i) on the
// hierarchy's own odd times, w = 1 (KdV) or 2 (SK).
inline std::vector<KSeries> kseries_schur_list(long nmax, const TimesAssignment& t,
                                               const std::map<long, Scalar>& shift_c,
                                               bool sk_shift) {
    std::vector<KSeries> s;
    s.push_back(KSeries::constant(Scalar(1)));
    for (long n = 1; n <= nmax; ++n) {
        KSeries acc;
        for (long i = 1; i <= n; ++i) {
            KSeries ti;
            if (i == 1)
                ti.set(0, Poly::variable(Var::z));
            else {
                Scalar base = t.at(i);
                auto ci = shift_c.find(i);
                if (ci != shift_c.end()) base += ci->second;
                if (!base.is_zero()) ti.set(0, Poly(Var::z, base));
            }
            bool shifted = i == 1 || (i % 2 != 0 && (!sk_shift || i % 3 != 0));
            if (shifted) {
                Scalar w = sk_shift ? Scalar(2) : Scalar(1);
                ti.set(-i, Poly(Var::z, -(w / Scalar(i))));
            }
            if (ti.is_zero()) continue;
            acc = acc + Scalar(i) * (ti * s[static_cast<std::size_t>(n - i)]);
        }
        s.push_back(Scalar(n).inv() * acc);
    }
    return s;
}

inline KSeries kseries_chi(long a, long b, const std::vector<KSeries>& s) {
    if (a == b) return KSeries::zero();
    if (a < b) return Scalar(-1) * kseries_chi(b, a, s);
    KSeries r = Scalar(1, 2) * (s[static_cast<std::size_t>(a)] * s[static_cast<std::size_t>(b)]);
    for (long j = 1; j <= b; ++j) {
        KSeries term = s[static_cast<std::size_t>(a + j)] * s[static_cast<std::size_t>(b - j)];
        r = (j % 2 != 0) ? r - term : r + term;
    }
    return r;
}

inline KSeries kseries_pfaffian(const std::vector<std::vector<KSeries>>& m) {
    std::size_t n = m.size();
    if (n == 0) return KSeries::constant(Scalar(1));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    auto rec = [&](auto&& self, std::vector<std::size_t> is) -> KSeries {
        if (is.empty()) return KSeries::constant(Scalar(1));
        KSeries r;
        for (std::size_t p = 1; p < is.size(); ++p) {
            std::vector<std::size_t> rest;
            for (std::size_t q = 1; q < is.size(); ++q)
                if (q != p) rest.push_back(is[q]);
            KSeries term = m[is[0]][is[p]] * self(self, rest);
            r = (p % 2 != 0) ? r + term : r - term;
        }
        return r;
    };
    return rec(rec, idx);
}

inline KSeries kseries_det(std::vector<std::vector<KSeries>> m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    KSeries r;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<KSeries>> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<KSeries> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(row);
        }
        KSeries term = m[0][j] * kseries_det(sub);
        r = (j % 2 == 0) ? r + term : r - term;
    }
    return r;
}

}  // namespace skdetail

enum class SatoFamily { kdv, sk };

/// The intertwining operator T_n with L_n T_n = T_n L_0 from the Sato
/// formula: expand tau(t - [k])/tau(t) k^order as a polynomial in k with
/// rational coefficients in z and substitute k -> d/dz to the right of the
/// coefficients. Negative powers of k must cancel and the intertwining
/// identity is verified exactly before returning.
inline DiffOp sato_intertwiner(SatoFamily family, long n, const TimesAssignment& t,
                               const std::map<long, Scalar>& free_c = {}) {
    using namespace skdetail;
    Poly tau_static(Var::z);
    KSeries shifted;
    long order = 0;
    if (family == SatoFamily::kdv) {
        if (n < 1) throw std::invalid_argument("sato_intertwiner: n >= 1 for KdV");
        order = n;
        // static tau: the unscaled Wronskian of Schur polynomials
        std::vector<Poly> s = schur_list(2 * n - 1, t);
        Matrix<Poly> w(static_cast<std::size_t>(n),
                       std::vector<Poly>(static_cast<std::size_t>(n), Poly(Var::z)));
        for (long j = 0; j < n; ++j) {
            Poly d = s[static_cast<std::size_t>(2 * j + 1)];
            for (long r = 0; r < n; ++r) {
                w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = d;
                d = d.deriv_z();
            }
        }
        tau_static = fraction_free_det(w);
        // shifted tau: same Wronskian over the k-series ring, with
        // d/dz S_j = S_{j-1}
        std::vector<KSeries> ks = kseries_schur_list(2 * n - 1, t, {}, false);
        std::vector<std::vector<KSeries>> wk(static_cast<std::size_t>(n),
                                             std::vector<KSeries>(static_cast<std::size_t>(n)));
        for (long j = 0; j < n; ++j)
            for (long r = 0; r < n; ++r) {
                long idx = 2 * j + 1 - r;
                wk[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                    idx >= 0 ? ks[static_cast<std::size_t>(idx)] : KSeries::zero();
            }
        shifted = kseries_det(wk);
    } else {
        auto [case_id, m] = case_of(n);
        order = n > 0 ? 3 * n - 2 : -3 * n - 1;
        std::vector<long> mu = mu_sequence(case_id, m);
        std::map<long, Scalar> c = c_fill(case_id, m, free_c);
        std::vector<Poly> s = schur_list(mu[0] + mu[1] + 1, t, c);
        std::size_t dim = mu.size();
        Matrix<Poly> x(dim, std::vector<Poly>(dim, Poly(Var::z)));
        std::vector<std::vector<KSeries>> xk(dim, std::vector<KSeries>(dim));
        std::vector<KSeries> ks = kseries_schur_list(mu[0] + mu[1] + 1, t, c, true);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                if (i == j) continue;
                x[i][j] = chi_from_schur(mu[i], mu[j], s);
                xk[i][j] = kseries_chi(mu[i], mu[j], ks);
            }
        tau_static = fraction_free_pfaffian(x);
        shifted = kseries_pfaffian(xk);
    }
    if (tau_static.is_zero()) throw std::logic_error("sato_intertwiner: vanishing tau");

    DiffOp tt(Var::z);
    for (auto& [e, p] : shifted.c) {
        long ord = e + order;  // multiplied by k^order
        if (ord < 0) {
            if (!p.is_zero())
                throw std::logic_error("sato_intertwiner: negative powers of k do not cancel");
            continue;
        }
        tt.set(static_cast<int>(ord), RationalFunction(p, tau_static));
    }

    // exact intertwining check against the hierarchy operators
    QuasiFactored tau_q(tau_static);
    DiffOp l0(Var::z), ln(Var::z);
    RationalFunction logdd = tau_q.log_derivative().deriv_z();
    if (family == SatoFamily::kdv) {
        l0 = DiffOp::derivative(Var::z, 2);
        ln = l0;
        ln.set(0, Scalar(2) * logdd);
    } else {
        l0 = DiffOp::derivative(Var::z, 3);
        ln = l0;
        ln.set(1, Scalar(6) * logdd);
    }
    if (!intertwine_check(ln, tt, l0))
        throw std::logic_error("sato_intertwiner: intertwining identity failed");
    return tt;
}

}  // namespace vortexlab
