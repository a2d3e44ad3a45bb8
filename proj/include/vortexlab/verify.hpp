#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "vortexlab/quasifactored.hpp"

namespace vortexlab {

// Numeric layer. The engine works at a fixed 128-bit binary mantissa;
// requested precisions up to that width are accepted and recorded in the
// configuration documents.
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::backends::digit_base_2>>;
using Complex =
    boost::multiprecision::cpp_complex<128, boost::multiprecision::backends::digit_base_2>;

inline constexpr int kEnginePrecisionBits = 128;

inline Real to_real(const mpq_class& q) {
    return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}
inline Complex to_complex(const Scalar& s) { return Complex(to_real(s.real()), to_real(s.imag())); }
inline Real pi_value() { return boost::math::constants::pi<Real>(); }

enum class Geometry { plane, cylinder };

struct Vortex {
    Complex z;
    Scalar q;  // strength stays exact
};

struct VortexConfiguration {
    Geometry geometry = Geometry::plane;
    Complex k{0, 0};
    int precision_bits = kEnginePrecisionBits;
    std::vector<Vortex> vortices;
    std::string provenance;
};

// -- polynomial roots ------------------------------------------------------------

struct RootResult {
    std::vector<Complex> roots;
    bool converged = true;
    int iterations = 0;
};

namespace numdetail {

inline Complex eval_dense(const std::vector<Complex>& coeff, const Complex& x) {
    Complex acc(0, 0);
    for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * x + coeff[i];
    return acc;
}

inline RootResult aberth_core(const std::vector<Complex>& coeff, const Real& tol, int maxit) {
    std::size_t n = coeff.size() - 1;
    RootResult out;
    if (n == 0) return out;
    std::vector<Complex> deriv(n);
    for (std::size_t i = 1; i <= n; ++i) deriv[i - 1] = Real(static_cast<unsigned>(i)) * coeff[i];

    // initial points on a perturbed circle at the Cauchy bound
    Real radius = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Real b = abs(coeff[i] / coeff[n]);
        if (b > radius) radius = b;
    }
    radius = 1 + radius;
    Real pi = pi_value();
    std::vector<Complex>& z = out.roots;
    z.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Real theta = (2 * pi * Real(static_cast<unsigned>(i))) / Real(static_cast<unsigned>(n)) +
                     Real("0.397");
        z[i] = radius * Complex(cos(theta), sin(theta));
    }

    const Real guard = Real("1e-60");
    for (int it = 0; it < maxit; ++it) {
        out.iterations = it;
        // scale-free residual |p(z_i)| / (|lead| prod |z_i - z_j|)
        Real worst = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Real denom = abs(coeff[n]);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                Real d = abs(z[i] - z[j]);
                denom *= (d > guard ? d : guard);
            }
            Real r = abs(eval_dense(coeff, z[i])) / denom;
            if (r > worst) worst = r;
        }
        if (worst < tol) return out;
        for (std::size_t i = 0; i < n; ++i) {
            Complex p = eval_dense(coeff, z[i]);
            Complex dp = eval_dense(deriv, z[i]);
            if (abs(dp) == 0) {
                z[i] += Complex(Real("1e-3"), Real("2e-3"));
                continue;
            }
            Complex w = p / dp;
            Complex s(0, 0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) s += Complex(1, 0) / (z[i] - z[j]);
            z[i] -= w / (Complex(1, 0) - w * s);
        }
    }
    out.converged = false;
    return out;
}

inline std::vector<Complex> dense_coefficients(const Poly& p) {
    std::vector<Complex> c(static_cast<std::size_t>(p.degree()) + 1, Complex(0, 0));
    for (auto& [e, v] : p.terms()) c[static_cast<std::size_t>(e)] = to_complex(v);
    return c;
}

}  // namespace numdetail

/// All roots of p by simultaneous (Aberth-style) iteration on the exact
/// square-free part, so the numeric stage only ever sees simple roots.
/// xi-polynomials are solved in eta = xi^2 and mapped back to the strip
/// 0 <= Re z < pi by the fixed logarithm branch. Non-convergence within the
/// iteration cap is reported with the partial results.
inline RootResult aberth_roots(const Poly& p, int precision_bits = kEnginePrecisionBits,
                               const Real& tol = Real("1e-30"), int maxit = 400) {
    if (precision_bits > kEnginePrecisionBits)
        throw std::invalid_argument("aberth_roots: engine precision is 128 bits");
    if (p.is_zero() || p.is_constant())
        throw std::invalid_argument("aberth_roots: positive degree required");
    Poly sq = squarefree_part(p);
    if (p.var() == Var::z) {
        if (sq.is_constant()) throw std::logic_error("aberth_roots: lost the roots");
        return numdetail::aberth_core(numdetail::dense_coefficients(sq), tol, maxit);
    }
    if (p.var() == Var::xi) {
        Poly sh = squarefree_part(p);
        Poly eta = xi_to_eta(sh.shifted(-sh.low_exponent()));  // throws on odd parity
        if (eta.is_constant())
            throw std::invalid_argument("aberth_roots: xi-polynomial has no strip roots");
        RootResult r = numdetail::aberth_core(numdetail::dense_coefficients(eta), tol, maxit);
        Real pi = pi_value();
        for (auto& root : r.roots) {
            // z = -(i/2) Log eta with arg in [0, 2 pi), i.e. Re z in [0, pi)
            Real theta = arg(root);
            if (theta < 0) theta += 2 * pi;
            root = Complex(theta / 2, -log(abs(root)) / 2);
        }
        return r;
    }
    throw std::invalid_argument("aberth_roots: z or xi polynomials only");
}

// -- configuration extraction ------------------------------------------------------

/// One vortex per root of every base, with the base's exponent as strength.
/// In the w-ring the base w contributes the origin with half its exponent
/// (w^e = z^{e/2}); on the cylinder the plane-wave rate plus i times the
/// total charge is the background k of the stationarity condition.
inline VortexConfiguration config_from_eigenfunction(const QuasiFactored& f, Geometry geometry,
                                                     int precision_bits = kEnginePrecisionBits,
                                                     const Real& tol = Real("1e-30")) {
    if (f.is_zero()) throw std::invalid_argument("config_from_eigenfunction: zero function");
    VortexConfiguration cfg;
    cfg.geometry = geometry;
    cfg.precision_bits = precision_bits;

    Scalar total_q(0);
    for (const auto& fp : f.factors()) {
        const Poly& base = fp.base;
        if (geometry == Geometry::plane) {
            if (base.var() == Var::xi)
                throw std::invalid_argument("plane configuration from a xi-ring function");
            if (base.var() == Var::w) {
                if (base == Poly::variable(Var::w)) {
                    cfg.vortices.push_back({Complex(0, 0), fp.exponent * Scalar(1, 2)});
                    total_q += fp.exponent * Scalar(1, 2);
                    continue;
                }
                Poly zbase = w_to_z(base);  // throws on odd parity
                RootResult r = aberth_roots(zbase, precision_bits, tol);
                if (!r.converged) throw std::runtime_error("config: root finder did not converge");
                for (auto& root : r.roots) {
                    cfg.vortices.push_back({root, fp.exponent});
                    total_q += fp.exponent;
                }
                continue;
            }
            if (base == Poly::variable(Var::z)) {
                cfg.vortices.push_back({Complex(0, 0), fp.exponent});
                total_q += fp.exponent;
                continue;
            }
            RootResult r = aberth_roots(base, precision_bits, tol);
            if (!r.converged) throw std::runtime_error("config: root finder did not converge");
            for (auto& root : r.roots) {
                cfg.vortices.push_back({root, fp.exponent});
                total_q += fp.exponent;
            }
        } else {
            if (base.var() != Var::xi)
                throw std::invalid_argument("cylinder configuration needs a xi-ring function");
            RootResult r = aberth_roots(base, precision_bits, tol);
            if (!r.converged) throw std::runtime_error("config: root finder did not converge");
            for (auto& root : r.roots) {
                cfg.vortices.push_back({root, fp.exponent});
                total_q += fp.exponent;
            }
        }
    }
    if (geometry == Geometry::cylinder)
        cfg.k = to_complex(f.rate() + Scalar::i() * total_q);
    else
        cfg.k = to_complex(f.rate());

    // pairwise-distinct positions (separation in the cylinder metric there)
    Real minsep = Real("1e-29") * 10;
    for (std::size_t i = 0; i < cfg.vortices.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.vortices.size(); ++j) {
            Real d = geometry == Geometry::plane
                         ? abs(cfg.vortices[i].z - cfg.vortices[j].z)
                         : abs(sin(cfg.vortices[i].z - cfg.vortices[j].z));
            if (d < minsep)
                throw std::domain_error("config_from_eigenfunction: coincident positions");
        }
    return cfg;
}

// -- residuals --------------------------------------------------------------------

/// max_i |k + sum_{j != i} Q_j / (z_i - z_j)| (plane).
inline Real residual_stationary(const VortexConfiguration& c, const Complex& k) {
    if (c.geometry != Geometry::plane)
        throw std::invalid_argument("residual_stationary: plane geometry required");
    Real worst = 0;
    for (std::size_t i = 0; i < c.vortices.size(); ++i) {
        Complex acc = k;
        for (std::size_t j = 0; j < c.vortices.size(); ++j) {
            if (j == i) continue;
            Complex d = c.vortices[i].z - c.vortices[j].z;
            if (abs(d) == 0) throw std::domain_error("residual: coincident positions");
            acc += to_complex(c.vortices[j].q) / d;
        }
        if (abs(acc) > worst) worst = abs(acc);
    }
    return worst;
}

inline Real residual_static(const VortexConfiguration& c) {
    return residual_stationary(c, Complex(0, 0));
}
inline Real residual_translating(const VortexConfiguration& c, const Complex& k) {
    return residual_stationary(c, k);
}

/// max_i |k + sum_{j != i} Q_j cot(z_i - z_j)| (cylinder).
inline Real residual_street(const VortexConfiguration& c, const Complex& k) {
    if (c.geometry != Geometry::cylinder)
        throw std::invalid_argument("residual_street: cylinder geometry required");
    Real worst = 0;
    for (std::size_t i = 0; i < c.vortices.size(); ++i) {
        Complex acc = k;
        for (std::size_t j = 0; j < c.vortices.size(); ++j) {
            if (j == i) continue;
            Complex d = c.vortices[i].z - c.vortices[j].z;
            Complex s = sin(d);
            if (abs(s) == 0) throw std::domain_error("residual: coincident positions mod pi");
            acc += to_complex(c.vortices[j].q) * cos(d) / s;
        }
        if (abs(acc) > worst) worst = abs(acc);
    }
    return worst;
}

/// Locus condition per species: max_i |sum_{j != i} (z_i - z_j)^{-3}| on the
/// plane, max_i |sum cos/sin^3| on the cylinder.
inline Real residual_locus(const std::vector<Complex>& zs, Geometry geometry) {
    Real worst = 0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        Complex acc(0, 0);
        for (std::size_t j = 0; j < zs.size(); ++j) {
            if (j == i) continue;
            Complex d = zs[i] - zs[j];
            if (geometry == Geometry::plane) {
                if (abs(d) == 0) throw std::domain_error("residual_locus: coincident positions");
                acc += Complex(1, 0) / (d * d * d);
            } else {
                Complex s = sin(d);
                if (abs(s) == 0) throw std::domain_error("residual_locus: coincident positions");
                acc += cos(d) / (s * s * s);
            }
        }
        if (abs(acc) > worst) worst = abs(acc);
    }
    return worst;
}

/// Exact scaling and neutrality sums: sum_{i<j} Q_i Q_j and sum_i Q_i.
struct InvariantSums {
    Scalar scaling_sum, neutrality_sum;
};

inline InvariantSums invariant_checks(const VortexConfiguration& c) {
    Scalar lin(0), quad(0);
    for (auto& v : c.vortices) lin += v.q;
    Scalar sq(0);
    for (auto& v : c.vortices) sq += v.q * v.q;
    quad = (lin * lin - sq) * Scalar(1, 2);
    return {quad, lin};
}

/// External-field residual max_i |Phi'(z_i) + sum_{j != i} Q_j/(z_i - z_j)|.
inline Real external_residual(const VortexConfiguration& c, const Poly& phi) {
    if (c.geometry != Geometry::plane)
        throw std::invalid_argument("external_residual: plane geometry required");
    if (phi.var() != Var::z) throw std::invalid_argument("external_residual: z-ring potential");
    Poly dphi = phi.deriv_z();
    std::vector<Complex> coeff = dphi.is_zero()
                                     ? std::vector<Complex>{Complex(0, 0)}
                                     : numdetail::dense_coefficients(dphi);
    Real worst = 0;
    for (std::size_t i = 0; i < c.vortices.size(); ++i) {
        Complex acc = numdetail::eval_dense(coeff, c.vortices[i].z);
        for (std::size_t j = 0; j < c.vortices.size(); ++j) {
            if (j == i) continue;
            Complex d = c.vortices[i].z - c.vortices[j].z;
            if (abs(d) == 0) throw std::domain_error("external_residual: coincident positions");
            acc += to_complex(c.vortices[j].q) / d;
        }
        if (abs(acc) > worst) worst = abs(acc);
    }
    return worst;
}

// -- root dynamics ------------------------------------------------------------------

/// dz_i/dt = 2 sum_{j != i} Q_j / (z_i - z_j).
inline std::vector<Complex> cm_rhs(const VortexConfiguration& c) {
    if (c.geometry != Geometry::plane) throw std::invalid_argument("cm_rhs: plane geometry only");
    std::vector<Complex> v(c.vortices.size(), Complex(0, 0));
    for (std::size_t i = 0; i < c.vortices.size(); ++i)
        for (std::size_t j = 0; j < c.vortices.size(); ++j) {
            if (j == i) continue;
            Complex d = c.vortices[i].z - c.vortices[j].z;
            if (abs(d) == 0) throw std::domain_error("cm_rhs: coincident positions");
            v[i] += Real(2) * to_complex(c.vortices[j].q) / d;
        }
    return v;
}

/// Classical 4th-order one-step integration with fixed dt. Aborts via the
/// collision guard when the minimum separation drops under
/// 10 dt (max speed); the paper's dynamics is singular at collisions.
struct CmTrajectory {
    std::vector<std::vector<Complex>> positions;  // one entry per accepted step
    bool collided = false;
    long steps_done = 0;
};

inline CmTrajectory cm_integrate(const VortexConfiguration& c0, const Real& dt, long steps) {
    CmTrajectory out;
    VortexConfiguration c = c0;
    auto snapshot = [&]() {
        std::vector<Complex> zs;
        for (auto& v : c.vortices) zs.push_back(v.z);
        return zs;
    };
    out.positions.push_back(snapshot());
    auto rhs_at = [&](const std::vector<Complex>& zs) {
        VortexConfiguration tmp = c;
        for (std::size_t i = 0; i < zs.size(); ++i) tmp.vortices[i].z = zs[i];
        return cm_rhs(tmp);
    };
    for (long s = 0; s < steps; ++s) {
        std::vector<Complex> z0 = snapshot();
        std::vector<Complex> k1 = rhs_at(z0);
        Real maxspeed = 0, minsep = -1;
        for (auto& v : k1)
            if (abs(v) > maxspeed) maxspeed = abs(v);
        for (std::size_t i = 0; i < z0.size(); ++i)
            for (std::size_t j = i + 1; j < z0.size(); ++j) {
                Real d = abs(z0[i] - z0[j]);
                if (minsep < 0 || d < minsep) minsep = d;
            }
        if (minsep >= 0 && minsep < 10 * dt * maxspeed) {
            out.collided = true;
            return out;
        }
        auto advance = [&](const std::vector<Complex>& base, const std::vector<Complex>& dir,
                           const Real& h) {
            std::vector<Complex> r = base;
            for (std::size_t i = 0; i < r.size(); ++i) r[i] += h * dir[i];
            return r;
        };
        std::vector<Complex> k2 = rhs_at(advance(z0, k1, dt / 2));
        std::vector<Complex> k3 = rhs_at(advance(z0, k2, dt / 2));
        std::vector<Complex> k4 = rhs_at(advance(z0, k3, dt));
        for (std::size_t i = 0; i < z0.size(); ++i)
            c.vortices[i].z =
                z0[i] + dt / 6 * (k1[i] + Real(2) * k2[i] + Real(2) * k3[i] + k4[i]);
        out.positions.push_back(snapshot());
        out.steps_done = s + 1;
    }
    return out;
}

// -- numeric evaluation of quasi-factored functions -----------------------------------

/// Value of f at the plane point z, principal branches for fractional
/// powers; exact up to the constants dropped by fractional-power
/// normalization. The ring variable is derived from z per tag.
inline Complex eval_at_z(const QuasiFactored& f, const Complex& z) {
    if (f.is_zero()) return Complex(0, 0);
    Complex x;
    switch (f.var()) {
        case Var::z: x = z; break;
        case Var::w: x = sqrt(z); break;
        case Var::xi: x = exp(Complex(0, 1) * z); break;
    }
    auto eval_poly = [&](const Poly& p) {
        Complex acc(0, 0);
        if (p.is_zero()) return acc;
        long lo = p.low_exponent(), hi = p.degree();
        for (long e = hi; e >= lo; --e) {
            acc *= x;
            Scalar cc = p.coeff(e);
            if (!cc.is_zero()) acc += to_complex(cc);
        }
        if (lo != 0) acc *= pow(x, static_cast<int>(lo));
        return acc;
    };
    Complex val = to_complex(f.coeff());
    for (const auto& fp : f.factors()) {
        Complex b = eval_poly(fp.base);
        val *= exp(to_complex(fp.exponent) * log(b));
    }
    if (!f.phi().is_zero()) val *= exp(eval_poly(f.phi()));
    if (!f.rate().is_zero()) val *= exp(to_complex(f.rate()) * z);
    return val;
}

}  // namespace vortexlab
