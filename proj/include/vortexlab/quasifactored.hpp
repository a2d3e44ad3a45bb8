#pragma once

#include <algorithm>
#include <vector>

#include "vortexlab/linalg.hpp"
#include "vortexlab/rational_function.hpp"

namespace vortexlab {

inline int scalar_cmp(const Scalar& a, const Scalar& b) {
    int c = cmp(a.real(), b.real());
    if (c != 0) return c;
    return cmp(a.imag(), b.imag());
}

inline int poly_cmp(const Poly& a, const Poly& b) {
    if (a.var() != b.var()) return a.var() < b.var() ? -1 : 1;
    auto ia = a.terms().begin(), ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        int c = scalar_cmp(ia->second, ib->second);
        if (c != 0) return c;
    }
    if (ia != a.terms().end()) return 1;
    if (ib != b.terms().end()) return -1;
    return 0;
}

/// One factor base^exponent. Bases are monic, square-free, pairwise coprime
/// across a QuasiFactored, and carry rational (possibly negative or
/// fractional) exponents.
struct FactorPower {
    Poly base;
    Scalar exponent;
};

/// Eigenfunction in quasi-factored form:
///
///   coeff * prod_i base_i(x)^{e_i} * exp(Phi(z)) * exp(k z)
///
/// where x is the ring variable of the tag. This is the universal carrier
/// for Darboux transforms and Wronskians: its logarithmic derivative is
/// always an exact rational function.
///
/// Normalization performed on construction: constant bases fold into coeff,
/// square-free decomposition splits multiplicities into exponents, gcd
/// refinement makes bases pairwise coprime, monomial units in the xi-ring
/// are absorbed into the plane-wave rate (xi^m = e^{imz}). A constant raised
/// to a non-integer exponent has no exact Gaussian-rational value; such
/// constants are dropped, so values with fractional charges are represented
/// up to a nonzero constant multiple.
class QuasiFactored {
public:
    explicit QuasiFactored(Var v = Var::z)
        : var_(v), coeff_(1), phi_(v), rate_(0) {}

    static QuasiFactored zero(Var v) {
        QuasiFactored f(v);
        f.coeff_ = Scalar(0);
        return f;
    }
    static QuasiFactored constant(Var v, const Scalar& c) {
        QuasiFactored f(v);
        f.coeff_ = c;
        return f;
    }
    /// exp(k z), optionally times exp(Phi).
    static QuasiFactored exponential(Var v, const Scalar& k, const Poly& phi = Poly()) {
        QuasiFactored f(v);
        f.rate_ = k;
        f.phi_ = phi.is_zero() ? Poly(v) : phi;
        f.phi_.check_tag(Poly(v));
        return f;
    }
    QuasiFactored(const Poly& base, const Scalar& exponent) : QuasiFactored(base.var()) {
        factors_.push_back({base, exponent});
        normalize_();
    }
    explicit QuasiFactored(const Poly& p) : QuasiFactored(p, Scalar(1)) {}
    QuasiFactored(Var v, std::vector<FactorPower> factors, const Scalar& coeff = Scalar(1),
                  const Poly& phi = Poly(), const Scalar& rate = Scalar(0))
        : var_(v), coeff_(coeff), factors_(std::move(factors)),
          phi_(phi.is_zero() ? Poly(v) : phi), rate_(rate) {
        normalize_();
    }

    Var var() const { return var_; }
    bool is_zero() const { return coeff_.is_zero(); }
    const Scalar& coeff() const { return coeff_; }
    const std::vector<FactorPower>& factors() const { return factors_; }
    const Poly& phi() const { return phi_; }
    const Scalar& rate() const { return rate_; }

    bool is_constant() const {
        return factors_.empty() && phi_.is_zero() && rate_.is_zero();
    }

    /// Semantic equality. Bases are square-free and pairwise coprime but not
    /// factored into irreducibles, so the same function can carry different
    /// base splits; dividing runs the gcd refinement across both operands and
    /// equality reduces to the quotient being the constant 1.
    friend bool operator==(const QuasiFactored& a, const QuasiFactored& b) {
        if (a.var_ != b.var_) return false;
        if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
        QuasiFactored q = a / b;
        return q.is_constant() && q.coeff_.is_one();
    }
    friend bool operator!=(const QuasiFactored& a, const QuasiFactored& b) { return !(a == b); }

    /// Equality up to a nonzero constant multiple.
    bool proportional_to(const QuasiFactored& o) const {
        if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
        if (var_ != o.var_) return false;
        QuasiFactored q = *this / o;
        return q.is_constant();
    }

    /// (log f)' = sum_i e_i b_i'/b_i + Phi' + k, fully reduced. The bases are
    /// square-free and pairwise coprime, so the combined fraction
    ///   (sum_i e_i b_i' prod_{j!=i} b_j + (Phi' + k) prod_j b_j) / prod_j b_j
    /// is already in lowest terms and no gcd pass is needed.
    RationalFunction log_derivative() const {
        if (is_zero()) throw std::domain_error("log derivative of zero");
        Poly den(var_, Scalar(1));
        for (const auto& f : factors_) den *= f.base;
        Poly num = (phi_.deriv_z() + Poly(var_, rate_)) * den;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            Poly t = factors_[i].exponent * factors_[i].base.deriv_z();
            for (std::size_t j = 0; j < factors_.size(); ++j)
                if (j != i) t *= factors_[j].base;
            num += t;
        }
        if (var_ != Var::z) {
            long s = den.low_exponent();
            if (s != 0) {
                den = den.shifted(-s);
                num = num.shifted(-s);
            }
        }
        return RationalFunction::from_reduced(num, den);
    }

    QuasiFactored operator*(const QuasiFactored& o) const {
        check_tag_(o);
        QuasiFactored r(var_);
        r.coeff_ = coeff_ * o.coeff_;
        r.factors_ = factors_;
        r.factors_.insert(r.factors_.end(), o.factors_.begin(), o.factors_.end());
        r.phi_ = phi_ + o.phi_;
        r.rate_ = rate_ + o.rate_;
        r.normalize_();
        return r;
    }
    QuasiFactored operator/(const QuasiFactored& o) const { return *this * o.pow(Scalar(-1)); }

    friend QuasiFactored operator*(const Scalar& s, const QuasiFactored& f) {
        QuasiFactored r = f;
        r.coeff_ = r.coeff_ * s;
        if (r.coeff_.is_zero()) r = zero(f.var_);
        return r;
    }

    /// Multiplication by an exact rational function of the ring variable.
    QuasiFactored times_rational(const RationalFunction& rf) const {
        if (rf.is_zero()) return zero(var_);
        QuasiFactored r = *this;
        r.factors_.push_back({rf.num(), Scalar(1)});
        r.factors_.push_back({rf.den(), Scalar(-1)});
        r.normalize_();
        return r;
    }

    /// Raises to a rational power: exponents and the plane-wave data scale,
    /// integer powers of the constant stay exact.
    QuasiFactored pow(const Scalar& g) const {
        if (!g.is_real()) throw std::invalid_argument("QuasiFactored::pow: real exponents only");
        if (is_zero()) {
            if (g.real() <= 0) throw std::domain_error("zero to non-positive power");
            return *this;
        }
        QuasiFactored r(var_);
        r.coeff_ = g.is_integer() ? coeff_.pow(g.to_long()) : Scalar(1);
        for (const auto& f : factors_) r.factors_.push_back({f.base, f.exponent * g});
        r.phi_ = Poly(var_);
        for (auto& [e, c] : phi_.terms()) r.phi_.set(e, g * c);
        r.rate_ = g * rate_;
        r.normalize_();
        return r;
    }

    QuasiFactored derivative() const {
        if (is_zero()) return *this;
        return times_rational(log_derivative());
    }

    /// Same function with the constant set to 1 (monic bases stay monic).
    QuasiFactored monic_normalized() const {
        if (is_zero()) throw std::domain_error("monic_normalized of zero");
        QuasiFactored r = *this;
        r.coeff_ = Scalar(1);
        return r;
    }

    /// The function as an exact rational function. Requires every exponent
    /// to be an integer and no exponential part.
    RationalFunction to_rational() const {
        if (!phi_.is_zero() || !rate_.is_zero())
            throw std::domain_error("to_rational: exponential part present");
        if (is_zero()) return RationalFunction(var_);
        Poly num(var_, coeff_), den(var_, Scalar(1));
        for (const auto& f : factors_) {
            if (!f.exponent.is_integer())
                throw std::domain_error("to_rational: fractional exponent present");
            long e = f.exponent.to_long();
            if (e > 0)
                num *= f.base.pow(e);
            else
                den *= f.base.pow(-e);
        }
        return RationalFunction(num, den);
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s = coeff_.str();
        for (const auto& f : factors_)
            s += " * (" + f.base.str() + ")^(" + f.exponent.str() + ")";
        if (!phi_.is_zero()) s += " * exp(" + phi_.str() + ")";
        if (!rate_.is_zero()) s += " * exp((" + rate_.str() + ")z)";
        return s;
    }

private:
    void check_tag_(const QuasiFactored& o) const {
        if (var_ != o.var_) throw std::invalid_argument("QuasiFactored tag mismatch");
    }

    void normalize_() {
        if (coeff_.is_zero()) {
            factors_.clear();
            phi_ = Poly(var_);
            rate_ = Scalar(0);
            return;
        }
        // split every base into monic square-free pieces
        std::vector<FactorPower> flat;
        for (auto& f : factors_) {
            if (f.base.is_zero()) throw std::domain_error("zero base in QuasiFactored");
            if (f.exponent.is_zero()) continue;
            SquareFree sf = squarefree_decompose(f.base);
            Scalar unit_c = sf.lead;
            if (sf.unit_exponent != 0) {
                if (var_ == Var::xi) {
                    // xi^m = e^{imz}: fold into the plane-wave rate
                    rate_ += Scalar(mpq_class(0), mpq_class(sf.unit_exponent)) * f.exponent;
                } else {
                    flat.push_back({Poly::variable(var_), Scalar(sf.unit_exponent) * f.exponent});
                }
            }
            if (!unit_c.is_one()) {
                if (f.exponent.is_integer())
                    coeff_ *= unit_c.pow(f.exponent.to_long());
                // non-integer power of a constant: dropped (see class comment)
            }
            for (auto& [part, mult] : sf.factors)
                flat.push_back({part, Scalar(mult) * f.exponent});
        }
        // gcd refinement until pairwise coprime
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < flat.size() && !changed; ++i) {
                if (flat[i].base.is_constant() || flat[i].exponent.is_zero()) continue;
                for (std::size_t j = i + 1; j < flat.size() && !changed; ++j) {
                    if (flat[j].base.is_constant() || flat[j].exponent.is_zero()) continue;
                    if (flat[i].base == flat[j].base) {
                        flat[i].exponent += flat[j].exponent;
                        flat[j].exponent = Scalar(0);
                        continue;
                    }
                    Poly g = poly_gcd(flat[i].base, flat[j].base);
                    if (g.is_constant()) continue;
                    Poly bi = *flat[i].base.divide_exact(g);
                    Poly bj = *flat[j].base.divide_exact(g);
                    Scalar ei = flat[i].exponent, ej = flat[j].exponent;
                    flat[i] = {g, ei + ej};
                    flat[j] = {bi.monic(), ei};
                    if (!bj.is_constant()) flat.push_back({bj.monic(), ej});
                    changed = true;
                }
            }
        }
        factors_.clear();
        for (auto& f : flat)
            if (!f.base.is_constant() && !f.exponent.is_zero()) factors_.push_back(f);
        std::sort(factors_.begin(), factors_.end(),
                  [](const FactorPower& a, const FactorPower& b) {
                      return poly_cmp(a.base, b.base) < 0;
                  });
    }

    Var var_;
    Scalar coeff_;
    std::vector<FactorPower> factors_;
    Poly phi_;
    Scalar rate_;
};

/// Exact Wronskian of quasi-factored functions via the log-derivative Bell
/// matrix: W[f_1..f_n] = (prod f_j) det(B) with B_{0j} = 1 and
/// B_{r+1,j} = B_{rj}' + L_j B_{rj}. All intermediates stay rational; a
/// linearly dependent family yields the zero function, not an error.
inline QuasiFactored wronskian(const std::vector<QuasiFactored>& fs) {
    if (fs.empty()) throw std::invalid_argument("wronskian of empty list");
    Var v = fs[0].var();
    for (auto& f : fs) {
        if (f.var() != v) throw std::invalid_argument("wronskian: tag mismatch");
        if (f.is_zero()) return QuasiFactored::zero(v);
    }
    std::size_t n = fs.size();
    if (n == 1) return fs[0];
    std::vector<RationalFunction> L;
    L.reserve(n);
    for (auto& f : fs) L.push_back(f.log_derivative());
    Matrix<RationalFunction> B(n, std::vector<RationalFunction>(n, RationalFunction(v)));
    for (std::size_t j = 0; j < n; ++j) B[0][j] = RationalFunction(v, Scalar(1));
    for (std::size_t r = 1; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) B[r][j] = B[r - 1][j].deriv_z() + L[j] * B[r - 1][j];

    // clear denominators per column, then one fraction-free determinant
    Poly denom_all(v, Scalar(1));
    Matrix<Poly> M(n, std::vector<Poly>(n, Poly(v)));
    for (std::size_t j = 0; j < n; ++j) {
        Poly dj(v, Scalar(1));
        for (std::size_t r = 0; r < n; ++r) dj = poly_lcm(dj, B[r][j].den());
        for (std::size_t r = 0; r < n; ++r)
            M[r][j] = B[r][j].num() * *dj.divide_exact(B[r][j].den());
        denom_all *= dj;
    }
    Poly det = fraction_free_det(M);
    if (det.is_zero()) return QuasiFactored::zero(v);

    QuasiFactored prod = fs[0];
    for (std::size_t j = 1; j < n; ++j) prod = prod * fs[j];
    return prod.times_rational(RationalFunction(det, denom_all));
}

/// Wronskian-ratio eigenfunction for seeds R_i e^Phi sharing one exponential
/// factor: psi = W[R_1 e^Phi, ..., R_n e^Phi] / W[..., R_{n-1} e^Phi]
///       = e^Phi W[R_1..R_n] / W[R_1..R_{n-1}],
/// computed with plain polynomial Wronskians via the common-factor identity.
inline QuasiFactored nonuniform_wronskian(const Poly& phi, const std::vector<Poly>& seeds) {
    if (seeds.empty()) throw std::invalid_argument("nonuniform_wronskian: no seeds");
    Var v = seeds[0].var();
    auto poly_wronskian = [&](std::size_t n) {
        Matrix<Poly> M(n, std::vector<Poly>(n, Poly(v)));
        for (std::size_t j = 0; j < n; ++j) {
            Poly d = seeds[j];
            for (std::size_t r = 0; r < n; ++r) {
                M[r][j] = d;
                d = d.deriv_z();
            }
        }
        return fraction_free_det(M);
    };
    std::size_t n = seeds.size();
    Poly wn = poly_wronskian(n);
    if (wn.is_zero()) return QuasiFactored::zero(v);  // dependent seeds
    QuasiFactored psi = QuasiFactored::exponential(v, Scalar(0), phi);
    if (n == 1) return psi * QuasiFactored(wn);
    Poly wprev = poly_wronskian(n - 1);
    return psi.times_rational(RationalFunction(wn, wprev));
}

}  // namespace vortexlab
