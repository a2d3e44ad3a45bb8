#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vortexlab/rational.hpp"

namespace vortexlab {

/// Variable tag of a polynomial ring.
///
/// All derivatives are taken with respect to z regardless of the tag:
///   z  : the plane variable, exponents >= 0
///   w  : w = z^(1/2), Laurent exponents, d/dz = (2w)^{-1} d/dw
///   xi : xi = e^(iz), Laurent exponents, d/dz = i xi d/dxi
enum class Var { z, w, xi };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::z: return "z";
        case Var::w: return "w";
        default: return "xi";
    }
}

/// Dense-exponent Laurent polynomial over Scalar, tagged with its variable.
/// No zero coefficients are stored; for Var::z all exponents are >= 0.
class Poly {
public:
    explicit Poly(Var v = Var::z) : var_(v) {}
    Poly(Var v, const Scalar& c) : var_(v) { set(0, c); }

    static Poly monomial(Var v, long exp, const Scalar& c = Scalar(1)) {
        Poly p(v);
        p.set(exp, c);
        return p;
    }
    static Poly variable(Var v) { return monomial(v, 1); }

    Var var() const { return var_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }

    long degree() const {  // top exponent; degree of 0 is LONG_MIN surrogate
        if (c_.empty()) throw std::domain_error("degree of zero polynomial");
        return c_.rbegin()->first;
    }
    long low_exponent() const {
        if (c_.empty()) throw std::domain_error("low_exponent of zero polynomial");
        return c_.begin()->first;
    }
    const Scalar& leading() const {
        if (c_.empty()) throw std::domain_error("leading of zero polynomial");
        return c_.rbegin()->second;
    }

    Scalar coeff(long exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? Scalar(0) : it->second;
    }
    void set(long exp, const Scalar& c) {
        if (var_ == Var::z && exp < 0 && !c.is_zero())
            throw std::domain_error("negative exponent in z-polynomial");
        if (c.is_zero())
            c_.erase(exp);
        else
            c_[exp] = c;
    }
    const std::map<long, Scalar>& terms() const { return c_; }
    std::size_t term_count() const { return c_.size(); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check_tag(b);
        Poly r = a;
        for (auto& [e, c] : b.c_) r.set(e, r.coeff(e) + c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check_tag(b);
        Poly r = a;
        for (auto& [e, c] : b.c_) r.set(e, r.coeff(e) - c);
        return r;
    }
    Poly operator-() const {
        Poly r(var_);
        for (auto& [e, c] : c_) r.c_.emplace(e, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_tag(b);
        Poly r(a.var_);
        for (auto& [ea, ca] : a.c_)
            for (auto& [eb, cb] : b.c_) {
                auto it = r.c_.find(ea + eb);
                if (it == r.c_.end())
                    r.c_.emplace(ea + eb, ca * cb);
                else
                    it->second += cb * ca;
            }
        for (auto it = r.c_.begin(); it != r.c_.end();)
            it = it->second.is_zero() ? r.c_.erase(it) : std::next(it);
        return r;
    }
    friend Poly operator*(const Scalar& s, const Poly& a) {
        Poly r(a.var_);
        if (s.is_zero()) return r;
        for (auto& [e, c] : a.c_) r.c_.emplace(e, s * c);
        return r;
    }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.var_ == b.var_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(long e) const {
        if (e < 0) throw std::domain_error("Poly::pow negative exponent");
        Poly r(var_, Scalar(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    /// Derivative with respect to z (chain rule applied per tag).
    Poly deriv_z() const {
        Poly r(var_);
        for (auto& [e, c] : c_) {
            switch (var_) {
                case Var::z:
                    if (e != 0) r.set(e - 1, Scalar(e) * c);
                    break;
                case Var::w:
                    if (e != 0) r.set(e - 2, Scalar(e, 2) * c);
                    break;
                case Var::xi:
                    if (e != 0) r.set(e, Scalar(mpq_class(0), mpq_class(e)) * c);
                    break;
            }
        }
        return r;
    }

    /// Formal derivative in the tag variable itself (used for gcd and
    /// square-free structure, not for analysis).
    Poly deriv_var() const {
        Poly r(var_);
        for (auto& [e, c] : c_)
            if (e != 0) r.set(e - 1, Scalar(e) * c);
        return r;
    }

    /// Multiplies by var^k (Laurent shift; throws for Var::z going negative).
    Poly shifted(long k) const {
        Poly r(var_);
        for (auto& [e, c] : c_) r.set(e + k, c);
        return r;
    }

    Poly monic() const {
        if (is_zero()) throw std::domain_error("monic of zero polynomial");
        return leading().inv() * *this;
    }

    /// Exact division; nullopt when the remainder is nonzero.
    /// In the Laurent rings division is performed after normalizing both
    /// operands to low exponent 0; the monomial offset carries over.
    std::optional<Poly> divide_exact(const Poly& d) const {
        check_tag(d);
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        if (is_zero()) return Poly(var_);
        long sa = low_exponent(), sd = d.low_exponent();
        Poly rem = shifted(-sa), den = d.shifted(-sd);
        Poly q(var_);
        while (!rem.is_zero() && rem.degree() >= den.degree()) {
            long e = rem.degree() - den.degree();
            Scalar c = rem.leading() / den.leading();
            Poly t = monomial(var_, e, c);
            q += t;
            rem -= t * den;
        }
        if (!rem.is_zero()) return std::nullopt;
        // exactness implies sa >= sd in the z-ring, so the shift is legal
        return q.shifted(sa - sd);
    }

    /// Quotient and remainder. Requires low exponents >= 0 on both operands
    /// (Laurent callers normalize first); plain polynomial division.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        check_tag(d);
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        Poly rem = *this, q(var_);
        if (is_zero()) return {q, rem};
        if (low_exponent() < 0 || d.low_exponent() < 0)
            throw std::domain_error("divmod requires nonnegative low exponents");
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            long e = rem.degree() - d.degree();
            Scalar c = rem.leading() / d.leading();
            Poly t = monomial(var_, e, c);
            q += t;
            rem -= t * d;
        }
        return {q, rem};
    }

    Scalar eval(const Scalar& x) const {
        if (c_.empty()) return Scalar(0);
        long lo = low_exponent(), hi = degree();
        Scalar r(0);
        for (long e = hi; e >= lo; --e) {  // Horner on the shifted polynomial
            r = r * x;
            auto it = c_.find(e);
            if (it != c_.end()) r += it->second;
        }
        if (lo != 0) r *= x.pow(lo);
        return r;
    }

    void check_tag(const Poly& b) const {
        if (var_ != b.var_)
            throw std::invalid_argument("variable tag mismatch in polynomial operation");
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            if (!first) os << " + ";
            os << "(" << it->second.str() << ")";
            if (it->first != 0) os << "*" << var_name(var_) << "^" << it->first;
            first = false;
        }
        return os.str();
    }

private:
    Var var_;
    std::map<long, Scalar> c_;
};

namespace gcd_detail {

// scale to Gaussian-integer coefficients
inline Poly integerize(const Poly& p) {
    mpz_class l(1);
    for (auto& [e, c] : p.terms()) {
        l = lcm(l, c.real().get_den());
        l = lcm(l, c.imag().get_den());
    }
    if (l == 1) return p;
    return Scalar(mpq_class(l)) * p;
}

// divide out the rational-integer content (cheap growth control; any
// remaining Gaussian unit is irrelevant after the final monic step)
inline Poly strip_content(const Poly& p) {
    mpz_class g(0);
    for (auto& [e, c] : p.terms()) {
        g = gcd(g, c.real().get_num());
        g = gcd(g, c.imag().get_num());
        if (g == 1) return p;
    }
    if (g == 0) return p;
    mpq_class inv(mpz_class(1), g);
    inv.canonicalize();
    return Scalar(inv) * p;
}

}  // namespace gcd_detail

/// Monic gcd over the coefficient field, computed by a primitive
/// pseudo-remainder sequence over the Gaussian integers (plain fraction
/// Euclid blows up on the degrees this library reaches). Laurent operands
/// are normalized to low exponent 0 first; in the z-ring the shared power
/// of z belongs to the gcd.
inline Poly poly_gcd(Poly a, Poly b) {
    a.check_tag(b);
    Var v = a.var();
    if (a.is_zero() && b.is_zero()) return Poly(v);
    long unit = 0;
    if (v == Var::z)
        unit = a.is_zero()   ? b.low_exponent()
               : b.is_zero() ? a.low_exponent()
                             : std::min(a.low_exponent(), b.low_exponent());
    if (a.is_zero()) return b.shifted(-b.low_exponent() + unit).monic();
    if (b.is_zero()) return a.shifted(-a.low_exponent() + unit).monic();
    a = gcd_detail::strip_content(gcd_detail::integerize(a.shifted(-a.low_exponent())));
    b = gcd_detail::strip_content(gcd_detail::integerize(b.shifted(-b.low_exponent())));
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        Poly r = a;  // pseudo-remainder keeps everything integral
        while (!r.is_zero() && r.degree() >= b.degree()) {
            long e = r.degree() - b.degree();
            r = b.leading() * r - Poly::monomial(v, e, r.leading()) * b;
        }
        a = b;
        b = r.is_zero() ? r : gcd_detail::strip_content(r.shifted(-r.low_exponent()));
    }
    return a.monic().shifted(unit);
}

inline Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.var());
    Poly g = poly_gcd(a, b);
    return (a * b).divide_exact(g)->monic();
}

/// Square-free decomposition (Yun) of the low-exponent-0 part of p.
/// Returns (unit_exponent, [(factor_1, 1), (factor_2, 2), ...]) with monic
/// square-free pairwise-coprime factors; p = lead * var^unit * prod f_i^i.
struct SquareFree {
    Scalar lead;
    long unit_exponent = 0;  // power of the tag variable split off
    std::vector<std::pair<Poly, long>> factors;
};

inline SquareFree squarefree_decompose(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("square-free decomposition of zero");
    SquareFree out;
    out.lead = p.leading();
    out.unit_exponent = p.low_exponent();
    Poly f = out.lead.inv() * p.shifted(-out.unit_exponent);
    if (f.is_constant()) return out;
    // Yun's algorithm with the formal derivative
    Poly g = poly_gcd(f, f.deriv_var());
    Poly w = *f.divide_exact(g);
    long m = 1;
    while (!w.is_constant()) {
        Poly y = poly_gcd(w, g);
        Poly fac = *w.divide_exact(y);
        if (!fac.is_constant()) out.factors.emplace_back(fac.monic(), m);
        w = y;
        if (!g.is_constant()) g = *g.divide_exact(y);
        ++m;
    }
    return out;
}

inline Poly squarefree_part(const Poly& p) {
    SquareFree sf = squarefree_decompose(p);
    Poly r(p.var(), Scalar(1));
    // the monomial split off by the decomposition is a unit only in the
    // Laurent rings; in the z-ring it contributes the factor z
    if (p.var() == Var::z && sf.unit_exponent > 0) r *= Poly::variable(p.var());
    for (auto& [f, m] : sf.factors) r *= f;
    return r;
}

/// Reinterprets an even-exponent w-polynomial as a z-polynomial (w^2 = z).
inline Poly w_to_z(const Poly& p) {
    if (p.var() != Var::w) throw std::invalid_argument("w_to_z: not a w-polynomial");
    Poly r(Var::z);
    for (auto& [e, c] : p.terms()) {
        if (e % 2 != 0) throw std::domain_error("w_to_z: odd exponent present");
        r.set(e / 2, c);
    }
    return r;
}

inline Poly z_to_w(const Poly& p) {
    if (p.var() != Var::z) throw std::invalid_argument("z_to_w: not a z-polynomial");
    Poly r(Var::w);
    for (auto& [e, c] : p.terms()) r.set(2 * e, c);
    return r;
}

/// Reinterprets an even-exponent xi-Laurent polynomial in eta = xi^2.
inline Poly xi_to_eta(const Poly& p) {
    if (p.var() != Var::xi) throw std::invalid_argument("xi_to_eta: not a xi-polynomial");
    Poly r(Var::z);
    for (auto& [e, c] : p.terms()) {
        if (e % 2 != 0) throw std::domain_error("xi_to_eta: odd exponent present");
        if (e / 2 < 0) throw std::domain_error("xi_to_eta: normalize low exponent first");
        r.set(e / 2, c);
    }
    return r;
}

}  // namespace vortexlab
