#pragma once

#include "vortexlab/poly.hpp"

namespace vortexlab {

/// Reduced fraction of two polynomials with the same variable tag.
///
/// Canonical form: gcd(num, den) = 1, den monic with low exponent 0
/// (any Laurent monomial content lives in the numerator), den != 0.
/// The canonical form makes operator== structural.
class RationalFunction {
public:
    explicit RationalFunction(Var v = Var::z) : num_(v), den_(v, Scalar(1)) {}
    RationalFunction(const Poly& num, const Poly& den) : num_(num), den_(den) {
        num_.check_tag(den_);
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        reduce_();
    }
    explicit RationalFunction(const Poly& num) : num_(num), den_(num.var(), Scalar(1)) {}
    RationalFunction(Var v, const Scalar& c) : num_(v, c), den_(v, Scalar(1)) {}

    /// Trusted constructor for fractions already in canonical form
    /// (gcd(num, den) = 1, den monic, Laurent content moved up); skips the
    /// gcd pass, which matters on the degrees the Wronskian layer produces.
    static RationalFunction from_reduced(const Poly& num, const Poly& den) {
        RationalFunction r(num.var());
        num.check_tag(den);
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        r.num_ = num;
        r.den_ = num.is_zero() ? Poly(num.var(), Scalar(1)) : den;
        return r;
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    Var var() const { return num_.var(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("rational function division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RationalFunction operator*(const Scalar& s, const RationalFunction& a) {
        return RationalFunction(s * a.num_, a.den_);
    }
    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
    RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
    RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
    RationalFunction& operator/=(const RationalFunction& b) { return *this = *this / b; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    RationalFunction deriv_z() const {
        return RationalFunction(num_.deriv_z() * den_ - num_ * den_.deriv_z(), den_ * den_);
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ") / (" + den_.str() + ")";
    }

private:
    void reduce_() {
        if (num_.is_zero()) {
            den_ = Poly(num_.var(), Scalar(1));
            return;
        }
        if (!den_.is_constant()) {
            Poly g = poly_gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = *num_.divide_exact(g);
                den_ = *den_.divide_exact(g);
            }
        }
        // in the Laurent rings monomials are units: move the denominator's
        // monomial content into the numerator
        if (num_.var() != Var::z) {
            long s = den_.low_exponent();
            if (s != 0) {
                den_ = den_.shifted(-s);
                num_ = num_.shifted(-s);
            }
        }
        Scalar lead = den_.leading();
        if (!lead.is_one()) {
            Scalar li = lead.inv();
            num_ = li * num_;
            den_ = li * den_;
        }
    }

    Poly num_, den_;
};

}  // namespace vortexlab
