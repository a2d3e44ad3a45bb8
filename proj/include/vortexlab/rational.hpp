#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vortexlab {

/// Gaussian rational a + b*i with arbitrary-precision rational parts.
///
/// Values are always stored canonically (lowest terms, positive
/// denominators); a purely real value compares equal to its embedding.
/// Division by zero throws, it never produces a value.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}
    Scalar(long num, long den) : re_(num, den), im_(0) {
        if (den == 0) throw std::domain_error("Scalar: zero denominator");
        re_.canonicalize();
    }
    explicit Scalar(const mpq_class& re) : re_(re), im_(0) {}
    Scalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& real() const { return re_; }
    const mpq_class& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    /// True when real, an integer, and within long range.
    bool is_integer() const { return im_ == 0 && re_.get_den() == 1; }
    long to_long() const {
        if (!is_integer()) throw std::domain_error("Scalar: not an integer");
        if (!re_.get_num().fits_slong_p()) throw std::domain_error("Scalar: integer overflow");
        return re_.get_num().get_si();
    }

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar conj() const { return Scalar(re_, -im_); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        mpq_class n2 = b.re_ * b.re_ + b.im_ * b.im_;
        if (n2 == 0) throw std::domain_error("Scalar: division by zero");
        return Scalar((a.re_ * b.re_ + a.im_ * b.im_) / n2,
                      (a.im_ * b.re_ - a.re_ * b.im_) / n2);
    }
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inv() const { return Scalar(1) / *this; }

    /// Integer power; negative exponents invert (zero base throws).
    Scalar pow(long e) const {
        if (e < 0) return inv().pow(-e);
        Scalar r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    /// Parses "num", "num/den", or "a/b+c/di" (also "-c/di", "i", "-i").
    static Scalar parse(const std::string& s);

    std::string str() const;

private:
    mpq_class re_, im_;
};

inline mpq_class parse_mpq(const std::string& in) {
    std::string s = (!in.empty() && in[0] == '+') ? in.substr(1) : in;
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::domain_error("zero denominator: " + s);
    return q;
}

inline Scalar Scalar::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty scalar literal");
    if (s.back() == 'i') {
        std::string body = s.substr(0, s.size() - 1);
        // split an optional real part at the last +/- that is not leading and
        // not part of a denominator
        for (std::size_t p = body.size(); p-- > 1;) {
            if (body[p] == '+' || body[p] == '-') {
                std::string re = body.substr(0, p);
                std::string im = body.substr(p);
                if (im == "+" || im == "-") im += "1";
                return Scalar(parse_mpq(re), parse_mpq(im));
            }
        }
        if (body.empty() || body == "+") return Scalar::i();
        if (body == "-") return Scalar(mpq_class(0), mpq_class(-1));
        return Scalar(mpq_class(0), parse_mpq(body));
    }
    return Scalar(parse_mpq(s));
}

inline std::string Scalar::str() const {
    if (im_ == 0) return re_.get_str();
    std::string s;
    if (re_ != 0) s = re_.get_str();
    std::string im = im_.get_str();
    if (!s.empty() && im[0] != '-') s += "+";
    return s + im + "i";
}

}  // namespace vortexlab
