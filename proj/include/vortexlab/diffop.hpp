#pragma once

#include <map>

#include "vortexlab/quasifactored.hpp"

namespace vortexlab {

/// Ordinary differential operator sum_r c_r(x) d^r/dz^r with rational-function
/// coefficients. Operator equality is coefficient-wise equality of reduced
/// rational functions.
class DiffOp {
public:
    explicit DiffOp(Var v = Var::z) : var_(v) {}

    static DiffOp identity(Var v) {
        DiffOp d(v);
        d.set(0, RationalFunction(v, Scalar(1)));
        return d;
    }
    /// d^n/dz^n
    static DiffOp derivative(Var v, int n = 1) {
        DiffOp d(v);
        d.set(n, RationalFunction(v, Scalar(1)));
        return d;
    }
    static DiffOp multiplication(const RationalFunction& f) {
        DiffOp d(f.var());
        d.set(0, f);
        return d;
    }

    Var var() const { return var_; }
    bool is_zero() const { return c_.empty(); }
    int order() const { return c_.empty() ? -1 : c_.rbegin()->first; }
    const std::map<int, RationalFunction>& coefficients() const { return c_; }
    RationalFunction coeff(int r) const {
        auto it = c_.find(r);
        return it == c_.end() ? RationalFunction(var_) : it->second;
    }
    void set(int r, const RationalFunction& f) {
        if (r < 0) throw std::invalid_argument("DiffOp: negative order");
        if (f.is_zero())
            c_.erase(r);
        else
            c_[r] = f;
    }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
        a.check_tag_(b);
        DiffOp r = a;
        for (auto& [o, f] : b.c_) r.set(o, r.coeff(o) + f);
        return r;
    }
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) {
        a.check_tag_(b);
        DiffOp r = a;
        for (auto& [o, f] : b.c_) r.set(o, r.coeff(o) - f);
        return r;
    }
    friend DiffOp operator*(const Scalar& s, const DiffOp& a) {
        DiffOp r(a.var_);
        for (auto& [o, f] : a.c_) r.set(o, s * f);
        return r;
    }

    friend bool operator==(const DiffOp& a, const DiffOp& b) {
        return a.var_ == b.var_ && a.c_ == b.c_;
    }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + it->second.str() + ")";
            if (it->first > 0) s += "*D^" + std::to_string(it->first);
        }
        return s;
    }

private:
    void check_tag_(const DiffOp& o) const {
        if (var_ != o.var_) throw std::invalid_argument("DiffOp tag mismatch");
    }

    Var var_;
    std::map<int, RationalFunction> c_;  // order -> coefficient, no zeros
};

/// Exact operator product with Leibniz expansion:
/// (a d^m)(b d^n) = a sum_k C(m,k) b^{(k)} d^{m+n-k}.
inline DiffOp compose(const DiffOp& f, const DiffOp& g) {
    if (f.var() != g.var()) throw std::invalid_argument("compose: tag mismatch");
    DiffOp r(f.var());
    for (auto& [m, a] : f.coefficients()) {
        for (auto& [n, b] : g.coefficients()) {
            RationalFunction bk = b;
            mpz_class binom = 1;
            for (int k = 0; k <= m; ++k) {
                if (k > 0) {
                    binom = binom * (m - k + 1) / k;
                    bk = bk.deriv_z();
                }
                if (bk.is_zero()) break;
                int ord = m + n - k;
                r.set(ord, r.coeff(ord) + Scalar(mpq_class(binom)) * (a * bk));
            }
        }
    }
    return r;
}

/// Applies the operator to a quasi-factored function. Derivatives of f go
/// through the log-derivative Bell recursion, so the image is f times an
/// exact rational function; prefactors pass through untouched.
inline QuasiFactored apply(const DiffOp& op, const QuasiFactored& f) {
    if (op.var() != f.var()) throw std::invalid_argument("apply: tag mismatch");
    if (f.is_zero() || op.is_zero()) return QuasiFactored::zero(f.var());
    RationalFunction L = f.log_derivative();
    RationalFunction bell(f.var(), Scalar(1));  // f^{(r)} = f * bell_r
    RationalFunction acc(f.var());
    int r = 0;
    for (auto& [ord, c] : op.coefficients()) {
        while (r < ord) {
            bell = bell.deriv_z() + L * bell;
            ++r;
        }
        acc += c * bell;
    }
    return f.times_rational(acc);
}

/// True iff L1 T - T L0 is exactly the zero operator.
inline bool intertwine_check(const DiffOp& l1, const DiffOp& t, const DiffOp& l0) {
    return (compose(l1, t) - compose(t, l0)).is_zero();
}

/// The monic order-n operator annihilating exactly the span of the seeds,
/// with coefficients read off from Wronskian-minor ratios of the Bell
/// matrix. Throws on linearly dependent seeds.
inline DiffOp wronskian_intertwiner(const std::vector<QuasiFactored>& seeds) {
    if (seeds.empty()) throw std::invalid_argument("wronskian_intertwiner: no seeds");
    Var v = seeds[0].var();
    std::size_t n = seeds.size();
    std::vector<RationalFunction> L;
    for (auto& s : seeds) {
        if (s.var() != v) throw std::invalid_argument("wronskian_intertwiner: tag mismatch");
        if (s.is_zero()) throw std::invalid_argument("wronskian_intertwiner: zero seed");
        L.push_back(s.log_derivative());
    }
    // Bell rows 0..n
    Matrix<RationalFunction> B(n + 1, std::vector<RationalFunction>(n, RationalFunction(v)));
    for (std::size_t j = 0; j < n; ++j) B[0][j] = RationalFunction(v, Scalar(1));
    for (std::size_t r = 1; r <= n; ++r)
        for (std::size_t j = 0; j < n; ++j) B[r][j] = B[r - 1][j].deriv_z() + L[j] * B[r - 1][j];

    // per-column denominator clearing scales every (n x n) minor by the same
    // factor, so the minor ratios below are unaffected
    Matrix<Poly> M(n + 1, std::vector<Poly>(n, Poly(v)));
    for (std::size_t j = 0; j < n; ++j) {
        Poly dj(v, Scalar(1));
        for (std::size_t r = 0; r <= n; ++r) dj = poly_lcm(dj, B[r][j].den());
        for (std::size_t r = 0; r <= n; ++r)
            M[r][j] = B[r][j].num() * *dj.divide_exact(B[r][j].den());
    }
    auto minor_det = [&](std::size_t skip) {
        Matrix<Poly> sub;
        for (std::size_t r = 0; r <= n; ++r)
            if (r != skip) sub.push_back(M[r]);
        return fraction_free_det(sub);
    };
    Poly full = minor_det(n);  // rows 0..n-1 = the seed Wronskian numerator
    if (full.is_zero()) throw std::invalid_argument("wronskian_intertwiner: dependent seeds");
    DiffOp t(v);
    for (std::size_t r = 0; r <= n; ++r) {
        Poly mr = minor_det(r);
        if (mr.is_zero()) continue;
        int sign = ((n - r) % 2 == 0) ? 1 : -1;
        t.set(static_cast<int>(r), Scalar(sign) * RationalFunction(mr, full));
    }
    return t;
}

}  // namespace vortexlab
