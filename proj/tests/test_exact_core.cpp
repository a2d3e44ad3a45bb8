#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "vortexlab/antiderivative.hpp"
#include "vortexlab/linalg.hpp"
#include "vortexlab/poly.hpp"
#include "vortexlab/rational_function.hpp"

using namespace vortexlab;
using testutil::Rng;

namespace {

Poly parse_z(std::initializer_list<std::pair<long, long>> terms) {
    Poly p(Var::z);
    for (auto& [e, c] : terms) p.set(e, Scalar(c));
    return p;
}

// independent cofactor-expansion oracle for determinants
Poly cofactor_det(const Matrix<Poly>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Poly r(m[0][0].var());
    for (std::size_t j = 0; j < n; ++j) {
        Matrix<Poly> sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(row);
        }
        Poly t = m[0][j] * cofactor_det(sub);
        r = (j % 2 == 0) ? r + t : r - t;
    }
    return r;
}

}  // namespace

TEST_CASE("scalar field axioms and edge cases") {
    Rng rng(101);
    for (int it = 0; it < 200; ++it) {
        Scalar a = rng.gaussian(), b = rng.gaussian(), c = rng.gaussian();
        REQUIRE((a + b) * c == a * c + b * c);
        REQUIRE(a * (b * c) == (a * b) * c);
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        if (!b.is_zero()) REQUIRE((a / b) * b == a);
    }
    REQUIRE_THROWS_AS(Scalar(1) / Scalar(0), std::domain_error);
    // a purely real scalar equals its Gaussian embedding
    REQUIRE(Scalar(3, 4) == Scalar(mpq_class(3, 4), mpq_class(0)));
    REQUIRE(Scalar::parse("-5/3") == Scalar(-5, 3));
    REQUIRE(Scalar::parse("1/2+3/4i") == Scalar(mpq_class(1, 2), mpq_class(3, 4)));
    REQUIRE(Scalar::parse("-i") == -Scalar::i());
    REQUIRE(Scalar::parse("2/3i") == Scalar(mpq_class(0), mpq_class(2, 3)));
}

TEST_CASE("ring operations match the stated examples") {
    // (z^3+1)(z-1) = z^4 - z^3 + z - 1
    Poly a = parse_z({{3, 1}, {0, 1}});
    Poly b = parse_z({{1, 1}, {0, -1}});
    REQUIRE(a * b == parse_z({{4, 1}, {3, -1}, {1, 1}, {0, -1}}));

    // d/dz of w^9 = (9/2) w^7
    Poly w9 = Poly::monomial(Var::w, 9);
    Poly dw = w9.deriv_z();
    REQUIRE(dw == Poly::monomial(Var::w, 7, Scalar(9, 2)));

    // d/dz of (xi + xi^-1) = i xi - i xi^-1
    Poly c(Var::xi);
    c.set(1, Scalar(1));
    c.set(-1, Scalar(1));
    Poly dc = c.deriv_z();
    REQUIRE(dc.coeff(1) == Scalar::i());
    REQUIRE(dc.coeff(-1) == -Scalar::i());

    Poly zp(Var::z, Scalar(1));
    REQUIRE_THROWS(zp + Poly(Var::w, Scalar(1)));
    REQUIRE(!a.divide_exact(parse_z({{1, 1}, {0, 2}})).has_value());
}

TEST_CASE("product rule holds for random polynomials in every tag") {
    Rng rng(102);
    for (Var v : {Var::z, Var::w, Var::xi}) {
        for (int it = 0; it < 1000; ++it) {
            Poly a = rng.poly(v, rng.integer(0, 5), true);
            Poly b = rng.poly(v, rng.integer(0, 5), true);
            REQUIRE((a * b).deriv_z() == a.deriv_z() * b + a * b.deriv_z());
        }
    }
}

TEST_CASE("laurent division and gcd") {
    Rng rng(103);
    for (Var v : {Var::z, Var::w, Var::xi}) {
        for (int it = 0; it < 100; ++it) {
            Poly a = rng.poly(v, rng.integer(0, 4), true);
            Poly b = rng.poly(v, rng.integer(0, 4), true);
            auto q = (a * b).divide_exact(b);
            REQUIRE(q.has_value());
            REQUIRE(*q == a);
            Poly g = poly_gcd(a * b, b);
            REQUIRE((a * b).divide_exact(g).has_value());
            REQUIRE(b.divide_exact(g).has_value());
        }
    }
}

TEST_CASE("square-free decomposition reconstructs its input") {
    Rng rng(104);
    for (int it = 0; it < 60; ++it) {
        Var v = it % 2 ? Var::z : Var::xi;
        Poly p = rng.monic_poly(v, 2) * rng.monic_poly(v, 1).pow(2);
        SquareFree sf = squarefree_decompose(p);
        Poly rec = Poly::monomial(v, sf.unit_exponent, sf.lead);
        for (auto& [f, m] : sf.factors) {
            rec *= f.pow(m);
            REQUIRE(poly_gcd(f, f.deriv_var()).is_constant());
        }
        REQUIRE(rec == p);
    }
}

TEST_CASE("fraction-free determinant") {
    Poly z = Poly::variable(Var::z), one(Var::z, Scalar(1)), zero(Var::z);
    REQUIRE(fraction_free_det({{one, z}, {zero, one}}) == one);
    REQUIRE(fraction_free_det({{z, one}, {one, z}}) == parse_z({{2, 1}, {0, -1}}));

    // 3x3 Wronskian matrix of {z, z^3, z^5} against the cofactor oracle
    Matrix<Poly> wr(3, std::vector<Poly>(3, Poly(Var::z)));
    Poly cols[3] = {z, parse_z({{3, 1}}), parse_z({{5, 1}})};
    for (int j = 0; j < 3; ++j) {
        Poly d = cols[j];
        for (int r = 0; r < 3; ++r) {
            wr[r][j] = d;
            d = d.deriv_z();
        }
    }
    REQUIRE(fraction_free_det(wr) == cofactor_det(wr));

    Rng rng(105);
    for (int it = 0; it < 8; ++it) {
        Matrix<Poly> m(5, std::vector<Poly>(5, Poly(Var::z)));
        for (auto& row : m)
            for (auto& e : row) e = rng.poly(Var::z, rng.integer(0, 2));
        REQUIRE(fraction_free_det(m) == cofactor_det(m));
    }
}

TEST_CASE("pfaffian") {
    Poly a = parse_z({{1, 2}, {0, 3}});
    Poly zero(Var::z);
    REQUIRE(fraction_free_pfaffian({{zero, a}, {-a, zero}}) == a);

    // classical 4x4 expansion a12 a34 - a13 a24 + a14 a23
    Rng rng(106);
    Matrix<Poly> m(4, std::vector<Poly>(4, zero));
    Poly e[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            e[i][j] = rng.poly(Var::z, 1);
            m[i][j] = e[i][j];
            m[j][i] = -e[i][j];
        }
    REQUIRE(fraction_free_pfaffian(m) ==
            e[0][1] * e[2][3] - e[0][2] * e[1][3] + e[0][3] * e[1][2]);

    // Pf^2 = det for random antisymmetric matrices up to 8x8
    for (std::size_t n : {2u, 4u, 6u, 8u}) {
        Matrix<Poly> s(n, std::vector<Poly>(n, zero));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Poly p(Var::z, rng.rational());
                s[i][j] = p;
                s[j][i] = -p;
            }
        Poly pf = fraction_free_pfaffian(s);
        REQUIRE(pf * pf == fraction_free_det(s));
    }

    REQUIRE_THROWS(fraction_free_pfaffian({{zero, a, zero}, {-a, zero, zero}, {zero, zero, zero}}));
    Matrix<Poly> bad = {{zero, a}, {a, zero}};
    REQUIRE_THROWS(fraction_free_pfaffian(bad));
}

TEST_CASE("linear solve with certificates") {
    Rng rng(107);
    // identity system
    Matrix<Scalar> eye(3, std::vector<Scalar>(3, Scalar(0)));
    for (int i = 0; i < 3; ++i) eye[i][i] = Scalar(1);
    std::vector<Scalar> b = {rng.rational(), rng.rational(), rng.rational()};
    auto s = solve_linear(eye, b);
    REQUIRE(s.status == LinearSolution::Status::unique);
    REQUIRE(s.x == b);

    // x + y = 1, x + y = 2 -> inconsistency certificate
    auto bad = solve_linear({{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(1)}},
                            {Scalar(1), Scalar(2)});
    REQUIRE(bad.status == LinearSolution::Status::inconsistent);
    // lambda^T A = 0 and lambda^T b != 0
    Scalar l0 = bad.certificate[0], l1 = bad.certificate[1];
    REQUIRE((l0 + l1).is_zero());
    REQUIRE(!(l0 * Scalar(1) + l1 * Scalar(2)).is_zero());

    // 5x5 random invertible system verified by substitution
    for (int it = 0; it < 20; ++it) {
        Matrix<Scalar> m(5, std::vector<Scalar>(5, Scalar(0)));
        for (auto& row : m)
            for (auto& x : row) x = rng.rational_or_zero();
        std::vector<Scalar> rhs(5);
        for (auto& x : rhs) x = rng.rational();
        auto sol = solve_linear(m, rhs);
        if (sol.status == LinearSolution::Status::inconsistent) continue;
        for (int i = 0; i < 5; ++i) {
            Scalar acc(0);
            for (int j = 0; j < 5; ++j) acc += m[i][j] * sol.x[j];
            REQUIRE(acc == rhs[i]);
        }
    }

    // underdetermined: free variables reported by index
    auto und = solve_linear({{Scalar(1), Scalar(1), Scalar(0)}}, {Scalar(2)});
    REQUIRE(und.status == LinearSolution::Status::underdetermined);
    REQUIRE(und.free_indices == std::vector<std::size_t>{1, 2});
}

TEST_CASE("rational antiderivative") {
    Poly z = Poly::variable(Var::z);

    // z^2 -> z^3/3
    auto r = rational_antiderivative(RationalFunction(parse_z({{2, 1}})));
    REQUIRE(std::holds_alternative<RationalFunction>(r));
    REQUIRE(std::get<RationalFunction>(r) ==
            RationalFunction(Poly::monomial(Var::z, 3, Scalar(1, 3))));

    // 1/z -> obstruction with residue 1 at 0
    auto o = rational_antiderivative(RationalFunction(Poly(Var::z, Scalar(1)), z));
    REQUIRE(std::holds_alternative<LogObstruction>(o));
    auto& ob = std::get<LogObstruction>(o);
    REQUIRE(ob.squarefree_den == z);
    REQUIRE(ob.residue_num == Poly(Var::z, Scalar(1)));

    // q1^2/p0^2 = z^2 for the first Adler-Moser step: z^3/3 + c gives P2 up
    // to normalization (z^3 + 3c)
    auto step = rational_antiderivative(RationalFunction(z * z));
    Poly p2 = Scalar(3) * (std::get<RationalFunction>(step).num());
    REQUIRE(p2 == parse_z({{3, 1}}));

    // derivative of the antiderivative returns the input (random proper+improper)
    Rng rng(108);
    int obstructed = 0;
    for (int it = 0; it < 120; ++it) {
        Poly num = rng.poly(Var::z, rng.integer(0, 4));
        Poly den = rng.monic_poly(Var::z, rng.integer(0, 2));
        if (rng.integer(0, 1)) den = den * den;
        RationalFunction f(num, den);
        auto res = rational_antiderivative(f);
        if (std::holds_alternative<RationalFunction>(res)) {
            REQUIRE(std::get<RationalFunction>(res).deriv_z() == f);
        } else {
            ++obstructed;
            auto& cert = std::get<LogObstruction>(res);
            REQUIRE(!cert.residue_num.is_zero());
        }
    }
    REQUIRE(obstructed > 0);  // the sample must exercise both outcomes

    // residues_all_zero agrees with a hand case: 1/z^2 integrates, (z+1)/z^2 does not
    REQUIRE(residues_all_zero(RationalFunction(Poly(Var::z, Scalar(1)), z * z)));
    REQUIRE(!residues_all_zero(RationalFunction(parse_z({{1, 1}, {0, 1}}), z * z)));
}
