#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "vortexlab/families.hpp"

using namespace vortexlab;
using testutil::Rng;

TEST_CASE("polynomial interchange format round-trips bit-exactly") {
    Rng rng(901);
    for (Var v : {Var::z, Var::w, Var::xi}) {
        for (int it = 0; it < 30; ++it) {
            Poly p(v);
            long lo = v == Var::z ? 0 : -4;
            for (long e = lo; e <= 5; ++e)
                if (rng.integer(0, 1)) p.set(e, it % 2 ? rng.rational() : rng.gaussian());
            json j = poly_to_json(p);
            // serialize through text to exercise the parser
            json j2 = json::parse(j.dump());
            REQUIRE(poly_from_json(j2) == p);
        }
    }
    // the documented shapes: [exp, "num/den"] and [exp, [re, im]]
    Poly p(Var::z);
    p.set(0, Scalar(1, 3));
    p.set(3, Scalar(mpq_class(1, 2), mpq_class(-2, 5)));
    json j = poly_to_json(p);
    REQUIRE(j["variable"] == "z");
    REQUIRE(j["coefficients"][0][1] == "1/3");
    REQUIRE(j["coefficients"][1][1][0] == "1/2");
    REQUIRE(j["coefficients"][1][1][1] == "-2/5");
}

TEST_CASE("quasifactored and diffop round-trips") {
    Rng rng(902);
    for (int it = 0; it < 20; ++it) {
        QuasiFactored f =
            QuasiFactored(rng.monic_poly(Var::z, rng.integer(1, 3)), Scalar(rng.integer(-2, 2) * 2 + 1)) *
            QuasiFactored::exponential(Var::z, rng.rational());
        json j = json::parse(quasifactored_to_json(f).dump());
        REQUIRE(quasifactored_from_json(j) == f);
    }
    for (int it = 0; it < 20; ++it) {
        DiffOp op(Var::z);
        for (int r = 0; r <= 2; ++r)
            if (r == 2 || rng.integer(0, 1))
                op.set(r, RationalFunction(rng.poly(Var::z, 2), rng.monic_poly(Var::z, 1)));
        json j = json::parse(diffop_to_json(op).dump());
        REQUIRE(diffop_from_json(j) == op);
    }
}

TEST_CASE("configuration document format") {
    Poly p2(Var::z);
    p2.set(3, Scalar(1));
    p2.set(0, Scalar(1));
    QuasiFactored psi = QuasiFactored(p2) / QuasiFactored(Poly::variable(Var::z));
    VortexConfiguration c = config_from_eigenfunction(psi, Geometry::plane);
    c.provenance = "{\"family\":\"adler_moser\"}";
    json j = json::parse(configuration_to_json(c).dump());
    REQUIRE(j["geometry"] == "plane");
    REQUIRE(j["precision_bits"] == 128);
    REQUIRE(j["vortices"].size() == 4);
    for (auto& v : j["vortices"]) {
        REQUIRE(v["z"].is_array());
        REQUIRE(v["q"].is_string());
    }
    VortexConfiguration back = configuration_from_json(j);
    REQUIRE(back.vortices.size() == c.vortices.size());
    // strengths are exact; positions round-trip at working precision
    for (std::size_t i = 0; i < c.vortices.size(); ++i) {
        REQUIRE(back.vortices[i].q == c.vortices[i].q);
        REQUIRE(abs(back.vortices[i].z - c.vortices[i].z) < Real("1e-36"));
    }
    REQUIRE(residual_static(back) < Real("1e-9"));

    std::string csv = configuration_to_csv(c);
    REQUIRE(csv.rfind("re,im,q\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("family specs round-trip and generate verifiable configurations") {
    Rng rng(903);
    FamilySpec spec;
    spec.family = Family::lambda2_plus;
    spec.n = 2;
    spec.params = {{"r1", Scalar(1)}, {"s2", Scalar(0)}};
    FamilySpec back = FamilySpec::from_json(json::parse(spec.to_json().dump()));
    REQUIRE(back.family == spec.family);
    REQUIRE(back.n == spec.n);
    REQUIRE(back.params.at("r1") == Scalar(1));

    // generate -> serialize -> parse -> verify is lossless at the exact level
    GeneratedFamily fam = generate(spec);
    Poly q2(Var::z);
    q2.set(5, Scalar(1));
    q2.set(0, Scalar(-4));
    REQUIRE(fam.polynomials.at("q2") == q2);
    json doc = poly_to_json(fam.polynomials.at("q2"));
    REQUIRE(poly_from_json(json::parse(doc.dump())) == q2);
    VortexConfiguration cfg = config_from_eigenfunction(fam.carrier, fam.geometry);
    VortexConfiguration cfg2 =
        configuration_from_json(json::parse(configuration_to_json(cfg).dump()));
    REQUIRE(residual_static(cfg2) < Real("1e-9"));

    // even bispectral generation refuses violated termination constraints
    FamilySpec badspec;
    badspec.family = Family::even_bispectral;
    badspec.n = 3;
    badspec.params = {{"s1", Scalar(1)}, {"s2", Scalar(0)}};
    REQUIRE_THROWS_AS(generate(badspec), std::domain_error);
}
