#pragma once

#include <json.hpp>

#include "vortexlab/diffop.hpp"
#include "vortexlab/verify.hpp"

namespace vortexlab {

using nlohmann::json;

// Interchange format. Exact data (polynomials, rationals) round-trips
// bit-exactly; configuration positions are decimal floats at the full
// working precision (40 significant digits for the 128-bit engine).

inline json scalar_to_json(const Scalar& s) {
    if (s.is_real()) return s.real().get_str();
    return json::array({s.real().get_str(), s.imag().get_str()});
}

inline Scalar scalar_from_json(const json& j) {
    if (j.is_string()) return Scalar(parse_mpq(j.get<std::string>()));
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_array() && j.size() == 2)
        return Scalar(parse_mpq(j[0].get<std::string>()), parse_mpq(j[1].get<std::string>()));
    throw std::invalid_argument("scalar: expected \"num/den\" or [re, im]");
}

inline json poly_to_json(const Poly& p) {
    json coeffs = json::array();
    for (auto& [e, c] : p.terms()) coeffs.push_back(json::array({e, scalar_to_json(c)}));
    return json{{"variable", var_name(p.var())}, {"coefficients", coeffs}};
}

inline Var var_from_name(const std::string& s) {
    if (s == "z") return Var::z;
    if (s == "w") return Var::w;
    if (s == "xi") return Var::xi;
    throw std::invalid_argument("unknown variable tag: " + s);
}

inline Poly poly_from_json(const json& j) {
    Poly p(var_from_name(j.at("variable").get<std::string>()));
    for (auto& term : j.at("coefficients"))
        p.set(term.at(0).get<long>(), scalar_from_json(term.at(1)));
    return p;
}

inline json quasifactored_to_json(const QuasiFactored& f) {
    json factors = json::array();
    for (auto& fp : f.factors())
        factors.push_back(json{{"base", poly_to_json(fp.base)},
                               {"exponent", scalar_to_json(fp.exponent)}});
    return json{{"variable", var_name(f.var())},
                {"coeff", scalar_to_json(f.coeff())},
                {"factors", factors},
                {"phi", poly_to_json(f.phi())},
                {"k", scalar_to_json(f.rate())}};
}

inline QuasiFactored quasifactored_from_json(const json& j) {
    Var v = var_from_name(j.at("variable").get<std::string>());
    std::vector<FactorPower> factors;
    for (auto& fj : j.at("factors"))
        factors.push_back({poly_from_json(fj.at("base")), scalar_from_json(fj.at("exponent"))});
    QuasiFactored f(v, factors, scalar_from_json(j.at("coeff")), poly_from_json(j.at("phi")),
                    scalar_from_json(j.at("k")));
    return f;
}

inline json diffop_to_json(const DiffOp& op) {
    json terms = json::array();
    for (auto& [order, c] : op.coefficients())
        terms.push_back(json::array({order, poly_to_json(c.num()), poly_to_json(c.den())}));
    return json{{"variable", var_name(op.var())}, {"terms", terms}};
}

inline DiffOp diffop_from_json(const json& j) {
    DiffOp op(var_from_name(j.at("variable").get<std::string>()));
    for (auto& t : j.at("terms"))
        op.set(t.at(0).get<int>(),
               RationalFunction(poly_from_json(t.at(1)), poly_from_json(t.at(2))));
    return op;
}

inline std::string real_to_string(const Real& r) { return r.str(40); }

inline json configuration_to_json(const VortexConfiguration& c) {
    json vortices = json::array();
    for (auto& v : c.vortices) {
        if (!v.q.is_real())
            throw std::invalid_argument("configuration: strengths must be real rationals");
        vortices.push_back(json{{"z", json::array({real_to_string(v.z.real()),
                                                   real_to_string(v.z.imag())})},
                                {"q", v.q.real().get_str()}});
    }
    json j{{"geometry", c.geometry == Geometry::plane ? "plane" : "cylinder"},
           {"k", json::array({real_to_string(c.k.real()), real_to_string(c.k.imag())})},
           {"precision_bits", c.precision_bits},
           {"vortices", vortices}};
    if (!c.provenance.empty()) {
        j["provenance"] = json::parse(c.provenance, nullptr, false);
        if (j["provenance"].is_discarded()) j["provenance"] = c.provenance;
    }
    return j;
}

inline VortexConfiguration configuration_from_json(const json& j) {
    VortexConfiguration c;
    std::string g = j.at("geometry").get<std::string>();
    if (g == "plane")
        c.geometry = Geometry::plane;
    else if (g == "cylinder")
        c.geometry = Geometry::cylinder;
    else
        throw std::invalid_argument("configuration: unknown geometry " + g);
    c.k = Complex(Real(j.at("k").at(0).get<std::string>()),
                  Real(j.at("k").at(1).get<std::string>()));
    c.precision_bits = j.value("precision_bits", kEnginePrecisionBits);
    for (auto& vj : j.at("vortices")) {
        Vortex v;
        v.z = Complex(Real(vj.at("z").at(0).get<std::string>()),
                      Real(vj.at("z").at(1).get<std::string>()));
        v.q = Scalar(parse_mpq(vj.at("q").get<std::string>()));
        c.vortices.push_back(v);
    }
    if (j.contains("provenance")) c.provenance = j["provenance"].dump();
    return c;
}

/// Positions-only CSV export: re,im,q per line.
inline std::string configuration_to_csv(const VortexConfiguration& c) {
    std::string out = "re,im,q\n";
    for (auto& v : c.vortices) {
        out += real_to_string(v.z.real()) + "," + real_to_string(v.z.imag()) + "," +
               v.q.real().get_str() + "\n";
    }
    return out;
}

}  // namespace vortexlab
