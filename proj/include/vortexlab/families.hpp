#pragma once

#include "vortexlab/chains.hpp"
#include "vortexlab/darboux.hpp"
#include "vortexlab/serialize.hpp"
#include "vortexlab/streets.hpp"

namespace vortexlab {

enum class Family {
    adler_moser,
    lambda2_plus,
    lambda2_minus,
    even_bispectral,
    kwcc,
    lambda2_terminating,
    translating,
    soliton_street,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::adler_moser: return "adler_moser";
        case Family::lambda2_plus: return "lambda2_plus";
        case Family::lambda2_minus: return "lambda2_minus";
        case Family::even_bispectral: return "even_bispectral";
        case Family::kwcc: return "kwcc";
        case Family::lambda2_terminating: return "lambda2_terminating";
        case Family::translating: return "translating";
        default: return "soliton_street";
    }
}

inline Family family_from_name(const std::string& s) {
    for (Family f : {Family::adler_moser, Family::lambda2_plus, Family::lambda2_minus,
                     Family::even_bispectral, Family::kwcc, Family::lambda2_terminating,
                     Family::translating, Family::soliton_street})
        if (s == family_name(f)) return f;
    throw std::invalid_argument("unknown family: " + s);
}

/// Family selector with its index and named exact parameters; the CLI-facing
/// configuration document form of a chain request.
struct FamilySpec {
    Family family = Family::adler_moser;
    long n = 1;
    std::map<std::string, Scalar> params;

    Scalar param(const std::string& name) const {
        auto it = params.find(name);
        if (it == params.end())
            throw std::invalid_argument("missing parameter " + name + " for family " +
                                        family_name(family));
        return it->second;
    }
    Scalar param_or(const std::string& name, const Scalar& dflt) const {
        auto it = params.find(name);
        return it == params.end() ? dflt : it->second;
    }

    json to_json() const {
        json p = json::object();
        for (auto& [k, v] : params) p[k] = scalar_to_json(v);
        return json{{"family", family_name(family)}, {"n", n}, {"params", p}};
    }
    static FamilySpec from_json(const json& j) {
        FamilySpec s;
        s.family = family_from_name(j.at("family").get<std::string>());
        s.n = j.at("n").get<long>();
        if (j.contains("params"))
            for (auto& [k, v] : j.at("params").items()) s.params[k] = scalar_from_json(v);
        return s;
    }
};

/// A generated family instance: the named polynomial members, the
/// charge-reading carrier (exponents are vortex strengths), and the
/// geometry/background of its equilibrium.
struct GeneratedFamily {
    std::map<std::string, Poly> polynomials;
    QuasiFactored carrier{Var::z};
    Geometry geometry = Geometry::plane;
    Scalar background;  // plane-wave rate of the carrier
    std::string provenance;
};

namespace famdetail {

inline std::vector<Scalar> indexed_params(const FamilySpec& spec, const std::string& prefix,
                                          long from, long to) {
    std::vector<Scalar> out;
    for (long i = from; i <= to; ++i)
        out.push_back(spec.param(prefix + std::to_string(i)));
    return out;
}

}  // namespace famdetail

inline GeneratedFamily generate(const FamilySpec& spec) {
    GeneratedFamily out;
    out.provenance = spec.to_json().dump();
    switch (spec.family) {
        case Family::adler_moser: {
            if (spec.n < 1) throw std::invalid_argument("adler_moser: n >= 1");
            auto s = famdetail::indexed_params(spec, "s", 1, spec.n - 1);
            auto seq = adler_moser_sequence(spec.n, s);
            out.polynomials["P" + std::to_string(spec.n)] = seq.back();
            out.polynomials["P" + std::to_string(spec.n - 1)] = seq[seq.size() - 2];
            out.carrier = QuasiFactored(seq.back()) / QuasiFactored(seq[seq.size() - 2]);
            break;
        }
        case Family::lambda2_plus:
        case Family::lambda2_minus: {
            if (spec.n < 1) throw std::invalid_argument("lambda2: n >= 1");
            bool plus = spec.family == Family::lambda2_plus;
            std::string sfx = plus ? "" : "-";
            std::vector<Scalar> r, s;
            for (long i = 1; i <= spec.n; ++i) {
                std::string rn = "r" + sfx + std::to_string(i);
                std::string sn = "s" + sfx + std::to_string(i);
                // q_1 = z (positive) and p_{-1} = z (negative) fix the z-shift:
                // s_1 and r_{-1} are not free; unsupplied parameters default to 0
                r.push_back(!plus && i == 1 ? Scalar(0) : spec.param_or(rn, Scalar(0)));
                s.push_back(plus && i == 1 ? Scalar(0) : spec.param_or(sn, Scalar(0)));
            }
            auto ch = lambda2_chain(spec.n, plus ? +1 : -1, r, s);
            std::string qn = "q" + sfx + std::to_string(spec.n);
            std::string pn = "p" + sfx + std::to_string(spec.n - 1);
            if (plus) {
                out.polynomials[qn] = ch.q.back();
                out.polynomials["p" + std::to_string(spec.n - 1)] = ch.p[ch.p.size() - 2];
                out.carrier = QuasiFactored(ch.q.back()).pow(Scalar(2)) /
                              QuasiFactored(ch.p[ch.p.size() - 2]);
            } else {
                out.polynomials[qn] = ch.q.back();
                out.polynomials["p-" + std::to_string(spec.n)] = ch.p.back();
                out.carrier =
                    QuasiFactored(ch.q.back()).pow(Scalar(2)) / QuasiFactored(ch.p.back());
            }
            break;
        }
        case Family::even_bispectral: {
            if (spec.n < 1) throw std::invalid_argument("even_bispectral: n >= 1");
            auto s = famdetail::indexed_params(spec, "s", 1, spec.n - 1);
            auto r = even_bispectral_sequence(spec.n, s);
            if (std::holds_alternative<ChainObstruction>(r))
                throw std::domain_error(
                    "even_bispectral: obstruction (a logarithmic term would arise); "
                    "the termination constraints on s_i are violated");
            auto seq = std::get<std::vector<Poly>>(r);
            out.polynomials["P" + std::to_string(spec.n)] = seq.back();
            out.polynomials["P" + std::to_string(spec.n - 1)] = seq[seq.size() - 2];
            out.carrier = QuasiFactored(seq.back()) / QuasiFactored(seq[seq.size() - 2]);
            break;
        }
        case Family::kwcc:
        case Family::lambda2_terminating: {
            // tau_0 = 1 and tau_1 = z^{d_1}; the published terminating
            // Lambda = 2 family is d_1 = 2 with gamma_1 = 1/2
            long d1 = 2;
            Scalar gamma1(1, 2);
            if (spec.family == Family::kwcc) {
                d1 = spec.param_or("d1", Scalar(2)).to_long();
                gamma1 = spec.param_or("gamma1", Scalar(1, 2));
            }
            if (spec.n < 2) throw std::invalid_argument("kwcc: n >= 2");
            std::vector<Scalar> steps;
            for (long k = 2; k <= spec.n; ++k) {
                std::string name;
                if (spec.family == Family::kwcc)
                    name = "c" + std::to_string(k);
                else
                    name = (k % 2 == 0 ? "s" + std::to_string(k / 2)
                                       : "r" + std::to_string((k - 1) / 2));
                steps.push_back(spec.param_or(name, Scalar(0)));
            }
            Poly tau0(Var::z, Scalar(1));
            Poly tau1 = Poly::monomial(Var::z, d1);
            auto ch = kwcc_chain(tau0, tau1, gamma1, spec.n - 1, steps);
            if (ch.terminated && static_cast<long>(ch.taus.size()) != spec.n + 1)
                throw std::domain_error("kwcc: chain terminates before n (obstruction row: " +
                                        ch.obstruction_residual.str() + ")");
            for (std::size_t i = 0; i < ch.taus.size(); ++i)
                out.polynomials["tau" + std::to_string(i)] = ch.taus[i];
            Scalar glast = ch.gammas.back();
            out.carrier = QuasiFactored(ch.taus.back()).pow(glast) /
                          QuasiFactored(ch.taus[ch.taus.size() - 2]);
            break;
        }
        case Family::translating: {
            if (spec.n < 1) throw std::invalid_argument("translating: n >= 1");
            Scalar k = spec.param("k");
            std::vector<Poly> xs = {Poly::variable(Var::z)};
            for (long i = 1; i < spec.n; ++i) {
                Poly dd = Scalar(2 * i + 1) * xs.back();
                Poly prim(Var::z);
                for (auto& [e, c] : dd.terms()) prim.set(e + 2, c / Scalar((e + 1) * (e + 2)));
                prim.set(0, prim.coeff(0) + spec.param_or("s" + std::to_string(i), Scalar(0)));
                xs.push_back(prim);
            }
            std::vector<QuasiFactored> seeds;
            for (auto& x : xs) seeds.push_back(QuasiFactored(x));
            QuasiFactored wn = wronskian(seeds);
            seeds.push_back(QuasiFactored::exponential(Var::z, k));
            out.carrier = wronskian(seeds) / wn;
            RationalFunction q = wn.to_rational();
            out.polynomials["q"] = q.num().monic();
            out.background = k;
            break;
        }
        case Family::soliton_street: {
            if (spec.n < 1) throw std::invalid_argument("soliton_street: n >= 1");
            std::vector<std::pair<long, Scalar>> seeds;
            for (long i = 1; i <= spec.n; ++i)
                seeds.push_back({spec.param("k" + std::to_string(i)).to_long(),
                                 spec.param("zhat" + std::to_string(i))});
            Poly taun = soliton_tau(seeds);
            out.polynomials["tau" + std::to_string(spec.n)] = taun;
            Scalar k = spec.param_or("k", Scalar(0));
            if (k.is_zero()) {
                std::vector<std::pair<long, Scalar>> prev(seeds.begin(), seeds.end() - 1);
                Poly taup = prev.empty() ? Poly(Var::xi, Scalar(1)) : soliton_tau(prev);
                if (!prev.empty())
                    out.polynomials["tau" + std::to_string(spec.n - 1)] = taup;
                out.carrier = QuasiFactored(taun) / QuasiFactored(taup);
            } else {
                out.carrier = periodic_ba(seeds, k);
            }
            out.geometry = Geometry::cylinder;
            out.background = k;
            break;
        }
    }
    if (spec.family != Family::translating && spec.family != Family::soliton_street)
        out.background = out.carrier.rate();
    return out;
}

}  // namespace vortexlab
