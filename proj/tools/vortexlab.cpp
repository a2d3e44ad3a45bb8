// Command-line front end: generate stationary vortex families, verify
// configuration documents, find polynomial roots, export positions, and run
// the exact-identity self-test suite.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "vortexlab/families.hpp"
#include "vortexlab/sk_hierarchy.hpp"

using namespace vortexlab;

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitBadInput = 2;

int default_precision_bits() {
    if (const char* env = std::getenv("VORTEXLAB_PRECISION_BITS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return kEnginePrecisionBits;
}

std::map<std::string, Scalar> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, Scalar> out;
    for (auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--param expects NAME=VALUE, got: " + kv);
        out[kv.substr(0, eq)] = Scalar::parse(kv.substr(eq + 1));
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text << "\n";
}

int run_generate(const FamilySpec& spec, const std::string& out_path, int precision_bits,
                 const std::string& format) {
    GeneratedFamily fam = generate(spec);
    VortexConfiguration cfg =
        config_from_eigenfunction(fam.carrier, fam.geometry, precision_bits);
    cfg.provenance = fam.provenance;
    if (fam.geometry == Geometry::plane) cfg.k = to_complex(fam.background);

    if (format == "csv") {
        write_text(out_path, configuration_to_csv(cfg));
        return 0;
    }
    json doc;
    doc["spec"] = spec.to_json();
    json polys = json::object();
    for (auto& [name, p] : fam.polynomials) polys[name] = poly_to_json(p);
    doc["polynomials"] = polys;
    doc["eigenfunction"] = quasifactored_to_json(fam.carrier);
    doc["configuration"] = configuration_to_json(cfg);
    write_text(out_path, doc.dump(2));
    return 0;
}

int run_verify(const std::string& path, const Real& tol) {
    json j = read_json_file(path);
    VortexConfiguration cfg =
        configuration_from_json(j.contains("configuration") ? j.at("configuration") : j);
    Real residual = cfg.geometry == Geometry::cylinder ? residual_street(cfg, cfg.k)
                                                       : residual_stationary(cfg, cfg.k);
    InvariantSums inv = invariant_checks(cfg);
    bool translating = abs(cfg.k) > Real("1e-30");
    std::cout << "geometry:        "
              << (cfg.geometry == Geometry::cylinder ? "cylinder" : "plane") << "\n"
              << "vortices:        " << cfg.vortices.size() << "\n"
              << "equilibrium residual: " << residual.str(6) << "\n"
              << "scaling sum:     " << inv.scaling_sum.str() << "\n"
              << "neutrality sum:  " << inv.neutrality_sum.str() << "\n";
    if (translating && !inv.neutrality_sum.is_zero()) {
        std::cout << "FAIL: translating configuration violates the neutrality condition\n";
        return kExitVerifyFailure;
    }
    if (residual >= tol) {
        std::cout << "FAIL: residual above tolerance " << tol.str(3) << "\n";
        return kExitVerifyFailure;
    }
    std::cout << "PASS\n";
    return 0;
}

int run_roots(const std::string& path, int precision_bits, const Real& tol) {
    json j = read_json_file(path);
    Poly p = poly_from_json(j.contains("polynomial") ? j.at("polynomial") : j);
    RootResult r = aberth_roots(p, precision_bits, tol);
    if (!r.converged) {
        std::cout << "FAIL: root iteration did not converge (partial results follow)\n";
    }
    for (auto& root : r.roots)
        std::cout << real_to_string(root.real()) << " " << real_to_string(root.imag()) << "\n";
    return r.converged ? 0 : kExitVerifyFailure;
}

int run_export(const std::string& in_path, const std::string& out_path) {
    json j = read_json_file(in_path);
    VortexConfiguration cfg =
        configuration_from_json(j.contains("configuration") ? j.at("configuration") : j);
    write_text(out_path, configuration_to_csv(cfg));
    return 0;
}

// one exact identity plus one numeric equilibrium per family
int run_selftest(unsigned long seed) {
    std::mt19937_64 eng(seed);
    auto rnd = [&]() {
        long num = 0;
        while (num == 0) num = static_cast<long>(eng() % 19) - 9;
        return Scalar(num, static_cast<long>(eng() % 9) + 1);
    };
    const Real tol("1e-9");
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    try {
        Scalar s1 = rnd(), s2 = rnd();
        auto seq = adler_moser_sequence(5, {s1, s2, rnd(), rnd()});
        bool ok = true;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i)
            ok = ok && bilinear_residual(seq[i], seq[i + 1], Scalar(1)).is_zero();
        VortexConfiguration c = config_from_eigenfunction(
            QuasiFactored(seq[4]) / QuasiFactored(seq[3]), Geometry::plane);
        report("adler_moser: bilinear identity and static residual",
               ok && residual_static(c) < tol);
    } catch (std::exception& e) {
        report(std::string("adler_moser: ") + e.what(), false);
    }

    try {
        auto ch = lambda2_chain(3, +1, {rnd(), rnd(), rnd()}, {Scalar(0), rnd(), rnd()});
        bool ok = bilinear_residual(ch.p[2], ch.q[2], Scalar(2)).is_zero() &&
                  bilinear_residual(ch.p[2], ch.q[3], Scalar(2)).is_zero();
        auto nb = lambda2_chain(2, -1, {Scalar(0), rnd()}, {rnd(), rnd()});
        ok = ok && bilinear_residual(nb.p[2], nb.q[2], Scalar(2)).is_zero();
        report("lambda2: bilinear identity on both branches", ok);
    } catch (std::exception& e) {
        report(std::string("lambda2: ") + e.what(), false);
    }

    try {
        auto r = even_bispectral_sequence(4, {Scalar(0), rnd(), rnd()});
        auto& seq = std::get<std::vector<Poly>>(r);
        bool ok = obstructed(even_bispectral(3, {rnd(), rnd()}));
        Poly q3 = seq[3].shifted(-1);
        ok = ok && generalized_tkachenko_residual(seq[2], q3, Scalar(1, 2)).is_zero();
        report("even_bispectral: obstruction and generalized Tkachenko identity", ok);
    } catch (std::exception& e) {
        report(std::string("even_bispectral: ") + e.what(), false);
    }

    try {
        Poly one(Var::z, Scalar(1));
        auto seq = kwcc_chain(one, Poly::monomial(Var::z, 2), Scalar(1, 2), 10,
                              {Scalar(0), Scalar(0), rnd(), rnd(), rnd()});
        report("kwcc: terminating sequence reaches the degree-26 member",
               seq.taus.size() == 7 && seq.taus[5].degree() == 26 && seq.terminated);
    } catch (std::exception& e) {
        report(std::string("kwcc: ") + e.what(), false);
    }

    try {
        Scalar k = rnd();
        FamilySpec ts{Family::translating, 3, {{"k", k}, {"s1", rnd()}, {"s2", rnd()}}};
        GeneratedFamily fam = generate(ts);
        VortexConfiguration c = config_from_eigenfunction(fam.carrier, Geometry::plane);
        report("translating: neutrality and stationary residual",
               invariant_checks(c).neutrality_sum.is_zero() &&
                   residual_translating(c, to_complex(k)) < tol);
    } catch (std::exception& e) {
        report(std::string("translating: ") + e.what(), false);
    }

    try {
        auto g = [&]() { return rnd() + Scalar::i() * rnd(); };
        Scalar z1 = g(), z2 = g();
        Poly t1 = soliton_tau({{1, z1}});
        Poly t2 = soliton_tau({{1, z1}, {2, z2}});
        bool ok = street_bilinear_residual(t1, t2, Scalar(1), Scalar(3)).is_zero();
        VortexConfiguration c = config_from_eigenfunction(
            QuasiFactored(t2) / QuasiFactored(t1), Geometry::cylinder);
        report("soliton_street: periodic Tkachenko identity and street residual",
               ok && residual_street(c, c.k) < tol);
    } catch (std::exception& e) {
        report(std::string("soliton_street: ") + e.what(), false);
    }

    try {
        std::vector<Scalar> zetas = {rnd(), rnd()};
        auto seq = even_street_sequence(2, zetas, 2);
        VortexConfiguration c = config_from_eigenfunction(seq[1], Geometry::cylinder);
        report("even_street: half-integer charges in street equilibrium",
               residual_street(c, c.k) < tol);
    } catch (std::exception& e) {
        report(std::string("even_street: ") + e.what(), false);
    }

    try {
        TimesAssignment t;
        t.reduction = TimesAssignment::Reduction::sk;
        Scalar t5 = rnd(), c4 = rnd();
        t.t[5] = t5;
        Poly q2 = sk_tau(2, t, {{4, c4}});
        bool ok = extract_lambda2_s(q2, 2) == Scalar(-40) * c4;
        DiffOp t1 = sato_intertwiner(SatoFamily::sk, 1,
                                     TimesAssignment{TimesAssignment::Reduction::sk, {}}, {});
        ok = ok && t1.order() == 1;
        report("sk_hierarchy: Pfaffian tau and Sato intertwiner", ok);
    } catch (std::exception& e) {
        report(std::string("sk_hierarchy: ") + e.what(), false);
    }

    std::cout << (failures == 0 ? "selftest: all families ok" : "selftest: FAILURES") << "\n";
    return failures == 0 ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortexlab: exact stationary point-vortex configurations"};
    app.require_subcommand(1);

    std::string family_str, out_path, format = "json", input_path;
    long n = 1;
    std::string branch;
    std::vector<std::string> params;
    int precision_bits = default_precision_bits();
    std::string tol_str = "1e-9";
    unsigned long seed = 0;

    std::string geometry_str, k_str;

    auto* gen = app.add_subcommand("generate", "generate a family member and its configuration");
    gen->add_option("--family", family_str, "family id")->required();
    gen->add_option("--n", n, "member index")->required();
    gen->add_option("--branch", branch, "+ or - (lambda2 shorthand)");
    gen->add_option("--param", params, "NAME=VALUE exact rational, repeatable");
    gen->add_option("--geometry", geometry_str, "plane or cylinder (validated against the family)")
        ->check(CLI::IsMember({"plane", "cylinder"}));
    gen->add_option("--k", k_str, "background rate (shorthand for --param k=...)");
    gen->add_option("--out", out_path, "output path (default stdout)");
    gen->add_option("--format", format, "json or csv")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
    gen->add_option("--precision-bits", precision_bits, "working precision for positions")->capture_default_str();

    auto* ver = app.add_subcommand("verify", "verify a configuration document");
    ver->add_option("input", input_path, "configuration json")->required();
    ver->add_option("--tol", tol_str, "equilibrium residual tolerance")->capture_default_str();

    auto* rts = app.add_subcommand("roots", "roots of a polynomial document");
    rts->add_option("input", input_path, "polynomial json")->required();
    rts->add_option("--precision-bits", precision_bits, "working precision")->capture_default_str();
    rts->add_option("--tol", tol_str, "root residual tolerance");

    auto* exp = app.add_subcommand("export", "positions-only csv export");
    exp->add_option("input", input_path, "configuration json")->required();
    exp->add_option("--out", out_path, "output path (default stdout)");

    auto* st = app.add_subcommand("selftest", "run the exact-identity suite");
    st->add_option("--seed", seed, "seed for the randomized parameter points")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            FamilySpec spec;
            std::string fam = family_str;
            if (!branch.empty() && family_str == "lambda2")
                fam = branch == "-" ? "lambda2_minus" : "lambda2_plus";
            spec.family = family_from_name(fam);
            spec.n = n;
            spec.params = parse_params(params);
            if (!k_str.empty()) spec.params["k"] = Scalar::parse(k_str);
            if (!geometry_str.empty()) {
                bool cylinder = spec.family == Family::soliton_street;
                if ((geometry_str == "cylinder") != cylinder)
                    throw std::invalid_argument("--geometry does not match the family");
            }
            return run_generate(spec, out_path, precision_bits, format);
        }
        if (ver->parsed()) return run_verify(input_path, Real(tol_str));
        if (rts->parsed())
            return run_roots(input_path, precision_bits,
                             tol_str == "1e-9" ? Real("1e-30") : Real(tol_str));
        if (exp->parsed()) return run_export(input_path, out_path);
        if (st->parsed()) return run_selftest(seed);
    } catch (std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
    return 0;
}
