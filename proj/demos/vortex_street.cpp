// Two-soliton vortex street: build tau_2/tau_1, read off the strip
// positions, and check the periodic equilibrium condition.

#include <iostream>

#include "vortexlab/streets.hpp"
#include "vortexlab/verify.hpp"

using namespace vortexlab;

int main() {
    Scalar z1 = Scalar(1, 2) + Scalar::i() * Scalar(1, 3);
    Scalar z2 = Scalar(2) - Scalar::i();
    std::vector<std::pair<long, Scalar>> spec = {{1, z1}, {2, z2}};

    Poly tau1 = soliton_tau({{1, z1}});
    Poly tau2 = soliton_tau(spec);
    std::cout << "tau_1 = " << tau1.str() << "\n"
              << "tau_2 = " << tau2.str() << "\n"
              << "periodic Tkachenko residual: "
              << street_bilinear_residual(tau1, tau2, Scalar(1), Scalar(3)).str() << "\n\n";

    QuasiFactored psi = QuasiFactored(tau2) / QuasiFactored(tau1);
    VortexConfiguration cfg = config_from_eigenfunction(psi, Geometry::cylinder);
    std::cout << "vortices on the strip 0 <= Re z < pi (re, im, q):\n";
    for (auto& v : cfg.vortices)
        std::cout << "  " << v.z.real().str(8) << "  " << v.z.imag().str(8) << "  "
                  << v.q.str() << "\n";
    std::cout << "\nmax street residual: " << residual_street(cfg, cfg.k).str(6) << "\n";
    return residual_street(cfg, cfg.k) < Real("1e-9") ? 0 : 1;
}
