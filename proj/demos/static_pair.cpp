// Build the n = 3 Adler-Moser pair, place unit vortices at the roots, and
// confirm the static equilibrium numerically.

#include <iostream>

#include "vortexlab/chains.hpp"
#include "vortexlab/verify.hpp"

using namespace vortexlab;

int main() {
    Scalar s1(1), s2(0);
    auto seq = adler_moser_sequence(3, {s1, s2});
    const Poly& p2 = seq[2];
    const Poly& p3 = seq[3];
    std::cout << "P2 = " << p2.str() << "\n"
              << "P3 = " << p3.str() << "\n"
              << "Tkachenko residual: "
              << bilinear_residual(p2, p3, Scalar(1)).str() << "\n\n";

    QuasiFactored psi = QuasiFactored(p3) / QuasiFactored(p2);
    VortexConfiguration cfg = config_from_eigenfunction(psi, Geometry::plane);
    std::cout << "vortices (re, im, q):\n";
    for (auto& v : cfg.vortices)
        std::cout << "  " << v.z.real().str(8) << "  " << v.z.imag().str(8) << "  "
                  << v.q.str() << "\n";
    std::cout << "\nmax equilibrium residual: " << residual_static(cfg).str(6) << "\n";
    std::cout << "scaling sum: " << invariant_checks(cfg).scaling_sum.str() << "\n";
    return residual_static(cfg) < Real("1e-9") ? 0 : 1;
}
