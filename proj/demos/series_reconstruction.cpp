// Expands two radial profiles in the zero-indexed Bessel basis and prints
// how the reconstruction error falls as terms are added. The polynomial cap
// vanishes at the rim, so its coefficients decay fast; the half Gaussian
// does not, so its interior error plateaus at the rim mismatch.

#include <cmath>
#include <cstdio>

#include "rbfwt/series.hpp"

using namespace rbfwt;

namespace {

void report(const char* name, double (*f)(double)) {
    std::printf("%s on the unit disk (n = 2):\n", name);
    std::printf("  %5s  %12s  %12s\n", "terms", "linf[0,0.9]", "weighted L2");
    for (int terms : {5, 10, 20, 40}) {
        const BesselSeries s = analyze(f, 2.0, 1.0, terms);
        std::printf("  %5d  %12.3e  %12.3e\n", terms,
                    reconstruction_error(s, f, error_norm::linf_interior),
                    reconstruction_error(s, f, error_norm::l2_weighted));
    }
    const BesselSeries s = analyze(f, 2.0, 1.0, 8);
    std::printf("  first coefficients (8-term fit): alpha0 = %.6f,", s.alpha0);
    for (double c : s.coeffs[0]) std::printf(" %.4f", c);
    std::printf("\n\n");
}

}  // namespace

int main() {
    report("1 - r^2", [](double r) { return 1.0 - r * r; });
    report("e^{-r^2/2}", [](double r) { return std::exp(-0.5 * r * r); });
    return 0;
}
