#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "pmlforge/elliptic.hpp"

using namespace pmlforge;

namespace {

// Independent check values via the standard library's K(k) and a
// Gauss-Legendre inversion of the incomplete integral for dn.
double k_from_kprime(double kprime) { return std::sqrt((1.0 - kprime) * (1.0 + kprime)); }

// u(phi) = int_0^phi dt / sqrt(1 - k^2 sin^2 t), 4-point Gauss-Legendre
// on [0, phi] split into 64 panels; enough headroom for moduli near 1.
double incomplete_f(double phi, double k) {
    static const double xs[4] = {0.0694318442029737, 0.3300094782075719,
                                 0.6699905217924281, 0.9305681557970263};
    static const double ws[4] = {0.1739274225687269, 0.3260725774312731,
                                 0.3260725774312731, 0.1739274225687269};
    double total = 0.0;
    const int panels = 64;
    for (int p = 0; p < panels; ++p) {
        const double lo = phi * p / panels;
        const double hi = phi * (p + 1) / panels;
        for (int i = 0; i < 4; ++i) {
            const double t = lo + (hi - lo) * xs[i];
            const double st = std::sin(t);
            total += ws[i] * (hi - lo) / std::sqrt(1.0 - k * k * st * st);
        }
    }
    return total;
}

// sn(u, k) by bisecting phi in u(phi) = u; dn = sqrt(1 - k^2 sn^2).
double dn_by_inversion(double u, double k) {
    double lo = 0.0, hi = M_PI / 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (incomplete_f(mid, k) < u ? lo : hi) = mid;
    }
    const double sn = std::sin(0.5 * (lo + hi));
    return std::sqrt(1.0 - k * k * sn * sn);
}

}  // namespace

TEST_CASE("complete integral agrees with std::comp_ellint_1") {
    // The reference is evaluated in long double: K is so sensitive to the
    // modulus near 1 that rounding k to double would swamp the comparison.
    for (double kp : {0.999, 0.9, 0.5, 0.25, 0.1, 0.01}) {
        const double ours = complete_elliptic_k_from_kprime(kp);
        const long double kl =
            std::sqrt((1.0L - (long double)kp) * (1.0L + (long double)kp));
        const double ref = (double)std::comp_ellint_1l(kl);
        CHECK(std::abs(ours - ref) < 1e-14 * ref);
    }
    {
        const double ours = complete_elliptic_k_from_kprime(1e-4);
        const long double kl = std::sqrt((1.0L - 1e-4L) * (1.0L + 1e-4L));
        const double ref = (double)std::comp_ellint_1l(kl);
        // Even in long double the modulus rounding costs ~1e-12 here.
        CHECK(std::abs(ours - ref) < 1e-11 * ref);
    }
    // kprime = 1 is the circular limit K = pi/2.
    CHECK(std::abs(complete_elliptic_k_from_kprime(1.0) - M_PI / 2.0) < 1e-15);
}

TEST_CASE("complete integral rejects bad moduli") {
    CHECK_THROWS(complete_elliptic_k_from_kprime(0.0));
    CHECK_THROWS(complete_elliptic_k_from_kprime(-0.5));
    CHECK_THROWS(complete_elliptic_k_from_kprime(1.5));
}

TEST_CASE("jacobi values at the quarter periods") {
    for (double kp : {0.9, 0.5, 0.2}) {
        const double K = complete_elliptic_k_from_kprime(kp);
        const JacobiValues at0 = jacobi_elliptic_from_kprime(0.0, kp);
        CHECK(std::abs(at0.sn) < 1e-15);
        CHECK(std::abs(at0.cn - 1.0) < 1e-15);
        CHECK(std::abs(at0.dn - 1.0) < 1e-15);

        const JacobiValues atK = jacobi_elliptic_from_kprime(K, kp);
        CHECK(std::abs(atK.sn - 1.0) < 1e-12);
        CHECK(std::abs(atK.cn) < 1e-7);  // cn vanishes like sqrt at K
        CHECK(std::abs(atK.dn - kp) < 1e-12);
    }
}

TEST_CASE("dn matches quadrature inversion of the defining integral") {
    for (double kp : {0.8, 0.4, 0.15}) {
        const double k = k_from_kprime(kp);
        const double K = complete_elliptic_k_from_kprime(kp);
        for (double frac : {0.15, 0.4, 0.65, 0.9}) {
            const double u = frac * K;
            const JacobiValues v = jacobi_elliptic_from_kprime(u, kp);
            CHECK(std::abs(v.dn - dn_by_inversion(u, k)) < 1e-11);
            // Pythagorean identities tie all three values together.
            CHECK(std::abs(v.sn * v.sn + v.cn * v.cn - 1.0) < 1e-13);
            CHECK(std::abs(v.dn * v.dn + k * k * v.sn * v.sn - 1.0) < 1e-13);
        }
    }
}

TEST_CASE("circular limit kprime = 1") {
    const JacobiValues v = jacobi_elliptic_from_kprime(0.7, 1.0);
    CHECK(std::abs(v.sn - std::sin(0.7)) < 1e-14);
    CHECK(std::abs(v.cn - std::cos(0.7)) < 1e-14);
    CHECK(std::abs(v.dn - 1.0) < 1e-14);
}
