#include "pmlforge/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pmlforge {

namespace {
constexpr double kTol = 1e-14;
constexpr int kMaxLanden = 64;
}

double complete_elliptic_k_from_kprime(double kprime) {
    if (!(kprime > 0.0) || kprime > 1.0) throw std::invalid_argument("kprime must lie in (0, 1]");
    double a = 1.0;
    double b = kprime;
    for (int n = 0; n < kMaxLanden && std::abs(a - b) > kTol * a; ++n) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (2.0 * a);
}

JacobiValues jacobi_elliptic_from_kprime(double u, double kprime) {
    if (!(kprime > 0.0) || kprime > 1.0) throw std::invalid_argument("kprime must lie in (0, 1]");
    const double m = (1.0 - kprime) * (1.0 + kprime);  // k^2 without cancellation at k' near 1
    if (m < kTol) {
        // k ~ 0: circular limit plus the first-order Landen correction.
        const double sn = std::sin(u);
        const double cn = std::cos(u);
        return {sn - 0.25 * m * (u - sn * cn) * cn, cn + 0.25 * m * (u - sn * cn) * sn,
                1.0 - 0.5 * m * sn * sn};
    }

    double a[kMaxLanden + 1];
    double c[kMaxLanden + 1];
    a[0] = 1.0;
    c[0] = std::sqrt(m);
    double b = kprime;
    int n = 0;
    while (n < kMaxLanden && std::abs(c[n]) > kTol * a[n]) {
        const double an = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
        a[n] = an;
    }

    double phi = std::ldexp(a[n] * u, n);
    double phi1 = phi;  // phase one level down, needed for dn
    for (int j = n; j >= 1; --j) {
        const double t = std::clamp(c[j] * std::sin(phi) / a[j], -1.0, 1.0);
        phi1 = phi;
        phi = 0.5 * (phi + std::asin(t));
    }

    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    const double dcos = std::cos(phi1 - phi);
    double dn;
    if (std::abs(dcos) > 1e-4) {
        dn = cn / dcos;
    } else {
        dn = std::sqrt(1.0 - m * sn * sn);
    }
    return {sn, cn, dn};
}

}  // namespace pmlforge
