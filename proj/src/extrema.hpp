// Scalar max-scan used by the sweep summaries: Chebyshev sampling of a
// bracketed objective plus golden-section polish of every local maximum.
// The objective may return -inf to exclude a point (pole flagging); such
// samples never seed or win a bracket. Internal header.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace pmlforge::detail {

struct ScanMax {
    double arg = 0.0;
    double value = -std::numeric_limits<double>::infinity();
};

inline double golden_refine(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-14 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

inline ScanMax scan_max(const std::function<double(double)>& f, double lo, double hi, int n) {
    ScanMax best;
    if (!(hi > lo)) {
        best.arg = lo;
        best.value = f(lo);
        return best;
    }
    std::vector<double> xs(static_cast<std::size_t>(n)), fs(static_cast<std::size_t>(n));
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) {
        xs[std::size_t(i)] = mid - half * std::cos(M_PI * i / (n - 1));
        fs[std::size_t(i)] = f(xs[std::size_t(i)]);
    }
    auto consider = [&](double x, double v) {
        if (v > best.value) {
            best.arg = x;
            best.value = v;
        }
    };
    for (int i = 0; i < n; ++i) {
        const double v = fs[std::size_t(i)];
        if (v == -std::numeric_limits<double>::infinity()) continue;
        const bool left_ok = i == 0 || fs[std::size_t(i - 1)] <= v;
        const bool right_ok = i == n - 1 || fs[std::size_t(i + 1)] <= v;
        consider(xs[std::size_t(i)], v);
        if (left_ok && right_ok) {
            const double a = xs[std::size_t(i == 0 ? 0 : i - 1)];
            const double b = xs[std::size_t(i == n - 1 ? n - 1 : i + 1)];
            if (b > a) {
                const double xr = golden_refine(f, a, b);
                consider(xr, f(xr));
            }
        }
    }
    return best;
}

}  // namespace pmlforge::detail
