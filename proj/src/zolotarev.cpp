#include "pmlforge/zolotarev.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "pmlforge/elliptic.hpp"

namespace pmlforge {

namespace {

constexpr int kDenseSamples = 2001;
constexpr double kEqualRippleTol = 1e-6;

double ratio_abs(const Polynomial& t, Complex s) {
    const double den = std::abs(t.eval(-s));
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(t.eval(s)) / den;
}

// Golden-section maximization on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi, double* val) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 80 && (hi - lo) > 1e-15 * (std::abs(lo) + std::abs(hi)); ++it) {
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
    const double xm = 0.5 * (lo + hi);
    const double fm = f(xm);
    if (val) *val = fm;
    return xm;
}

std::vector<RatioExtremum> profile_extrema(const std::function<double(double)>& f, const Segment& seg) {
    const double a = seg.a;
    const double b = seg.b;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::vector<double> x(kDenseSamples);
    std::vector<double> v(kDenseSamples);
    for (int i = 0; i < kDenseSamples; ++i) {
        x[std::size_t(i)] = mid - half * std::cos(std::numbers::pi * double(i) / double(kDenseSamples - 1));
        v[std::size_t(i)] = f(x[std::size_t(i)]);
    }
    x.front() = a;
    x.back() = b;

    std::vector<RatioExtremum> out;
    auto push = [&](double param, double value) {
        // Merge near-coincident candidates, keeping the larger ripple.
        for (RatioExtremum& e : out) {
            if (std::abs(e.param - param) <= 1e-7 * (b - a)) {
                if (value > e.value) {
                    e.param = param;
                    e.value = value;
                    e.location = seg.point(param);
                }
                return;
            }
        }
        out.push_back({param, seg.point(param), value});
    };

    for (int i = 0; i < kDenseSamples; ++i) {
        const bool left_ok = (i == 0) || v[std::size_t(i)] >= v[std::size_t(i - 1)];
        const bool right_ok = (i == kDenseSamples - 1) || v[std::size_t(i)] >= v[std::size_t(i + 1)];
        if (!left_ok || !right_ok) continue;
        const double lo = x[std::size_t(std::max(i - 1, 0))];
        const double hi = x[std::size_t(std::min(i + 1, kDenseSamples - 1))];
        double val = 0.0;
        double param = golden_max(f, lo, hi, &val);
        // An endpoint beats any interior refinement of its bracket.
        if (i == 0 && v.front() >= val) {
            param = a;
            val = v.front();
        }
        if (i == kDenseSamples - 1 && v.back() >= val) {
            param = b;
            val = v.back();
        }
        push(param, val);
    }
    std::sort(out.begin(), out.end(), [](const RatioExtremum& p, const RatioExtremum& q) { return p.param < q.param; });
    return out;
}

// Ripple profile of a real-rooted candidate on the real parameterization;
// shared by the real segment and its rotation, which have identical values.
double real_profile(const std::vector<double>& roots, double sigma) {
    double r = 1.0;
    for (double xj : roots) r *= std::abs((sigma - xj) / (sigma + xj));
    return r;
}

// One Newton step on the equal-ripple system: unknown roots, equations
// log v_i - log v_{i+1} = 0 at the current extrema. Interior extrema are
// stationary points of the profile and endpoints are fixed, so the
// Jacobian needs no derivative of the extremal positions.
bool polish_step(std::vector<double>& roots, double a, double b) {
    const int k = static_cast<int>(roots.size());
    Segment seg{Segment::Axis::RealPositive, a, b};
    auto f = [&](double sigma) { return real_profile(roots, sigma); };
    std::vector<RatioExtremum> ext = profile_extrema(f, seg);
    if (static_cast<int>(ext.size()) != k + 1) return false;

    auto spread = [](const std::vector<RatioExtremum>& e) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (const RatioExtremum& x : e) {
            lo = std::min(lo, x.value);
            hi = std::max(hi, x.value);
        }
        return hi - lo;
    };
    const double spread0 = spread(ext);
    if (spread0 == 0.0) return false;

    auto dlog = [](double sigma, double xj) { return -1.0 / (sigma - xj) - 1.0 / (sigma + xj); };
    Eigen::MatrixXd J(k, k);
    Eigen::VectorXd F(k);
    for (int i = 0; i < k; ++i) {
        F(i) = std::log(ext[std::size_t(i)].value) - std::log(ext[std::size_t(i + 1)].value);
        for (int j = 0; j < k; ++j)
            J(i, j) = dlog(ext[std::size_t(i)].param, roots[std::size_t(j)]) -
                      dlog(ext[std::size_t(i + 1)].param, roots[std::size_t(j)]);
    }
    Eigen::VectorXd delta = J.fullPivLu().solve(-F);
    if (!delta.allFinite()) return false;

    std::vector<double> trial = roots;
    for (int j = 0; j < k; ++j) trial[std::size_t(j)] += delta(j);
    for (int j = 0; j < k; ++j)
        if (!(trial[std::size_t(j)] > a && trial[std::size_t(j)] < b)) return false;
    for (int j = 1; j < k; ++j)
        if (trial[std::size_t(j)] <= trial[std::size_t(j - 1)]) return false;

    auto ftrial = [&](double sigma) { return real_profile(trial, sigma); };
    std::vector<RatioExtremum> ext2 = profile_extrema(ftrial, seg);
    if (static_cast<int>(ext2.size()) != k + 1 || spread(ext2) >= spread0) return false;
    roots = std::move(trial);
    return true;
}

MinimaxSolution finish_real(std::vector<double> roots, double a, double b) {
    Segment seg{Segment::Axis::RealPositive, a, b};
    auto f = [&](double sigma) { return real_profile(roots, sigma); };
    MinimaxSolution sol;
    sol.segment = seg;
    sol.extrema = profile_extrema(f, seg);
    sol.max_ratio = 0.0;
    for (const RatioExtremum& e : sol.extrema) sol.max_ratio = std::max(sol.max_ratio, e.value);
    std::vector<Complex> croots(roots.begin(), roots.end());
    sol.t = Polynomial::from_roots(Complex(1.0), std::move(croots));
    return sol;
}

}  // namespace

MinimaxSolution solve_real(double a, double b, int k) {
    if (!(a > 0.0) || !(b >= a) || !std::isfinite(b)) throw std::invalid_argument("segment must satisfy 0 < a <= b");
    if (k < 1 || k > 20) throw std::invalid_argument("degree must lie in [1, 20]");

    if (a == b) {
        MinimaxSolution sol;
        sol.segment = {Segment::Axis::RealPositive, a, b};
        sol.t = Polynomial::from_roots(Complex(1.0), std::vector<Complex>(std::size_t(k), Complex(a)));
        sol.max_ratio = 0.0;
        sol.extrema = {{a, Complex(a), 0.0}};
        return sol;
    }

    const double kp = a / b;
    const double K = complete_elliptic_k_from_kprime(kp);
    std::vector<double> roots(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) {
        const double u = (2.0 * j - 1.0) * K / (2.0 * k);
        roots[std::size_t(j - 1)] = b * jacobi_elliptic_from_kprime(u, kp).dn;
    }
    std::sort(roots.begin(), roots.end());

    polish_step(roots, a, b);  // guarded; a no-op when the closed form is already extremal
    return finish_real(std::move(roots), a, b);
}

MinimaxSolution solve_imaginary(double a, double b, int k) {
    MinimaxSolution real_sol = solve_real(a, b, k);
    MinimaxSolution sol;
    sol.segment = {Segment::Axis::ImaginaryPositive, a, b};
    std::vector<Complex> roots;
    roots.reserve(real_sol.t.roots().size());
    for (const Complex& r : real_sol.t.roots()) roots.push_back(Complex(0.0, r.real()));
    sol.t = Polynomial::from_roots(Complex(1.0), std::move(roots));
    sol.max_ratio = real_sol.max_ratio;  // identical profile, copied bitwise
    sol.extrema.reserve(real_sol.extrema.size());
    for (const RatioExtremum& e : real_sol.extrema)
        sol.extrema.push_back({e.param, sol.segment.point(e.param), e.value});
    return sol;
}

std::vector<RatioExtremum> ratio_extrema(const Polynomial& t, const Segment& seg) {
    auto f = [&](double sigma) { return ratio_abs(t, seg.point(sigma)); };
    if (seg.a == seg.b) return {{seg.a, seg.point(seg.a), f(seg.a)}};
    return profile_extrema(f, seg);
}

EquioscillationReport equioscillation_check(const MinimaxSolution& sol, const Segment& seg) {
    EquioscillationReport rep;
    rep.expected_count = sol.t.degree() + 1;
    rep.extrema = ratio_extrema(sol.t, seg);
    rep.found_count = static_cast<int>(rep.extrema.size());
    if (seg.a == seg.b) {
        rep.expected_count = 1;
        rep.pass = sol.max_ratio == 0.0;
        return rep;
    }
    if (sol.max_ratio <= 0.0) {
        rep.pass = false;
        return rep;
    }
    for (const RatioExtremum& e : rep.extrema)
        rep.max_rel_deviation = std::max(rep.max_rel_deviation, std::abs(e.value - sol.max_ratio) / sol.max_ratio);
    rep.pass = rep.found_count == rep.expected_count && rep.max_rel_deviation <= kEqualRippleTol;
    return rep;
}

double segment_ratio_max(const Polynomial& t, const Segment& seg) {
    double m = 0.0;
    for (const RatioExtremum& e : ratio_extrema(t, seg)) m = std::max(m, e.value);
    return m;
}

}  // namespace pmlforge
