#include "pmlforge/balance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace pmlforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMultistarts = 50;
constexpr int kCoarseSamples = 257;
constexpr std::uint64_t kProbeSeed = 0x5eed5eedULL;

double ratio_of(double me, double mp) {
    if (mp == 0.0) return me == 0.0 ? 1.0 : kInf;
    return me / mp;
}

// |t(s)/t(-s)| for t = prod (s - r_j); |-s - r| = |s + r|, so the ratio
// is prod |s - r_j| / |s + r_j| and no expansion is needed.
double root_ratio(const std::vector<Complex>& roots, Complex s) {
    double num = 1.0;
    double den = 1.0;
    for (const Complex& r : roots) {
        num *= std::abs(s - r);
        den *= std::abs(s + r);
    }
    if (den == 0.0) return kInf;
    return num / den;
}

double coarse_segment_max(const std::vector<Complex>& roots, const Segment& seg, int n) {
    double best = 0.0;
    const double mid = 0.5 * (seg.a + seg.b);
    const double half = 0.5 * (seg.b - seg.a);
    for (int i = 0; i < n; ++i) {
        const double sigma = n == 1 ? mid : mid - half * std::cos(M_PI * i / (n - 1.0));
        best = std::max(best, root_ratio(roots, seg.point(sigma)));
    }
    return best;
}

double objective_coarse(const std::vector<Complex>& roots, const Segment& se, const Segment& sp) {
    return std::max(coarse_segment_max(roots, se, kCoarseSamples),
                    coarse_segment_max(roots, sp, kCoarseSamples));
}

double objective_precise(const std::vector<Complex>& roots, const Segment& se, const Segment& sp) {
    const Polynomial t = Polynomial::from_roots(Complex(1.0), roots);
    return std::max(segment_ratio_max(t, se), segment_ratio_max(t, sp));
}

// Plain Nelder-Mead; the callers reparametrize so the domain is free.
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step, int max_iter) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step * (1.0 + std::abs(x0[i]));
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    std::vector<std::size_t> order(n + 1);
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second = order[n - 1];
        if (vals[worst] - vals[best] <= 1e-13 * (1.0 + std::abs(vals[best]))) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + coef * (pts[worst][j] - centroid[j]);
            return p;
        };
        const std::vector<double> refl = blend(-1.0);
        const double fr = f(refl);
        if (fr < vals[best]) {
            const std::vector<double> exp_p = blend(-2.0);
            const double fe = f(exp_p);
            pts[worst] = fe < fr ? exp_p : refl;
            vals[worst] = std::min(fe, fr);
        } else if (fr < vals[second]) {
            pts[worst] = refl;
            vals[worst] = fr;
        } else {
            const std::vector<double> con = blend(fr < vals[worst] ? -0.5 : 0.5);
            const double fc = f(con);
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = con;
                vals[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (vals[i] < vals[best]) best = i;
    return pts[best];
}

struct RawSplit {
    int l = 0;
    double max_e = 0.0;
    double max_p = 0.0;
    std::vector<Complex> roots;  // t_e roots then t_p roots
};

RawSplit best_raw_split(const SpectralWindow& window, int k_total) {
    const Segment se = window.evanescent_segment();
    const Segment sp = window.propagative_segment();
    RawSplit best;
    double best_obj = kInf;
    for (int l = 1; l <= k_total - 1; ++l) {
        const MinimaxSolution sol_e = solve_real(se.a, se.b, l);
        const MinimaxSolution sol_p = solve_imaginary(sp.a, sp.b, k_total - l);
        const double obj = std::max(sol_e.max_ratio, sol_p.max_ratio);
        if (obj < best_obj) {
            best_obj = obj;
            best.l = l;
            best.max_e = sol_e.max_ratio;
            best.max_p = sol_p.max_ratio;
            best.roots = sol_e.t.roots();
            for (const Complex& r : sol_p.t.roots()) best.roots.push_back(r);
        }
    }
    return best;
}

}  // namespace

std::pair<LayerDesign, BalanceReport> design_balanced(const SpectralWindow& window, int k_total,
                                                      int tail_power) {
    window.validate();
    if (k_total < 2 || k_total > 20) throw std::invalid_argument("k_total must lie in [2, 20]");

    BalanceReport report;
    report.window = window;
    report.k_total = k_total;

    std::vector<LayerDesign> designs;
    for (int l = 1; l <= k_total - 1; ++l) {
        if (tail_power == 1 && (k_total - l) % 2 != 0) continue;
        LayerDesign d = build_composite(window, k_total, l, tail_power);
        SplitCandidate c;
        c.l = l;
        c.max_e = d.achieved.max_reflection_evanescent;
        c.max_p = d.achieved.max_reflection_propagative;
        c.ratio = ratio_of(c.max_e, c.max_p);
        report.per_split.push_back(c);
        designs.push_back(std::move(d));
    }
    if (designs.empty())
        throw std::invalid_argument("no admissible split for this tail_power and k_total");

    std::size_t chosen = 0;
    for (std::size_t i = 1; i < designs.size(); ++i) {
        const SplitCandidate& a = report.per_split[i];
        const SplitCandidate& b = report.per_split[chosen];
        if (std::max(a.max_e, a.max_p) < std::max(b.max_e, b.max_p)) chosen = i;
    }
    for (const SplitCandidate& c : report.per_split) {
        const double worst = std::max(c.max_e, c.max_p);
        const double won = std::max(report.per_split[chosen].max_e, report.per_split[chosen].max_p);
        if (worst < won) throw std::logic_error("split argmin re-scan failed");
    }
    report.chosen_l = report.per_split[chosen].l;
    report.balanced = designs[chosen].balanced;
    return {std::move(designs[chosen]), std::move(report)};
}

ProbeReport conjecture_probe(const std::vector<SpectralWindow>& windows, int k_total) {
    if (k_total < 2 || k_total > 20) throw std::invalid_argument("k_total must lie in [2, 20]");
    ProbeReport report;
    report.k_total = k_total;
    for (const SpectralWindow& window : windows) {
        window.validate();
        const RawSplit split = best_raw_split(window, k_total);
        ProbeWindowResult r;
        r.window = window;
        r.chosen_l = split.l;
        r.max_e = split.max_e;
        r.max_p = split.max_p;
        r.gap_ratio = ratio_of(split.max_e, split.max_p);
        r.construction = std::max(split.max_e, split.max_p);
        if (k_total <= 4) {
            r.brute_force = joint_minimax_bruteforce(window, k_total);
            r.excess_ratio = r.construction / r.brute_force;
        } else {
            r.brute_force = std::numeric_limits<double>::quiet_NaN();
            r.excess_ratio = std::numeric_limits<double>::quiet_NaN();
        }
        report.windows.push_back(r);
    }
    return report;
}

double joint_minimax_bruteforce(const SpectralWindow& window, int k_total) {
    window.validate();
    if (k_total < 2 || k_total > 4)
        throw std::invalid_argument("brute-force search is desk scale: k_total in [2, 4]");
    const Segment se = window.evanescent_segment();
    const Segment sp = window.propagative_segment();

    // Each root is confined to one of the two segments by a pattern bit
    // and a smooth coordinate, sigma = a + (b - a) sin^2(theta): the
    // simplex stays unconstrained while the roots cannot leave the
    // admissible set. A root off the segments would not be realizable as
    // a layer, so it is outside the comparison class.
    const auto roots_of = [&](int pattern, const std::vector<double>& theta) {
        std::vector<Complex> roots(theta.size());
        for (std::size_t j = 0; j < theta.size(); ++j) {
            const Segment& seg = (pattern >> j & 1) ? se : sp;
            const double sn = std::sin(theta[j]);
            roots[j] = seg.point(seg.a + (seg.b - seg.a) * sn * sn);
        }
        return roots;
    };
    const auto theta_of = [](const Segment& seg, double sigma) {
        const double u = std::clamp((sigma - seg.a) / (seg.b - seg.a), 0.0, 1.0);
        return std::asin(std::sqrt(u));
    };

    std::mt19937_64 rng(kProbeSeed);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    const int patterns = 1 << k_total;
    const int starts_per_pattern = std::max(1, kMultistarts / patterns);

    // The product construction's own roots seed their assignment pattern.
    const RawSplit split = best_raw_split(window, k_total);
    const int split_pattern = (1 << split.l) - 1;
    std::vector<double> split_theta;
    for (int j = 0; j < k_total; ++j) {
        const bool evan = j < split.l;
        const Complex r = split.roots[std::size_t(j)];
        split_theta.push_back(theta_of(evan ? se : sp, evan ? r.real() : r.imag()));
    }

    double best = kInf;
    for (int pattern = 0; pattern < patterns; ++pattern) {
        const auto objective = [&](const std::vector<double>& theta) {
            return objective_coarse(roots_of(pattern, theta), se, sp);
        };
        std::vector<std::vector<double>> seeds;
        if (pattern == split_pattern) seeds.push_back(split_theta);
        while (static_cast<int>(seeds.size()) < starts_per_pattern) {
            std::vector<double> theta(static_cast<std::size_t>(k_total), 0.0);
            for (double& t : theta) t = std::asin(std::sqrt(pick(rng)));
            seeds.push_back(std::move(theta));
        }
        for (const std::vector<double>& seed : seeds) {
            const std::vector<double> xf = nelder_mead(objective, seed, 0.05, 400);
            best = std::min(best, objective_precise(roots_of(pattern, xf), se, sp));
        }
    }
    return best;
}

}  // namespace pmlforge
