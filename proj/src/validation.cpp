#include "pmlforge/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <vector>

namespace pmlforge {
namespace {

constexpr std::uint64_t kSampleSeed = 0xda7e5eedULL;
constexpr double kGeomTol = 1e-9;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Evaluation points in the right half plane, log-uniform modulus in
// [0.1, 3]: clear of the imaginary-axis poles of the discrete maps.
struct SamplePlan {
    std::mt19937_64 rng{kSampleSeed};
    std::uniform_real_distribution<double> pick{0.0, 1.0};

    Complex next() {
        const double rho = 0.1 * std::pow(30.0, pick(rng));
        const double theta = 1.2 * (2.0 * pick(rng) - 1.0);
        return std::polar(rho, theta);
    }
};

template <class Body>
GroupResult run_group(const char* name, Body&& body) {
    GroupResult g;
    g.name = name;
    try {
        body(g);
    } catch (const std::exception& e) {
        g.pass = false;
        g.detail = std::string("exception: ") + e.what();
    }
    return g;
}

bool on_segment(Complex root, const Segment& seg) {
    const double along =
        seg.axis == Segment::Axis::RealPositive ? root.real() : root.imag();
    const double off =
        seg.axis == Segment::Axis::RealPositive ? root.imag() : root.real();
    return std::abs(off) <= kGeomTol * seg.b &&
           along >= seg.a * (1.0 - kGeomTol) - kGeomTol &&
           along <= seg.b * (1.0 + kGeomTol);
}

double coeff_mismatch(const Polynomial& x, const Polynomial& y) {
    const int n = std::max(x.degree(), y.degree());
    double scale = 1.0;
    for (int j = 0; j <= n; ++j)
        scale = std::max(scale, std::max(std::abs(x.coeff(j)), std::abs(y.coeff(j))));
    double worst = 0.0;
    for (int j = 0; j <= n; ++j)
        worst = std::max(worst, std::abs(x.coeff(j) - y.coeff(j)));
    return worst / scale;
}

double step_mismatch(const FDGrid& x, const FDGrid& y) {
    if (x.hhat.size() != y.hhat.size() || x.h.size() != y.h.size() ||
        x.terminal_unbounded != y.terminal_unbounded)
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t j = 0; j < x.hhat.size(); ++j)
        worst = std::max(worst, std::abs(x.hhat[j] - y.hhat[j]) /
                                    std::max(1.0, std::abs(x.hhat[j])));
    for (std::size_t j = 0; j < x.h.size(); ++j)
        worst = std::max(worst,
                         std::abs(x.h[j] - y.h[j]) / std::max(1.0, std::abs(x.h[j])));
    return worst;
}

GroupResult check_equioscillation(const LayerDesign& d) {
    return run_group("equioscillation", [&](GroupResult& g) {
        const Segment seg_e = d.window.evanescent_segment();
        const Segment seg_p = d.window.propagative_segment();
        MinimaxSolution sol_e{d.t_e, segment_ratio_max(d.t_e, seg_e), {}, seg_e};
        MinimaxSolution sol_p{d.t_p, segment_ratio_max(d.t_p, seg_p), {}, seg_p};
        const EquioscillationReport re = equioscillation_check(sol_e, seg_e);
        const EquioscillationReport rp = equioscillation_check(sol_p, seg_p);

        bool geom = true;
        for (Complex r : d.t_e.roots()) geom = geom && on_segment(r, seg_e);
        for (Complex r : d.t_p.roots()) geom = geom && on_segment(r, seg_p);

        g.pass = re.pass && rp.pass && geom;
        g.detail = "ripple dev " + fmt(std::max(re.max_rel_deviation, rp.max_rel_deviation)) +
                   ", extrema " + std::to_string(re.found_count) + "/" +
                   std::to_string(re.expected_count) + " and " +
                   std::to_string(rp.found_count) + "/" + std::to_string(rp.expected_count);
        if (!geom) g.detail += "; roots off segment";
    });
}

GroupResult check_roundtrips(const LayerDesign& d) {
    return run_group("roundtrips", [&](GroupResult& g) {
        // Mesh lengths against the t_e roots they encode.
        auto roots = d.t_e.roots();
        auto lengths = d.fe_segment.lengths;
        auto by_re = [](Complex a, Complex b) { return a.real() < b.real(); };
        std::sort(roots.begin(), roots.end(), by_re);
        std::sort(lengths.begin(), lengths.end(), [](Complex a, Complex b) {
            return a.real() > b.real();  // longer element <-> smaller root
        });
        double mesh_dev = lengths.size() == roots.size()
                              ? 0.0
                              : std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < lengths.size() && j < roots.size(); ++j)
            mesh_dev = std::max(mesh_dev, std::abs(lengths[j] - 2.0 / roots[j]) /
                                              std::abs(lengths[j]));

        // Tail grid back to its polynomial.
        const Polynomial h2_back = tail_from_fk(grid_to_rational(d.fd_tail));
        const double h2_dev = coeff_mismatch(h2_back, d.h2);

        // Rational through the cascade and back.
        const OddEvenRational fk = fk_from_tail(d.h2);
        const FDGrid regrid = rational_to_grid(fk);
        const double rat_dev = coeff_mismatch(grid_to_rational(regrid).p_tilde, fk.p_tilde) +
                               coeff_mismatch(grid_to_rational(regrid).q_tilde, fk.q_tilde);
        const double grid_dev = step_mismatch(regrid, d.fd_tail);

        const double worst = std::max({mesh_dev, h2_dev, rat_dev, grid_dev});
        g.pass = worst < 1e-9;
        g.detail = "max dev " + fmt(worst);
    });
}

GroupResult check_fe_fd(const LayerDesign& d) {
    return run_group("fe_fd_equivalence", [&](GroupResult& g) {
        FEMesh doubled;
        for (Complex l : d.fe_segment.lengths) {
            doubled.lengths.push_back(l);
            doubled.lengths.push_back(l);
        }
        const FDGrid fd = fe_to_fd(doubled);
        SamplePlan plan;
        double worst = 0.0;
        int used = 0;
        for (int n = 0; n < 64; ++n) {
            const Complex s = plan.next();
            try {
                const Mat2 a = discrete_ntd_fe(doubled, s);
                const Mat2 b = discrete_ntd_fd(fd, s);
                const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
                worst = std::max(worst, (a - b).cwiseAbs().maxCoeff() / scale);
                ++used;
            } catch (const PoleError&) {
            }
        }
        g.pass = used >= 48 && worst < 1e-10;
        g.detail = "max dev " + fmt(worst) + " over " + std::to_string(used) + " pts";
    });
}

GroupResult check_fixed_point(const LayerDesign& d) {
    return run_group("fixed_point", [&](GroupResult& g) {
        SamplePlan plan;
        double worst = 0.0;
        int used = 0;
        for (int n = 0; n < 50; ++n) {
            const Complex s = plan.next();
            try {
                const Mat2 prop = discrete_propagator_fe(d.fe_segment, s);
                const Vec2 w = prop * Vec2(1.0, -1.0);
                const double off = std::abs(w(0) + w(1)) / 2.0;
                const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
                worst = std::max(worst, off / scale);
                ++used;
            } catch (const PoleError&) {
            }
        }
        g.pass = used >= 38 && worst < 1e-12;
        g.detail = "max off-direction " + fmt(worst) + " over " + std::to_string(used) +
                   " pts";
    });
}

GroupResult check_multiplicativity(const LayerDesign& d) {
    return run_group("multiplicativity", [&](GroupResult& g) {
        SamplePlan plan;
        double worst = 0.0;
        int used = 0;
        for (int n = 0; n < 64; ++n) {
            const Complex s = plan.next();
            try {
                const Complex chain = end_to_end_reflection(d, s);
                const Complex r1 = reflection(d.t_e, s);
                const Complex r2 = reflection(d.h2, s);
                const Complex composed = compose_reflection(r1, r2);
                worst = std::max(worst, std::abs(chain - composed) /
                                            std::max(1.0, std::abs(composed)));
                ++used;
            } catch (const PoleError&) {
            }
        }
        g.pass = used >= 48 && worst < 1e-10;
        g.detail = "max dev " + fmt(worst) + " over " + std::to_string(used) + " pts";
    });
}

GroupResult check_nodes(const LayerDesign& d) {
    return run_group("node_exactness", [&](GroupResult& g) {
        const Polynomial h = total_h(d);
        double worst = 0.0;
        for (Complex s0 : h.roots()) {
            const Complex got = newman_ntd(h, s0 * s0);
            worst = std::max(worst, std::abs(got + 1.0 / s0) * std::abs(s0));
        }
        g.pass = worst < 1e-12;
        g.detail = "max node dev " + fmt(worst) + " over " +
                   std::to_string(h.roots().size()) + " nodes";
    });
}

}  // namespace

ValidationReport run_validation(const LayerDesign& d) {
    ValidationReport report;
    report.groups.push_back(check_equioscillation(d));
    report.groups.push_back(check_roundtrips(d));
    report.groups.push_back(check_fe_fd(d));
    report.groups.push_back(check_fixed_point(d));
    report.groups.push_back(check_multiplicativity(d));
    report.groups.push_back(check_nodes(d));
    return report;
}

}  // namespace pmlforge
