#include "pmlforge/wave.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "extrema.hpp"
#include "parallel.hpp"

namespace pmlforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Scale-free pole proximity for sweep flagging: a sample is within 1e-8
// of a pole when the relevant denominator is that small against the two
// polynomial values that form it.
constexpr double kPoleFlagRel = 1e-8;

// Absolute denominator floor for the map evaluations, matching reflection().
constexpr double kPoleFloor = 1e-300;

Complex mesh_t(const FEMesh& mesh, Complex s) {
    Complex t(1.0);
    for (const Complex& l : mesh.lengths) t *= Complex(1.0) - 0.5 * l * s;
    return t;
}

// Z diag(x, y) Z^T = (1/2) [[x + y, x - y], [x - y, x + y]].
Mat2 from_char_diag(Complex x, Complex y) {
    Mat2 m;
    const Complex d = 0.5 * (x + y);
    const Complex o = 0.5 * (x - y);
    m << d, o, o, d;
    return m;
}

}  // namespace

void SpectralWindow::validate() const {
    if (!(lambda1 < 0.0)) throw std::invalid_argument("lambda1 must be negative");
    if (!(lambda1 > -1.0)) throw std::invalid_argument("lambda1 must exceed -1");
    if (!(lambda2 > 0.0)) throw std::invalid_argument("lambda2 must be positive");
    if (!(lambda3 >= lambda2)) throw std::invalid_argument("lambda3 must be >= lambda2");
}

Segment SpectralWindow::evanescent_segment() const {
    return {Segment::Axis::RealPositive, std::sqrt(lambda2), std::sqrt(lambda3)};
}

Segment SpectralWindow::propagative_segment() const {
    return {Segment::Axis::ImaginaryPositive, std::sqrt(-lambda1), 1.0};
}

Mat2 char_basis() {
    Mat2 z;
    const double r = 1.0 / std::sqrt(2.0);
    z << r, -r, r, r;
    return z;
}

Mat2 continuum_ntd(Complex s) {
    const Complex sh = std::sinh(s);
    if (std::abs(sh) < kPoleFloor) throw PoleError("continuum NtD pole: sinh(s) = 0");
    return from_char_diag(std::tanh(0.5 * s), 1.0 / std::tanh(0.5 * s));
}

Mat2 continuum_propagator(Complex s) {
    Mat2 m;
    const Complex ch = std::cosh(s);
    const Complex sh = std::sinh(s);
    m << ch, sh, sh, ch;
    return m;
}

Complex discrete_exp(const FEMesh& mesh, Complex s) {
    const Complex den = mesh_t(mesh, s);
    if (std::abs(den) < kPoleFloor) throw PoleError("discrete exp pole: t(s) = 0");
    return mesh_t(mesh, -s) / den;
}

Mat2 discrete_ntd_fe(const FEMesh& mesh, Complex s) {
    const Complex tp = mesh_t(mesh, s);
    const Complex tm = mesh_t(mesh, -s);
    const Complex num = tm - tp;
    const Complex den = tp + tm;
    if (std::abs(den) < kPoleFloor) throw PoleError("discrete NtD pole: t(s) + t(-s) = 0");
    if (std::abs(num) < kPoleFloor) throw PoleError("discrete NtD pole: discrete tanh vanishes");
    const Complex f = num / den;
    return from_char_diag(f, 1.0 / f);
}

Mat2 discrete_propagator_fe(const FEMesh& mesh, Complex s) {
    const Complex tp = mesh_t(mesh, s);
    const Complex tm = mesh_t(mesh, -s);
    if (std::abs(tp) < kPoleFloor || std::abs(tm) < kPoleFloor)
        throw PoleError("discrete propagator pole: root of t(s) t(-s)");
    const Complex e = tm / tp;
    return from_char_diag(e, 1.0 / e);
}

Mat2 discrete_ntd_fd(const FDGrid& grid, Complex s) {
    const Complex f = fd_fraction_eval(grid, s);
    const double m = std::abs(f);
    if (!(m > kPoleFloor) || !std::isfinite(m))
        throw PoleError("discrete NtD pole: zero or pole of the grid fraction");
    return from_char_diag(f, 1.0 / f);
}

namespace {

HalfspaceErrorSample sample_at(const Polynomial& h, double lambda) {
    HalfspaceErrorSample out;
    out.lambda = Complex(lambda, 0.0);
    const Complex s = sqrt_lambda(out.lambda);
    out.exact = -1.0 / s;
    const Complex hp = h.eval(s);
    const Complex hm = h.eval(-s);
    const double scale = std::abs(hp) + std::abs(hm);
    out.flag_pole = std::abs(hp + hm) <= kPoleFlagRel * scale || std::abs(hm) <= kPoleFlagRel * scale;

    out.reflection_modulus = std::abs(hm) > 0.0 ? std::abs(hp / hm) : kInf;
    const Complex den = s * (hp + hm);
    if (std::abs(den) > 0.0) {
        out.approx = (hp - hm) / den;
        out.rel_error = std::abs(out.approx - out.exact) / std::abs(out.exact);
    } else {
        out.approx = Complex(kInf, 0.0);
        out.rel_error = kInf;
    }
    return out;
}

IntervalMaxima refine_maxima(const Polynomial& h, double lo, double hi, int n_samples) {
    // Refinement density is decoupled from the row count so the reported
    // maxima do not depend on --samples once ripples are bracketed.
    const int n = std::max(n_samples, 1025);
    IntervalMaxima out;
    const auto refl = [&](double lam) {
        const HalfspaceErrorSample smp = sample_at(h, lam);
        return smp.flag_pole ? -kInf : smp.reflection_modulus;
    };
    const auto err = [&](double lam) {
        const HalfspaceErrorSample smp = sample_at(h, lam);
        return smp.flag_pole ? -kInf : smp.rel_error;
    };
    out.max_reflection = detail::scan_max(refl, lo, hi, n).value;
    out.max_rel_error = detail::scan_max(err, lo, hi, n).value;
    return out;
}

}  // namespace

SweepResult halfspace_error_sweep(const Polynomial& h, const SpectralWindow& window, int n_samples) {
    window.validate();
    if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");

    SweepResult out;
    out.samples.resize(static_cast<std::size_t>(2 * n_samples));
    const double bounds[2][2] = {{-1.0, window.lambda1}, {window.lambda2, window.lambda3}};
    for (int part = 0; part < 2; ++part) {
        const double lo = bounds[part][0];
        const double hi = bounds[part][1];
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        const std::size_t base = static_cast<std::size_t>(part * n_samples);
        detail::parallel_for(n_samples, [&, part](int i) {
            const double lam =
                n_samples == 1 ? mid : mid - half * std::cos(M_PI * i / (n_samples - 1.0));
            out.samples[base + static_cast<std::size_t>(i)] = sample_at(h, lam);
        });
    }
    out.propagative = refine_maxima(h, -1.0, window.lambda1, n_samples);
    out.evanescent = refine_maxima(h, window.lambda2, window.lambda3, n_samples);
    return out;
}

}  // namespace pmlforge
