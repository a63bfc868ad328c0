#include <cmath>
#include <random>

#include "doctest.h"
#include "pmlforge/wave.hpp"

using namespace pmlforge;

namespace {

Mat2 cn_element(Complex l, Complex s) {
    // Crank-Nicolson transfer of one element: (1 - a) w' = (1 + a) w with
    // a = s l / 2 acting on the characteristic average, worked out as a
    // dense 2x2 map.
    const Complex a = 0.5 * s * l;
    Mat2 m;
    m << 1.0 + a * a, 2.0 * a, 2.0 * a, 1.0 + a * a;
    return m / (1.0 - a * a);
}

}  // namespace

TEST_CASE("continuum maps at s = 1") {
    const Mat2 f = continuum_ntd(Complex(1.0));
    CHECK(std::abs(f(0, 0) - Complex(1.3130352854993312)) < 1e-14);
    CHECK(std::abs(f(1, 1) - Complex(1.3130352854993312)) < 1e-14);
    CHECK(std::abs(f(0, 1) - Complex(-0.8509181282393216)) < 1e-14);
    CHECK(std::abs(f(1, 0) - Complex(-0.8509181282393216)) < 1e-14);
}

TEST_CASE("propagator damps the outgoing characteristic") {
    for (double x : {0.4, 1.0, 2.5}) {
        const Complex s(x, 0.1 * x);
        const Mat2 g = continuum_propagator(s);
        const Vec2 out = g * Vec2(1.0, -1.0);
        const Complex scale = std::exp(-s);
        CHECK(std::abs(out(0) - scale) < 1e-13 * std::abs(scale));
        CHECK(std::abs(out(1) + scale) < 1e-13 * std::abs(scale));
        CHECK(std::abs(g.determinant() - Complex(1.0)) < 1e-13);
    }
}

TEST_CASE("char basis diagonalizes the symmetric maps") {
    const Mat2 z = char_basis();
    CHECK((z * z.transpose() - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    const Complex s(0.8, 0.3);
    const Mat2 f = continuum_ntd(s);
    const Mat2 d = z.transpose() * f * z;
    CHECK(std::abs(d(0, 1)) < 1e-14);
    CHECK(std::abs(d(1, 0)) < 1e-14);
    CHECK(std::abs(d(0, 0) - std::tanh(s / 2.0)) < 1e-14);
    CHECK(std::abs(d(1, 1) - 1.0 / std::tanh(s / 2.0)) < 1e-13);
}

TEST_CASE("single element matches Crank-Nicolson") {
    for (double l : {0.5, 1.0, 1.7}) {
        for (double x : {0.3, 1.1}) {
            const Complex s(x, 0.2);
            const Mat2 ours = discrete_propagator_fe(FEMesh{{Complex(l)}}, s);
            const Mat2 ref = cn_element(Complex(l), s);
            CHECK((ours - ref).cwiseAbs().maxCoeff() < 1e-13 * ref.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("discrete exp is the root ratio of the mesh polynomial") {
    const FEMesh mesh{{Complex(0.5), Complex(1.2), Complex(0.8)}};
    for (double x : {0.25, 1.0, 3.0}) {
        const Complex s(x, -0.15);
        Complex expect(1.0, 0.0);
        for (const Complex& l : mesh.lengths)
            expect *= (1.0 + 0.5 * l * s) / (1.0 - 0.5 * l * s);
        CHECK(std::abs(discrete_exp(mesh, s) - expect) < 1e-13 * std::abs(expect));
    }
}

TEST_CASE("fe propagator fixes the outgoing direction") {
    std::mt19937_64 rng(0xabcdefULL);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        FEMesh mesh;
        const int n = 1 + static_cast<int>(rng() % 5);
        for (int j = 0; j < n; ++j) mesh.lengths.push_back(Complex(0.2 + 2.0 * pick(rng)));
        const Complex s = std::polar(0.1 * std::pow(30.0, pick(rng)),
                                     1.2 * (2.0 * pick(rng) - 1.0));
        const Vec2 w = discrete_propagator_fe(mesh, s) * Vec2(1.0, -1.0);
        CHECK(std::abs(w(0) + w(1)) / 2.0 < 1e-12 * std::max(1.0, w.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("fe and fd forms of an even mesh are one map") {
    std::mt19937_64 rng(0x1234321ULL);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        FEMesh mesh;
        const int pairs = 1 + static_cast<int>(rng() % 6);
        for (int j = 0; j < 2 * pairs; ++j)
            mesh.lengths.push_back(Complex(0.2 + 2.5 * pick(rng)));
        const FDGrid grid = fe_to_fd(mesh);
        const Complex s = std::polar(0.1 * std::pow(30.0, pick(rng)),
                                     1.2 * (2.0 * pick(rng) - 1.0));
        const Mat2 fe = discrete_ntd_fe(mesh, s);
        const Mat2 fd = discrete_ntd_fd(grid, s);
        CHECK((fe - fd).cwiseAbs().maxCoeff() <
              1e-10 * std::max(1.0, fe.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("spectrally matched element reproduces the continuum at its node") {
    for (double star : {0.5, 1.0, 2.0}) {
        const Complex s(star, 0.0);
        const Complex l = 2.0 / s * std::tanh(s / 2.0);
        const Mat2 fe = discrete_ntd_fe(FEMesh{{l}}, s);
        const Mat2 f = continuum_ntd(s);
        CHECK((fe - f).cwiseAbs().maxCoeff() < 1e-13 * f.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("uniform refinement converges at second order") {
    const Complex s(1.0, 0.0);
    const Mat2 exact = continuum_ntd(s);
    double err_prev = 0.0;
    for (int n : {4, 8, 16}) {
        FEMesh mesh;
        for (int j = 0; j < n; ++j) mesh.lengths.push_back(Complex(1.0 / n));
        const double err = (discrete_ntd_fe(mesh, s) - exact).cwiseAbs().maxCoeff();
        if (err_prev > 0.0) {
            const double rate = err_prev / err;
            CHECK(rate > 3.5);
            CHECK(rate < 4.5);
        }
        err_prev = err;
    }
}

TEST_CASE("added elements only help on the evanescent interval") {
    // In the characteristic normalization the one-sided half-space NtD is 1
    // (the continuum layer of length L closed with a Dirichlet end carries
    // tanh(sL) -> 1). Growing a uniform layer shrinks the error monotonically.
    const Complex lambda(0.5, 0.0);
    const Complex s = sqrt_lambda(lambda);
    double prev = 1.0;
    FEMesh mesh;
    for (int n = 1; n <= 4; ++n) {
        mesh.lengths.push_back(Complex(1.0));
        const Mat2 f = discrete_ntd_fe(mesh, s);
        // Dirichlet closure of the far end: Schur complement onto the
        // near-end entry.
        const Complex one_sided = f(0, 0) - (f(0, 1) * f(1, 0)) / f(1, 1);
        const double err = std::abs(one_sided - Complex(1.0));
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("sweep rows are ordered and counted") {
    const Polynomial h = Polynomial::from_roots(
        1.0, {Complex(0.4), Complex(0.0, 0.3)});
    const SpectralWindow window{-0.25, 0.09, 1.0};
    const SweepResult sweep = halfspace_error_sweep(h, window, 64);
    REQUIRE(sweep.samples.size() == 128);
    // Propagative block first, each block increasing in lambda.
    for (std::size_t j = 0; j < 64; ++j) {
        CHECK(sweep.samples[j].lambda.real() >= -1.0 - 1e-12);
        CHECK(sweep.samples[j].lambda.real() <= window.lambda1 + 1e-12);
    }
    for (std::size_t j = 64; j < 128; ++j) {
        CHECK(sweep.samples[j].lambda.real() >= window.lambda2 - 1e-12);
        CHECK(sweep.samples[j].lambda.real() <= window.lambda3 + 1e-12);
    }
    for (std::size_t j = 1; j < 64; ++j)
        CHECK(sweep.samples[j].lambda.real() > sweep.samples[j - 1].lambda.real());
    for (std::size_t j = 65; j < 128; ++j)
        CHECK(sweep.samples[j].lambda.real() > sweep.samples[j - 1].lambda.real());
}

TEST_CASE("sweep maxima do not depend on the sample count") {
    const Polynomial h = Polynomial::from_roots(
        1.0, {Complex(0.35), Complex(0.9), Complex(0.0, 0.25), Complex(0.0, 0.8)});
    const SpectralWindow window{-0.49, 0.04, 1.0};
    const SweepResult coarse = halfspace_error_sweep(h, window, 11);
    const SweepResult fine = halfspace_error_sweep(h, window, 2001);
    CHECK(std::abs(coarse.evanescent.max_reflection - fine.evanescent.max_reflection) <
          1e-9 * fine.evanescent.max_reflection);
    CHECK(std::abs(coarse.propagative.max_reflection - fine.propagative.max_reflection) <
          1e-9 * fine.propagative.max_reflection);
}

TEST_CASE("dirichlet wall reflects everything") {
    const Polynomial h = Polynomial::constant(Complex(1.0));
    const SweepResult sweep = halfspace_error_sweep(h, SpectralWindow{-0.25, 0.25, 1.0}, 33);
    for (const auto& row : sweep.samples) {
        CHECK(!row.flag_pole);
        CHECK(std::abs(row.reflection_modulus - 1.0) < 1e-14);
    }
    CHECK(std::abs(sweep.evanescent.max_reflection - 1.0) < 1e-12);
}

TEST_CASE("poles inside the window are flagged and excluded") {
    // Place a root of h(-s) on one of the sweep's own evanescent sample
    // points so a row lands on the pole.
    const int n = 33;
    const SpectralWindow window{-0.25, 0.25, 1.0};
    const double mid = 0.5 * (window.lambda2 + window.lambda3);
    const double half = 0.5 * (window.lambda3 - window.lambda2);
    const double node = mid - half * std::cos(M_PI * 10 / (n - 1.0));
    const Complex sigma = std::sqrt(node);
    const Polynomial h = Polynomial::from_roots(1.0, {-sigma});
    const SweepResult sweep = halfspace_error_sweep(h, window, n);
    int flagged = 0;
    for (const auto& row : sweep.samples) flagged += row.flag_pole ? 1 : 0;
    CHECK(flagged >= 1);
    CHECK(std::isfinite(sweep.evanescent.max_reflection));
    CHECK(std::isfinite(sweep.propagative.max_reflection));
}

TEST_CASE("window validation messages") {
    CHECK_THROWS_WITH_AS((SpectralWindow{0.5, 0.1, 1.0}).validate(),
                         "lambda1 must be negative", std::invalid_argument);
    CHECK_THROWS_AS((SpectralWindow{-1.5, 0.1, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((SpectralWindow{-0.5, -0.1, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((SpectralWindow{-0.5, 0.5, 0.2}).validate(), std::invalid_argument);
    CHECK_NOTHROW((SpectralWindow{-0.5, 0.5, 0.5}).validate());
}
