#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pmlforge/composite.hpp"
#include "pmlforge/grid.hpp"
#include "pmlforge/poly.hpp"

using namespace pmlforge;

namespace {

// Right-half-plane fan of sample points, poles avoided by construction.
std::vector<Complex> sample_fan() {
    std::vector<Complex> pts;
    for (int j = 0; j < 64; ++j) {
        const double rho = 0.07 * std::pow(40.0, j / 63.0);
        const double theta = -1.25 + 2.5 * (j % 9) / 8.0;
        pts.push_back(std::polar(rho, theta));
    }
    return pts;
}

}  // namespace

TEST_CASE("compose_reflection squares the segment factor") {
    const Complex r1(0.3, -0.2);
    const Complex r2(-0.1, 0.7);
    CHECK(compose_reflection(r1, r2) == r1 * r1 * r2);
    CHECK(compose_reflection(Complex(1.0), r2) == r2);
}

TEST_CASE("tail_from_fk on the unit-grid fraction") {
    // f(s) = s / (s^2 + 1) interleaves to h2 = s^2 + s + 1.
    OddEvenRational f;
    f.p_tilde = Polynomial::constant(Complex(1.0));
    f.q_tilde = Polynomial({Complex(1.0), Complex(1.0)});
    const Polynomial h2 = tail_from_fk(f);
    REQUIRE(h2.degree() == 2);
    CHECK(h2.coeff(0) == Complex(1.0));
    CHECK(h2.coeff(1) == Complex(1.0));
    CHECK(h2.coeff(2) == Complex(1.0));
}

TEST_CASE("fk_from_tail inverts tail_from_fk") {
    const Polynomial h2({Complex(1.0), Complex(1.0), Complex(1.0)});
    const OddEvenRational f = fk_from_tail(h2);
    REQUIRE(f.q_tilde.degree() == 1);
    CHECK(f.q_tilde.coeff(1) == Complex(1.0));
    CHECK(f.q_tilde.coeff(0) == Complex(1.0));
    REQUIRE(f.p_tilde.degree() == 0);
    CHECK(f.p_tilde.coeff(0) == Complex(1.0));

    const Polynomial back = tail_from_fk(f);
    REQUIRE(back.degree() == 2);
    for (int j = 0; j <= 2; ++j)
        CHECK(std::abs(back.coeff(j) - h2.coeff(j)) < 1e-15);
}

TEST_CASE("single imaginary pair tail yields the closed-form steps") {
    // h2 = (s - i b)^2 maps to the one-pair grid hhat = i/(2b), h = 2i/b.
    const double b = 0.7;
    const Polynomial h2 = Polynomial::from_roots(
        Complex(1.0), {Complex(0.0, b), Complex(0.0, b)});
    const FDGrid grid = rational_to_grid(fk_from_tail(h2));
    REQUIRE(grid.pair_count() == 1);
    REQUIRE(!grid.terminal_unbounded);
    CHECK(std::abs(grid.hhat[0] - Complex(0.0, 1.0 / (2.0 * b))) < 1e-14);
    CHECK(std::abs(grid.h[0] - Complex(0.0, 2.0 / b)) < 1e-14);
}

TEST_CASE("tail converters reject malformed fractions") {
    OddEvenRational f;
    f.p_tilde = Polynomial({Complex(1.0), Complex(1.0)});
    f.q_tilde = Polynomial({Complex(1.0), Complex(1.0)});
    // Shared factor lambda + 1 means the pair is not in lowest terms.
    CHECK_THROWS_AS(tail_from_fk(f), std::invalid_argument);

    OddEvenRational improper;
    improper.p_tilde = Polynomial({Complex(0.0), Complex(1.0)});
    improper.q_tilde = Polynomial({Complex(1.0), Complex(1.0)});
    CHECK_THROWS_AS(tail_from_fk(improper), std::invalid_argument);

    const Polynomial odd({Complex(1.0), Complex(2.0), Complex(0.0), Complex(1.0)});
    CHECK_THROWS_WITH_AS(
        fk_from_tail(odd),
        "deg h2 must be even; an odd degree leaves the tail fraction improper",
        std::invalid_argument);
}

TEST_CASE("build_composite validates its arguments") {
    const SpectralWindow w{-0.25, 0.04, 1.0};
    CHECK_THROWS_AS(build_composite(w, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_composite(w, 21, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_composite(w, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_composite(w, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_composite(w, 4, 2, 3), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        build_composite(w, 4, 1, 1),
        "tail_power 1 needs an even tail degree k_total - split_l",
        std::invalid_argument);
    const SpectralWindow bad{0.5, 0.04, 1.0};
    CHECK_THROWS_WITH_AS(build_composite(bad, 4, 2),
                         "lambda1 must be negative", std::invalid_argument);
}

TEST_CASE("composite design carries the expected shape") {
    const SpectralWindow w{-0.25, 0.04, 1.0};
    const LayerDesign d = build_composite(w, 5, 3);

    CHECK(d.k_total == 5);
    CHECK(d.split_l == 3);
    CHECK(d.tail_power == 2);
    const double ratio =
        d.achieved.max_reflection_evanescent / d.achieved.max_reflection_propagative;
    CHECK(d.balanced == (ratio >= 0.1 && ratio <= 10.0));
    REQUIRE(d.t_e.degree() == 3);
    REQUIRE(d.t_p.degree() == 2);
    REQUIRE(d.h2.degree() == 4);
    CHECK(total_h(d).degree() == 2 * 3 + 2 * 2);

    // Segment roots on S_e, one mesh element of length 2/x per root.
    REQUIRE(d.fe_segment.element_count() == 3);
    const std::vector<Complex> re = d.t_e.roots();
    for (int j = 0; j < 3; ++j) {
        const Complex x = re[std::size_t(j)];
        CHECK(x.imag() == 0.0);
        CHECK(x.real() >= std::sqrt(w.lambda2) - 1e-12);
        CHECK(x.real() <= std::sqrt(w.lambda3) + 1e-12);
        CHECK(std::abs(d.fe_segment.lengths[std::size_t(j)] - 2.0 / x) < 1e-14);
    }
    // Tail roots on S_p, each doubled into h2.
    for (const Complex& x : d.t_p.roots()) {
        CHECK(x.real() == 0.0);
        CHECK(x.imag() >= std::sqrt(-w.lambda1) - 1e-12);
        CHECK(x.imag() <= 1.0 + 1e-12);
    }
    REQUIRE(d.fd_tail.pair_count() == 2);

    const FullLayer full = assemble_full_grid(d);
    CHECK(full.element_count() == 3);
    CHECK(full.pair_count() == 2);
    CHECK(full.fe.lengths == d.fe_segment.lengths);
}

TEST_CASE("total_h doubles the segment roots and powers the tail") {
    const SpectralWindow w{-0.09, 0.25, 2.0};
    const LayerDesign d1 = build_composite(w, 4, 2, 1);
    CHECK(d1.h2.degree() == 2);
    CHECK(total_h(d1).degree() == 2 * 2 + 1 * 2);

    const Polynomial h = total_h(d1);
    REQUIRE(h.has_root_form());
    // Each segment root appears twice, each tail root once.
    for (const Complex& x : d1.t_e.roots()) {
        int hits = 0;
        for (const Complex& r : h.roots())
            if (std::abs(r - x) < 1e-12) ++hits;
        CHECK(hits == 2);
    }
    for (const Complex& x : d1.t_p.roots()) {
        int hits = 0;
        for (const Complex& r : h.roots())
            if (std::abs(r - x) < 1e-12) ++hits;
        CHECK(hits == 1);
    }
}

TEST_CASE("achieved maxima match the component predictions") {
    // Real segment roots are unimodular factors on the imaginary axis and
    // imaginary tail roots are unimodular on the real axis, so each
    // interval sees only its own optimizer: the evanescent maximum is the
    // squared segment ripple, the propagative one the powered tail ripple.
    const SpectralWindow w{-0.25, 0.04, 1.0};
    const LayerDesign d = build_composite(w, 5, 3);

    const MinimaxSolution se = solve_real(std::sqrt(w.lambda2), std::sqrt(w.lambda3), 3);
    const MinimaxSolution sp =
        solve_imaginary(std::sqrt(-w.lambda1), 1.0, 2);
    CHECK(d.achieved.max_reflection_evanescent ==
          doctest::Approx(se.max_ratio * se.max_ratio).epsilon(1e-6));
    CHECK(d.achieved.max_reflection_propagative ==
          doctest::Approx(sp.max_ratio * sp.max_ratio).epsilon(1e-6));
    CHECK(std::isfinite(d.achieved.max_ntd_rel_error_evanescent));
    CHECK(std::isfinite(d.achieved.max_ntd_rel_error_propagative));
    CHECK(d.achieved.max_ntd_rel_error_evanescent > 0.0);
    CHECK(d.achieved.max_ntd_rel_error_propagative > 0.0);
}

TEST_CASE("end_to_end_reflection agrees with the map of total_h") {
    const SpectralWindow w{-0.25, 0.04, 1.0};
    for (const int split : {1, 2, 3}) {
        const LayerDesign d = build_composite(w, 4, split);
        const Polynomial h = total_h(d);
        int checked = 0;
        for (const Complex& s : sample_fan()) {
            Complex chain, direct;
            try {
                chain = end_to_end_reflection(d, s);
                direct = reflection(h, s);
            } catch (const PoleError&) {
                continue;
            }
            const double scale = std::abs(direct) + 1.0;
            CHECK(std::abs(chain - direct) < 1e-10 * scale);
            ++checked;
        }
        CHECK(checked >= 48);
    }
}

TEST_CASE("end_to_end_reflection rejects an empty design") {
    LayerDesign d;
    CHECK_THROWS_AS(end_to_end_reflection(d, Complex(0.5, 0.2)),
                    std::invalid_argument);
}
