#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "pmlforge/balance.hpp"

using namespace pmlforge;

TEST_CASE("symmetric window balances at the even split") {
    // With S_e = [0.1, 1] and S_p = i[0.1, 1] the two Zolotarev problems
    // are rotations of each other, so the even split equates the maxima
    // exactly.
    const SpectralWindow w{-0.01, 0.01, 1.0};
    const auto [design, report] = design_balanced(w, 6);
    CHECK(report.chosen_l == 3);
    CHECK(report.balanced);
    CHECK(design.balanced);
    CHECK(design.split_l == 3);
    REQUIRE(report.per_split.size() == 5);
    const SplitCandidate& best = report.per_split[2];
    CHECK(best.l == 3);
    // Rotational symmetry makes the two sweeps sample mirrored values.
    CHECK(best.max_e == doctest::Approx(best.max_p).epsilon(1e-9));
    CHECK(design.achieved.max_reflection_evanescent == best.max_e);
    CHECK(design.achieved.max_reflection_propagative == best.max_p);
}

TEST_CASE("chosen split minimizes the larger maximum") {
    const SpectralWindow w{-0.02, 0.09, 4.0};
    const auto [design, report] = design_balanced(w, 5);
    REQUIRE(report.per_split.size() == 4);
    double best = 0.0;
    for (const SplitCandidate& c : report.per_split) {
        const double worst = std::max(c.max_e, c.max_p);
        if (c.l == report.chosen_l) best = worst;
    }
    for (const SplitCandidate& c : report.per_split)
        CHECK(best <= std::max(c.max_e, c.max_p) + 1e-15);
    CHECK(design.split_l == report.chosen_l);
}

TEST_CASE("design_balanced validates like build_composite") {
    const SpectralWindow w{-0.25, 0.04, 1.0};
    CHECK_THROWS_AS(design_balanced(w, 1), std::invalid_argument);
    CHECK_THROWS_AS(design_balanced(w, 4, 3), std::invalid_argument);
    const SpectralWindow bad{-1.5, 0.04, 1.0};
    CHECK_THROWS_AS(design_balanced(bad, 4), std::invalid_argument);
}

TEST_CASE("probe gap ratio tracks the propagative window depth") {
    // Fixed evanescent segment, deepening propagative one: the balance
    // gap at k = 2 crosses 1 as the propagative problem hardens.
    const std::vector<SpectralWindow> windows = {
        {-0.5, 0.04, 1.0}, {-0.1, 0.04, 1.0}, {-0.02, 0.04, 1.0}};
    const ProbeReport probe = conjecture_probe(windows, 2);
    REQUIRE(probe.windows.size() == 3);
    CHECK(probe.windows[0].gap_ratio > 1.0);
    CHECK(probe.windows[1].gap_ratio > 1.0);
    CHECK(probe.windows[2].gap_ratio < 1.0);
    CHECK(probe.windows[0].gap_ratio > probe.windows[1].gap_ratio);
    CHECK(probe.windows[1].gap_ratio > probe.windows[2].gap_ratio);
    for (const ProbeWindowResult& r : probe.windows) {
        CHECK(r.chosen_l == 1);
        CHECK(r.construction == std::max(r.max_e, r.max_p));
        CHECK(std::isfinite(r.brute_force));
        CHECK(r.excess_ratio >= 1.0 - 1e-9);
    }
}

TEST_CASE("brute force never beats the construction by much at k = 2") {
    // The construction is conjectured optimal when balanced; the direct
    // search over both roots should land essentially on it.
    const SpectralWindow w{-0.01, 0.01, 1.0};
    const double brute = joint_minimax_bruteforce(w, 2);
    const ProbeReport probe = conjecture_probe({w}, 2);
    REQUIRE(probe.windows.size() == 1);
    const double constructed = probe.windows[0].construction;
    CHECK(brute > 0.0);
    CHECK(constructed < 1.25 * brute);
    CHECK(std::abs(constructed - brute) / brute < 0.05);
}
