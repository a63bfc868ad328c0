// Degree-split selection between the evanescent and propagative pieces,
// and the numerical probe of the joint-minimax conjecture: the product
// t_e t_p with a balanced split is believed to solve
//
//     min over deg t <= k of max over S_e union S_p of |t(s)/t(-s)|
//
// within the layer-realizable class of t whose roots lie on the segments
// themselves, whenever the two single-segment maxima can be equated. The
// probe measures how close the construction comes to a multistart direct
// search over on-segment root placements.

#pragma once

#include <utility>
#include <vector>

#include "pmlforge/composite.hpp"

namespace pmlforge {

struct SplitCandidate {
    int l = 0;
    double max_e = 0.0;  // achieved reflection maxima of the composite
    double max_p = 0.0;
    double ratio = 0.0;  // max_e / max_p
};

struct BalanceReport {
    SpectralWindow window{};
    int k_total = 0;
    std::vector<SplitCandidate> per_split;
    int chosen_l = 0;
    bool balanced = false;  // chosen ratio within [0.1, 10]
};

// Evaluates build_composite for every l in {1..k_total-1}, measures both
// maxima by the refined sweep, and keeps the l minimizing the larger of
// the two. The report records every candidate.
std::pair<LayerDesign, BalanceReport> design_balanced(const SpectralWindow& window, int k_total,
                                                      int tail_power = 2);

struct ProbeWindowResult {
    SpectralWindow window{};
    int chosen_l = 0;
    double max_e = 0.0;      // component t-ratio maxima at the chosen split
    double max_p = 0.0;
    double gap_ratio = 0.0;  // max_e / max_p
    double construction = 0.0;  // max(max_e, max_p)
    double brute_force = 0.0;   // joint minimax estimate; NaN when k_total > 4
    double excess_ratio = 0.0;  // construction / brute_force
};

struct ProbeReport {
    int k_total = 0;
    std::vector<ProbeWindowResult> windows;
};

// For each window: best split in the raw t-ratio objective, its balance
// gap, and (for k_total <= 4) the multistart brute-force joint minimum.
ProbeReport conjecture_probe(const std::vector<SpectralWindow>& windows, int k_total);

// Direct search for the joint minimax with every root confined to one of
// the two segments (the layer-realizable class): seeded multistarts of a
// Nelder-Mead simplex over smooth segment coordinates, covering all
// segment-assignment patterns, with the product-construction roots always
// among the seeds. Deterministic. Returns the refined max ratio of the
// best root set found.
double joint_minimax_bruteforce(const SpectralWindow& window, int k_total);

}  // namespace pmlforge
