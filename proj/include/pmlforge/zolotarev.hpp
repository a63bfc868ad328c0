// Best ratio polynomials on a segment: minimize over degree-k polynomials t
//
//     max over s in S of |t(s)/t(-s)|,
//
// where S is either a real segment [a, b] with 0 < a <= b or its rotation
// i[a, b], the two spectral windows of the half-space problem. The real
// axis solution is classical: the optimal roots are
//
//     x_j = b dn((2j - 1) K / (2k), kappa),   kappa' = a/b,
//
// which we evaluate by AGM/Landen and then polish with one guarded
// Remez-type Newton step on the extremal ripple system. The imaginary
// segment solution is the real one rotated by i; the two share the ratio
// profile exactly, so max_ratio is copied, not recomputed.
//
// Equal-ripple structure: k interior zeros (the roots themselves) and
// k + 1 ratio extrema per segment, endpoints included. That count is
// validated empirically by equioscillation_check, never assumed.

#pragma once

#include <stdexcept>
#include <vector>

#include "pmlforge/poly.hpp"

namespace pmlforge {

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Segment {
    enum class Axis { RealPositive, ImaginaryPositive };
    Axis axis = Axis::RealPositive;
    double a = 0.0;
    double b = 0.0;

    // Maps the parameter sigma in [a, b] onto the segment.
    Complex point(double sigma) const {
        return axis == Axis::RealPositive ? Complex(sigma, 0.0) : Complex(0.0, sigma);
    }
};

struct RatioExtremum {
    double param = 0.0;   // position in [a, b]
    Complex location;     // point(param)
    double value = 0.0;   // |t(s)/t(-s)| there
};

struct MinimaxSolution {
    Polynomial t;  // root form, leading coefficient 1
    double max_ratio = 0.0;
    std::vector<RatioExtremum> extrema;
    Segment segment;
};

struct EquioscillationReport {
    bool pass = false;
    int expected_count = 0;
    int found_count = 0;
    double max_rel_deviation = 0.0;  // of extremal values against max_ratio
    std::vector<RatioExtremum> extrema;
};

// Requires 0 < a <= b and 1 <= k <= 20. a == b degenerates to a single
// root of multiplicity k at a with max_ratio 0.
MinimaxSolution solve_real(double a, double b, int k);

// Same problem on i[a, b]; returns the rotated real solution.
MinimaxSolution solve_imaginary(double a, double b, int k);

// |t(s)/t(-s))| profile extrema of an arbitrary candidate on a segment:
// 2001 Chebyshev-distributed samples plus golden-section refinement of
// every bracketed local maximum.
std::vector<RatioExtremum> ratio_extrema(const Polynomial& t, const Segment& seg);

// Re-derives the extrema of sol.t on seg and checks the equal-ripple
// property: count k + 1 and all extremal values within relative 1e-6 of
// sol.max_ratio.
EquioscillationReport equioscillation_check(const MinimaxSolution& sol, const Segment& seg);

// Dense max of |t(s)/t(-s)| on a segment (refined, not just sampled).
double segment_ratio_max(const Polynomial& t, const Segment& seg);

}  // namespace pmlforge
