// Staggered grids and their rational characterizations.
//
// An FD grid is the step sequence of the nested fraction
//
//     f_k(s) = 1/(hhat_1 s + 1/(h_1 s + 1/(hhat_2 s + ... + 1/(h_k s)))),
//
// a [2k-1 / 2k] odd rational in s. An FE mesh is the element length list
// of t(s) = prod_i (1 - l_i s / 2). The two meet through the odd/even
// split of t, which is what fe_to_fd and fd_to_fe compose.
//
// The terminal step h_k may be unbounded (the fraction then ends at
// hhat_k s, equivalently q~(0) = 0). That is a structural flag on the
// grid, not a sentinel value; when set, h carries k - 1 entries.

#pragma once

#include <stdexcept>
#include <vector>

#include "pmlforge/poly.hpp"

namespace pmlforge {

// Zero leading coefficient met while dividing: the fraction for this
// rational is non-normal and the extraction cannot continue.
struct BreakdownError : std::runtime_error {
    explicit BreakdownError(const std::string& what, int stage_) : std::runtime_error(what), stage(stage_) {}
    int stage;
};

struct FDGrid {
    std::vector<Complex> hhat;
    std::vector<Complex> h;
    bool terminal_unbounded = false;

    int pair_count() const { return static_cast<int>(hhat.size()); }
};

struct FEMesh {
    std::vector<Complex> lengths;

    Complex total() const;
    int element_count() const { return static_cast<int>(lengths.size()); }
};

// Exact expansion of the nested fraction; empty grid gives f = 0.
// q~ is returned monic. Runs in double-double for pair counts above 10,
// where the plain cascade has shed too many digits.
OddEvenRational grid_to_rational(const FDGrid& grid);

// Inverse: iterated division of q~(s^2) by s p~(s^2), one step coefficient
// per stage, with stage-wise rescaling to keep magnitudes bounded.
// Requires f in lowest terms; a shared factor surfaces as a leftover of
// degree >= 2 and is rejected. f = 0 gives the empty grid with the
// terminal flag set.
FDGrid rational_to_grid(const OddEvenRational& f);

// prod_i (1 - l_i s / 2); root form with roots 2 / l_i.
Polynomial mesh_polynomial(const FEMesh& mesh);

// Lengths 2 / s_i from the roots of t. Rejects polynomials with a root at
// the origin (length undefined) and normalizes nothing: only roots enter.
FEMesh mesh_from_polynomial(const Polynomial& t);

// Mesh with an even element count to the equivalent staggered grid.
FDGrid fe_to_fd(const FEMesh& mesh);

// Staggered grid back to a mesh: combine the odd/even pair, factor, take
// lengths. The mesh polynomial root set is recovered up to ordering.
FEMesh fd_to_fe(const FDGrid& grid);

// Numeric value of the nested fraction by the backward recursion from the
// innermost level, carried as a homogeneous pair so intermediate zeros and
// poles pass through unharmed. Matches grid_to_rational evaluation.
Complex fd_fraction_eval(const FDGrid& grid, Complex s);

}  // namespace pmlforge
