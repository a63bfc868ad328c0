// The exterior approximation: a two-sided FE segment carrying t_e
// (evanescent-optimized, real roots) composed with a one-sided staggered
// tail carrying h2 (propagative-optimized, built from t_p), Dirichlet
// terminated. Seen from the outer boundary the reflection is
//
//     (t_e(s)/t_e(-s))^2 * h2(s)/h2(-s),
//
// the square coming from the round trip through the segment, so the total
// polynomial is h = t_e^2 h2. The mesh carries each t_e root once; the
// traversal itself supplies the square. With tail_power 2 (the default)
// h2 = t_p^2 monic and h is exactly the t^2 of the one-piece design;
// tail_power 1 takes h2 = t_p monic, which needs an even tail degree for
// the fraction to stay proper.

#pragma once

#include "pmlforge/grid.hpp"
#include "pmlforge/wave.hpp"
#include "pmlforge/window.hpp"
#include "pmlforge/zolotarev.hpp"

namespace pmlforge {

struct AchievedMaxima {
    double max_reflection_evanescent = 0.0;
    double max_reflection_propagative = 0.0;
    double max_ntd_rel_error_evanescent = 0.0;
    double max_ntd_rel_error_propagative = 0.0;
};

struct LayerDesign {
    SpectralWindow window{};
    int k_total = 0;
    int split_l = 0;
    int tail_power = 2;
    bool balanced = false;
    Polynomial t_e;     // monic, roots on S_e
    Polynomial t_p;     // monic, roots on S_p
    Polynomial h2;      // monic tail polynomial, t_p^tail_power
    FEMesh fe_segment;  // one element per t_e root, lengths 2/root
    FDGrid fd_tail;
    AchievedMaxima achieved;
};

// r1^2 * r2: the segment reflection enters squared (round trip), the tail
// reflection once.
Complex compose_reflection(Complex r1, Complex r2);

// h2 from the tail fraction via h2(s) - h2(-s) = c s p~(s^2),
// h2(s) + h2(-s) = c q~(s^2), normalized monic. Rejects pairs with a
// common even factor.
Polynomial tail_from_fk(const OddEvenRational& f);

// Inverse: the odd/even parts of h2 as a monic-q~ rational. deg h2 must
// be even, else the fraction is improper and no grid exists.
OddEvenRational fk_from_tail(const Polynomial& h2);

// h = t_e^2 h2 in root form.
Polynomial total_h(const LayerDesign& d);

// Solves both Zolotarev problems, builds the mesh and the tail grid, and
// measures the achieved per-interval maxima by a refined sweep of h.
// Requires 1 <= split_l <= k_total - 1 and tail_power in {1, 2}.
LayerDesign build_composite(const SpectralWindow& window, int k_total, int split_l,
                            int tail_power = 2);

// Ordered traversal of the assembled layer: FE elements (outer boundary
// first), then the staggered tail pairs, then the Dirichlet termination.
struct FullLayer {
    FEMesh fe;
    FDGrid fd;

    int element_count() const { return fe.element_count(); }
    int pair_count() const { return fd.pair_count(); }
};

FullLayer assemble_full_grid(const LayerDesign& d);

// Propagator-chain reflection of the assembled object: the tail state
// (f_k(s), 1) is transported back through each element by the inverted
// single-element propagator and the characteristic ratio is taken at the
// outer boundary. Agrees with reflection(total_h(d), s) analytically.
Complex end_to_end_reflection(const LayerDesign& d, Complex s);

}  // namespace pmlforge
