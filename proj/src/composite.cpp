#include "pmlforge/composite.hpp"

#include <cmath>
#include <stdexcept>

namespace pmlforge {

namespace {

// Relative threshold for the shared-root rejection in tail_from_fk,
// matching combine_odd_even.
constexpr double kSharedRootRel = 1e-9;

void check_lowest_terms(const OddEvenRational& f) {
    if (f.p_tilde.is_zero() || f.q_tilde.degree() < 1) return;
    for (const Complex& lam : f.q_tilde.compute_roots()) {
        double scale = 0.0;
        double pw = 1.0;
        for (int j = 0; j <= f.p_tilde.degree(); ++j) {
            scale += std::abs(f.p_tilde.coeff(j)) * pw;
            pw *= std::abs(lam);
        }
        if (std::abs(f.p_tilde.eval_coeffs(lam)) <= kSharedRootRel * scale)
            throw std::invalid_argument("p~ and q~ share a common factor in lambda");
    }
}

}  // namespace

Complex compose_reflection(Complex r1, Complex r2) { return r1 * r1 * r2; }

Polynomial tail_from_fk(const OddEvenRational& f) {
    if (f.q_tilde.is_zero()) throw std::invalid_argument("q~ must be nonzero");
    const int k = f.q_tilde.degree();
    if (f.p_tilde.degree() > k - 1) throw std::invalid_argument("deg p~ must stay below deg q~");
    check_lowest_terms(f);
    if (k == 0) return Polynomial::constant(Complex(1.0));

    // h2 = (q~(s^2) + s p~(s^2)) / lead(q~): even slots from q~, odd from p~.
    std::vector<Complex> c(std::size_t(2 * k) + 1, Complex(0.0));
    const Complex lead = f.q_tilde.lead();
    for (int j = 0; j <= k; ++j) c[std::size_t(2 * j)] = f.q_tilde.coeff(j) / lead;
    for (int j = 0; j <= f.p_tilde.degree(); ++j) c[std::size_t(2 * j + 1)] = f.p_tilde.coeff(j) / lead;
    return Polynomial(std::move(c));
}

OddEvenRational fk_from_tail(const Polynomial& h2) {
    if (h2.is_zero()) throw std::invalid_argument("h2 must be nonzero");
    if (h2.degree() % 2 != 0)
        throw std::invalid_argument("deg h2 must be even; an odd degree leaves the tail fraction improper");
    const int k = h2.degree() / 2;
    const Complex lead = h2.lead();
    std::vector<Complex> q(std::size_t(k) + 1);
    for (int j = 0; j <= k; ++j) q[std::size_t(j)] = h2.coeff(2 * j) / lead;
    std::vector<Complex> p;
    p.reserve(std::size_t(k));
    for (int j = 0; j < k; ++j) p.push_back(h2.coeff(2 * j + 1) / lead);
    return {Polynomial(std::move(p)), Polynomial(std::move(q))};
}

Polynomial total_h(const LayerDesign& d) { return d.t_e * d.t_e * d.h2; }

LayerDesign build_composite(const SpectralWindow& window, int k_total, int split_l, int tail_power) {
    window.validate();
    if (k_total < 2 || k_total > 20) throw std::invalid_argument("k_total must lie in [2, 20]");
    if (split_l < 1 || split_l > k_total - 1)
        throw std::invalid_argument("split_l must lie in [1, k_total - 1]");
    if (tail_power != 1 && tail_power != 2)
        throw std::invalid_argument("tail_power must be 1 or 2");
    const int tail_deg = k_total - split_l;
    if (tail_power == 1 && tail_deg % 2 != 0)
        throw std::invalid_argument("tail_power 1 needs an even tail degree k_total - split_l");

    LayerDesign d;
    d.window = window;
    d.k_total = k_total;
    d.split_l = split_l;
    d.tail_power = tail_power;

    const Segment se = window.evanescent_segment();
    const Segment sp = window.propagative_segment();
    const MinimaxSolution sol_e = solve_real(se.a, se.b, split_l);
    const MinimaxSolution sol_p = solve_imaginary(sp.a, sp.b, tail_deg);
    d.t_e = sol_e.t;
    d.t_p = sol_p.t;
    d.fe_segment = mesh_from_polynomial(d.t_e);

    std::vector<Complex> h2_roots;
    h2_roots.reserve(std::size_t(tail_power * tail_deg));
    for (int rep = 0; rep < tail_power; ++rep)
        for (const Complex& r : d.t_p.roots()) h2_roots.push_back(r);
    d.h2 = Polynomial::from_roots(Complex(1.0), std::move(h2_roots));
    d.fd_tail = rational_to_grid(fk_from_tail(d.h2));

    const SweepResult sweep = halfspace_error_sweep(total_h(d), window, 2001);
    d.achieved.max_reflection_evanescent = sweep.evanescent.max_reflection;
    d.achieved.max_reflection_propagative = sweep.propagative.max_reflection;
    d.achieved.max_ntd_rel_error_evanescent = sweep.evanescent.max_rel_error;
    d.achieved.max_ntd_rel_error_propagative = sweep.propagative.max_rel_error;

    const double me = d.achieved.max_reflection_evanescent;
    const double mp = d.achieved.max_reflection_propagative;
    d.balanced = (me == 0.0 && mp == 0.0) ||
                 (mp > 0.0 && me / mp >= 0.1 && me / mp <= 10.0);
    return d;
}

FullLayer assemble_full_grid(const LayerDesign& d) {
    if (d.fe_segment.element_count() == 0 || d.fd_tail.pair_count() == 0)
        throw std::invalid_argument("design must carry both a segment and a tail");
    return {d.fe_segment, d.fd_tail};
}

Complex end_to_end_reflection(const LayerDesign& d, Complex s) {
    if (d.fe_segment.element_count() == 0 || d.fd_tail.pair_count() == 0)
        throw std::invalid_argument("design must carry both a segment and a tail");
    const Complex f = fd_fraction_eval(d.fd_tail, s);
    if (!std::isfinite(std::abs(f))) throw PoleError("tail fraction pole at the sample");
    Vec2 w;
    w << f, Complex(1.0);
    for (std::size_t i = d.fe_segment.lengths.size(); i-- > 0;) {
        const FEMesh element{{d.fe_segment.lengths[i]}};
        w = discrete_propagator_fe(element, s).inverse() * w;
    }
    const Complex num = w(0) + w(1);
    const Complex den = w(1) - w(0);
    if (std::abs(den) <= 1e-300 * (1.0 + std::abs(num))) throw PoleError("outgoing component vanishes at the sample");
    return num / den;
}

}  // namespace pmlforge
