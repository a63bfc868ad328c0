// Two-sided NtD maps and propagators, continuum and discrete, plus the
// half-space error sweep. All 2x2 maps share the characteristic basis
//
//     Z = (1/sqrt 2) [[1, -1], [1, 1]],
//
// in which the NtD maps are diag(tanh-like, coth-like) and the
// propagators diag(exp-like, exp-like^{-1}). The discrete versions
// replace exp(s) by t(-s)/t(s) (FE mesh) or tanh(s/2) by the grid's
// nested fraction f_k (FD grid); every identity among them is exact in
// the discrete variables, not asymptotic.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pmlforge/grid.hpp"
#include "pmlforge/poly.hpp"
#include "pmlforge/window.hpp"

namespace pmlforge {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

// The fixed orthogonal change of basis above.
Mat2 char_basis();

// F(s) = (1/sinh s) [[cosh s, -1], [-1, cosh s]]. Pole at s in i pi Z.
Mat2 continuum_ntd(Complex s);

// G(s) = [[cosh s, sinh s], [sinh s, cosh s]]; G(s) w(0) = w(1).
Mat2 continuum_propagator(Complex s);

// Discrete exp of a mesh: t(-s)/t(s) with t the mesh polynomial.
Complex discrete_exp(const FEMesh& mesh, Complex s);

// F~(s) from the discrete tanh(s/2) = (t(-s)-t(s))/(t(s)+t(-s)).
// Throws PoleError at zeros of t(s)+t(-s) and of t(-s)-t(s).
Mat2 discrete_ntd_fe(const FEMesh& mesh, Complex s);

// G~(s) = Z diag(exp(s), exp(-s)) Z^T. Throws PoleError at roots of
// t(s) t(-s).
Mat2 discrete_propagator_fe(const FEMesh& mesh, Complex s);

// F^(s) = Z diag(f_k, 1/f_k) Z^T with f_k from the backward recursion.
// Throws PoleError at zeros and poles of f_k.
Mat2 discrete_ntd_fd(const FDGrid& grid, Complex s);

struct HalfspaceErrorSample {
    Complex lambda;
    Complex exact;   // -1/sqrt(lambda)
    Complex approx;  // R(lambda) from the Newman form of h
    double rel_error = 0.0;
    double reflection_modulus = 0.0;
    bool flag_pole = false;  // within 1e-8 (scale-free) of a pole; excluded from maxima
};

struct IntervalMaxima {
    double max_reflection = 0.0;
    double max_rel_error = 0.0;
};

struct SweepResult {
    // Propagative rows first (lambda in [-1, lambda1]), then evanescent
    // (lambda in [lambda2, lambda3]), each in increasing lambda.
    std::vector<HalfspaceErrorSample> samples;
    IntervalMaxima propagative;
    IntervalMaxima evanescent;
};

// Chebyshev-distributed lambda samples, n_samples per interval. The
// per-interval maxima are refined past the sample grid (every bracketed
// local maximum is polished), so they are independent of n_samples once
// the ripples are resolved. Flagged samples do not enter the maxima.
SweepResult halfspace_error_sweep(const Polynomial& h, const SpectralWindow& window, int n_samples);

}  // namespace pmlforge
