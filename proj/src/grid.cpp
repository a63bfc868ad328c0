#include "pmlforge/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "dd.hpp"

namespace pmlforge {

namespace {

// Pair counts above this run the extraction in double-double; the
// roundtrip identity degrades past ~12 pairs in plain double.
constexpr int kExtendedPrecisionThreshold = 10;

// Zero thresholds for the coefficient cascade, relative to the current
// stage's largest coefficient.
constexpr double kZeroTolDouble = 5e-12;
constexpr double kZeroTolExtended = 1e-28;

double coeff_abs(const Complex& c) { return std::abs(c); }
double coeff_abs(const detail::cdd& c) { return detail::abs_est(c); }

Complex complex_of(const Complex& c) { return c; }
Complex complex_of(const detail::cdd& c) { return detail::to_complex(c); }

template <class C>
double coeff_scale(const std::vector<C>& v) {
    double m = 0.0;
    for (const C& c : v) m = std::max(m, coeff_abs(c));
    return m;
}

void validate_grid(const FDGrid& g) {
    if (g.hhat.empty()) {
        if (!g.h.empty()) throw std::invalid_argument("grid has h steps without hhat steps");
        return;
    }
    const std::size_t expect_h = g.hhat.size() - (g.terminal_unbounded ? 1u : 0u);
    if (g.h.size() != expect_h)
        throw std::invalid_argument("step count mismatch between hhat and h for this terminal kind");
    for (const std::vector<Complex>* v : {&g.hhat, &g.h})
        for (const Complex& c : *v)
            if (c == Complex(0.0) || !std::isfinite(std::abs(c)))
                throw std::invalid_argument("grid step must be nonzero and finite");
}

// Steps in traversal order: hhat_1, h_1, hhat_2, h_2, ...
std::vector<Complex> interleave(const FDGrid& g) {
    std::vector<Complex> L;
    L.reserve(g.hhat.size() + g.h.size());
    for (std::size_t i = 0; i < g.hhat.size(); ++i) {
        L.push_back(g.hhat[i]);
        if (i < g.h.size()) L.push_back(g.h[i]);
    }
    return L;
}

// Expands the nested fraction bottom-up as a polynomial pair v = N/D,
// wrapping v -> L[j] s + 1/v one level at a time.  Returns f = 1/v_1.
template <class C>
void expand_fraction(const std::vector<C>& L, std::vector<C>& num, std::vector<C>& den) {
    std::vector<C> N{C(0.0), L.back()};
    std::vector<C> D{C(1.0)};
    for (std::size_t j = L.size() - 1; j-- > 0;) {
        std::vector<C> t(N.size() + 1, C(0.0));
        for (std::size_t i = 0; i < N.size(); ++i) t[i + 1] = L[j] * N[i];
        for (std::size_t i = 0; i < D.size(); ++i) t[i] = t[i] + D[i];
        D = std::move(N);
        N = std::move(t);
    }
    num = std::move(D);
    den = std::move(N);
}

// An odd-length fraction leaves f as even/odd in s; multiplying both
// sides by s restores the canonical odd numerator over even denominator.
template <class C>
OddEvenRational rational_from_pair(std::vector<C> num, std::vector<C> den) {
    if ((den.size() - 1) % 2 != 0) {
        num.insert(num.begin(), C(0.0));
        den.insert(den.begin(), C(0.0));
    }
    const C lead = den.back();
    std::vector<Complex> p(num.size() / 2), q(den.size() / 2 + 1);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = complex_of(num[2 * i + 1] / lead);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = complex_of(den[2 * i] / lead);
    return {Polynomial(std::move(p)), Polynomial(std::move(q))};
}

// Euclidean cascade on the pair (A, B) = (q~(s^2), s p~(s^2)).  Each
// stage divides out one step coefficient and swaps; parity forces the
// remainder degree to drop by exactly two per swap, so a coprime pair
// terminates with a constant (bounded end) or a linear leftover
// (unbounded terminal).  Anything richer means a common factor.
template <class C>
std::vector<Complex> cascade(std::vector<C> A, std::vector<C> B, double eps_zero) {
    std::vector<Complex> out;
    int stage = 0;
    for (;;) {
        const double scale = std::max(coeff_scale(A), coeff_scale(B));
        if (scale == 0.0) break;
        while (!B.empty() && coeff_abs(B.back()) <= eps_zero * scale) B.pop_back();
        if (B.empty()) break;
        while (!A.empty() && coeff_abs(A.back()) <= eps_zero * scale) A.pop_back();
        if (A.size() != B.size() + 1)
            throw BreakdownError("leading coefficient vanished during step extraction", stage);

        const C c = A.back() / B.back();
        out.push_back(complex_of(c));
        std::vector<C> R(A.size() - 1, C(0.0));
        for (std::size_t i = 0; i + 1 < A.size(); ++i) R[i] = A[i];
        for (std::size_t i = 0; i + 1 < B.size(); ++i) R[i + 1] = R[i + 1] - c * B[i];
        A = std::move(B);
        B = std::move(R);
        ++stage;
    }
    const double scale = coeff_scale(A);
    while (!A.empty() && coeff_abs(A.back()) <= eps_zero * scale) A.pop_back();
    if (A.size() > 2) throw std::invalid_argument("inputs share a common factor; reduce before extraction");
    return out;
}

}  // namespace

Complex FEMesh::total() const {
    Complex t(0.0);
    for (const Complex& l : lengths) t += l;
    return t;
}

OddEvenRational grid_to_rational(const FDGrid& grid) {
    validate_grid(grid);
    if (grid.pair_count() == 0) return {Polynomial(), Polynomial::constant(Complex(1.0))};
    const std::vector<Complex> L = interleave(grid);
    if (grid.pair_count() <= kExtendedPrecisionThreshold) {
        std::vector<Complex> num, den;
        expand_fraction(L, num, den);
        return rational_from_pair(std::move(num), std::move(den));
    }
    std::vector<detail::cdd> Ld;
    Ld.reserve(L.size());
    for (const Complex& c : L) Ld.push_back(detail::cdd(c));
    std::vector<detail::cdd> num, den;
    expand_fraction(Ld, num, den);
    return rational_from_pair(std::move(num), std::move(den));
}

FDGrid rational_to_grid(const OddEvenRational& f) {
    if (f.q_tilde.is_zero()) throw std::invalid_argument("q~ must be nonzero");
    if (f.p_tilde.is_zero()) return {{}, {}, true};
    const int k = f.q_tilde.degree();
    if (f.p_tilde.degree() > k - 1) throw std::invalid_argument("deg p~ must stay below deg q~");

    std::vector<Complex> A(std::size_t(2 * k) + 1, Complex(0.0));
    for (int i = 0; i <= k; ++i) A[std::size_t(2 * i)] = f.q_tilde.coeff(i);
    std::vector<Complex> B(std::size_t(2 * f.p_tilde.degree()) + 2, Complex(0.0));
    for (int i = 0; i <= f.p_tilde.degree(); ++i) B[std::size_t(2 * i + 1)] = f.p_tilde.coeff(i);

    std::vector<Complex> steps;
    if (k <= kExtendedPrecisionThreshold) {
        steps = cascade(std::move(A), std::move(B), kZeroTolDouble);
    } else {
        std::vector<detail::cdd> Ad, Bd;
        Ad.reserve(A.size());
        Bd.reserve(B.size());
        for (const Complex& c : A) Ad.push_back(detail::cdd(c));
        for (const Complex& c : B) Bd.push_back(detail::cdd(c));
        steps = cascade(std::move(Ad), std::move(Bd), kZeroTolExtended);
    }

    FDGrid g;
    if (static_cast<int>(steps.size()) == 2 * k) {
        g.terminal_unbounded = false;
    } else if (static_cast<int>(steps.size()) == 2 * k - 1) {
        g.terminal_unbounded = true;
    } else {
        throw BreakdownError("extraction terminated at an unexpected stage", static_cast<int>(steps.size()));
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i % 2 == 0)
            g.hhat.push_back(steps[i]);
        else
            g.h.push_back(steps[i]);
    }
    return g;
}

Polynomial mesh_polynomial(const FEMesh& mesh) {
    std::vector<Complex> roots;
    Complex lead(1.0);
    roots.reserve(mesh.lengths.size());
    for (const Complex& l : mesh.lengths) {
        if (l == Complex(0.0) || !std::isfinite(std::abs(l)))
            throw std::invalid_argument("mesh element length must be nonzero and finite");
        roots.push_back(2.0 / l);
        lead *= -l / 2.0;  // (1 - l s / 2) = (-l / 2)(s - 2 / l)
    }
    return Polynomial::from_roots(lead, std::move(roots));
}

FEMesh mesh_from_polynomial(const Polynomial& t) {
    if (t.degree() < 1) throw std::invalid_argument("mesh polynomial needs degree >= 1");
    std::vector<Complex> roots = t.has_root_form() ? t.roots() : t.compute_roots();
    double scale = 1.0;
    for (const Complex& r : roots) scale = std::max(scale, std::abs(r));
    FEMesh mesh;
    for (const Complex& r : roots) {
        if (std::abs(r) <= 1e-14 * scale) throw std::invalid_argument("zero root of t; mesh length undefined");
        mesh.lengths.push_back(2.0 / r);
    }
    return mesh;
}

FDGrid fe_to_fd(const FEMesh& mesh) {
    if (mesh.element_count() % 2 != 0) throw std::invalid_argument("even element count required");
    if (mesh.element_count() == 0) return {{}, {}, true};
    return rational_to_grid(split_odd_even(mesh_polynomial(mesh)));
}

FEMesh fd_to_fe(const FDGrid& grid) {
    if (grid.pair_count() == 0) throw std::invalid_argument("empty grid has no mesh");
    return mesh_from_polynomial(combine_odd_even(grid_to_rational(grid)));
}

Complex fd_fraction_eval(const FDGrid& grid, Complex s) {
    validate_grid(grid);
    if (grid.pair_count() == 0) return Complex(0.0);
    const std::vector<Complex> L = interleave(grid);
    // v = N/D as scalars, innermost outward; the homogeneous pair rides
    // through intermediate zeros and poles without special cases.
    Complex N = L.back() * s;
    Complex D(1.0);
    for (std::size_t j = L.size() - 1; j-- > 0;) {
        const Complex t = L[j] * s * N + D;
        D = N;
        N = t;
        const double m = std::max(std::abs(N), std::abs(D));
        if (m > 1e100) {
            N /= m;
            D /= m;
        }
    }
    if (N == Complex(0.0)) return Complex(std::numeric_limits<double>::infinity(), 0.0);
    return D / N;
}

}  // namespace pmlforge
