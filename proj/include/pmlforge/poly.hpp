// Polynomials over C and the odd/even rational pairs used throughout the
// layer designs.
//
// Conventions, fixed once here and relied on everywhere else:
//   * coefficients are stored ascending, so coeffs()[j] multiplies s^j;
//   * a polynomial may additionally carry a root product form
//     lead * prod(s - r_i), which is the preferred evaluation path near
//     the roots (it is exact at them);
//   * for a mesh polynomial t of even degree 2k the odd/even split is
//         s * p~(s^2) = t(-s) - t(s),   q~(s^2) = t(s) + t(-s),
//     which makes f(s) = s p~(s^2) / q~(s^2) the discrete tanh(s/2) and
//     keeps exp(s) = t(-s)/t(s) consistent with it;
//   * the principal square root maps negative real spectral parameters
//     lambda to s = +i sqrt(|lambda|).

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pmlforge {

using Complex = std::complex<double>;

// Thrown when a reflection or NtD evaluation lands on a pole.
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Principal square root with the wave-equation branch convention:
// real lambda < 0 maps to +i sqrt(|lambda|), never to the lower half plane.
Complex sqrt_lambda(Complex lambda);

class Polynomial {
  public:
    static constexpr int kMaxDegree = 40;

    Polynomial() = default;  // zero polynomial
    explicit Polynomial(std::vector<Complex> coeffs);

    static Polynomial constant(Complex c);
    static Polynomial from_roots(Complex lead, std::vector<Complex> roots);

    // degree() is -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int j) const;
    Complex lead() const;

    bool has_root_form() const { return root_form_.has_value(); }
    const std::vector<Complex>& roots() const;

    // Root product when available, Horner otherwise.
    Complex eval(Complex s) const;
    Complex eval_coeffs(Complex s) const;

    // t(-s). Keeps the root form (roots negate, lead picks up (-1)^deg).
    Polynomial reflected() const;

    Polynomial derivative() const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial scaled(Complex c) const;

    // Companion matrix eigenvalues with one Newton polish per root.
    std::vector<Complex> compute_roots() const;

  private:
    struct RootForm {
        Complex lead;
        std::vector<Complex> roots;
    };

    void trim();
    void check_degree() const;

    std::vector<Complex> coeffs_;
    std::optional<RootForm> root_form_;
};

// f(s) = s p~(s^2) / q~(s^2); p~ and q~ are polynomials in lambda = s^2.
struct OddEvenRational {
    Polynomial p_tilde;
    Polynomial q_tilde;

    Complex eval(Complex s) const;
};

// h(s)/h(-s). Throws PoleError when |h(-s)| underflows the absolute floor
// 1e-300; no relative snapping is applied.
Complex reflection(const Polynomial& h, Complex s);

// The rational NtD value R(lambda) recovered from h(s) = s p(s^2) + q(s^2):
//   R = (h(s) - h(-s)) / (s (h(s) + h(-s))),  s = sqrt_lambda(lambda).
// With a root form the value is exactly -1/s0 at lambda = s0^2 for any root
// s0 of h lying in the principal branch image.
Complex newman_ntd(const Polynomial& h, Complex lambda);

// Split a degree-2k polynomial into the odd/even pair defined above.
OddEvenRational split_odd_even(const Polynomial& t);

// Inverse of the split: t(s) = (q~(s^2) - s p~(s^2)) / 2, degree 2k,
// normalized so that t(0) = q~(0)/2. Rejects deg p~ >= deg q~ and pairs
// sharing a common factor in lambda (reported, not silently reduced).
Polynomial combine_odd_even(const OddEvenRational& r);

}  // namespace pmlforge
