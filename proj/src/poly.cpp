#include "pmlforge/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace pmlforge {

namespace {
constexpr double kPoleFloor = 1e-300;
}

Complex sqrt_lambda(Complex lambda) {
    if (lambda.imag() == 0.0) {
        // Force the cut approach from above so -|x| maps to +i sqrt(|x|),
        // independent of the sign of a zero imaginary part.
        lambda = Complex(lambda.real(), 0.0);
    }
    return std::sqrt(lambda);
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
    check_degree();
}

Polynomial Polynomial::constant(Complex c) {
    if (c == Complex(0.0)) return Polynomial();
    return Polynomial({c});
}

Polynomial Polynomial::from_roots(Complex lead, std::vector<Complex> roots) {
    if (lead == Complex(0.0)) throw std::invalid_argument("root form needs a nonzero leading coefficient");
    std::vector<Complex> c{lead};
    for (const Complex& r : roots) {
        c.push_back(c.back());
        for (std::size_t j = c.size() - 2; j > 0; --j) c[j] = c[j - 1] - r * c[j];
        c[0] = -r * c[0];
    }
    Polynomial p(std::move(c));
    p.root_form_ = RootForm{lead, std::move(roots)};
    return p;
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
}

void Polynomial::check_degree() const {
    if (degree() > kMaxDegree) throw std::invalid_argument("polynomial degree exceeds the hard cap of 40");
}

Complex Polynomial::coeff(int j) const {
    if (j < 0 || j >= static_cast<int>(coeffs_.size())) return Complex(0.0);
    return coeffs_[static_cast<std::size_t>(j)];
}

Complex Polynomial::lead() const {
    if (coeffs_.empty()) return Complex(0.0);
    return coeffs_.back();
}

const std::vector<Complex>& Polynomial::roots() const {
    if (!root_form_) throw std::logic_error("polynomial carries no root form");
    return root_form_->roots;
}

Complex Polynomial::eval(Complex s) const {
    if (root_form_) {
        Complex v = root_form_->lead;
        for (const Complex& r : root_form_->roots) v *= (s - r);
        return v;
    }
    return eval_coeffs(s);
}

Complex Polynomial::eval_coeffs(Complex s) const {
    Complex v(0.0);
    for (std::size_t j = coeffs_.size(); j-- > 0;) v = v * s + coeffs_[j];
    return v;
}

Polynomial Polynomial::reflected() const {
    std::vector<Complex> c = coeffs_;
    for (std::size_t j = 1; j < c.size(); j += 2) c[j] = -c[j];
    Polynomial p(std::move(c));
    if (root_form_) {
        RootForm rf = *root_form_;
        if (rf.roots.size() % 2 == 1) rf.lead = -rf.lead;
        for (Complex& r : rf.roots) r = -r;
        p.root_form_ = std::move(rf);
    }
    return p;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Complex> c(coeffs_.size() - 1);
    for (std::size_t j = 1; j < coeffs_.size(); ++j) c[j - 1] = double(j) * coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (is_zero() || rhs.is_zero()) return Polynomial();
    std::vector<Complex> c(coeffs_.size() + rhs.coeffs_.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    Polynomial p(std::move(c));
    if (root_form_ && rhs.root_form_) {
        RootForm rf{root_form_->lead * rhs.root_form_->lead, root_form_->roots};
        rf.roots.insert(rf.roots.end(), rhs.root_form_->roots.begin(), rhs.root_form_->roots.end());
        p.root_form_ = std::move(rf);
    }
    return p;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()), Complex(0.0));
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = coeff(int(j)) + rhs.coeff(int(j));
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()), Complex(0.0));
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = coeff(int(j)) - rhs.coeff(int(j));
    return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(Complex c) const {
    if (c == Complex(0.0)) return Polynomial();
    std::vector<Complex> v = coeffs_;
    for (Complex& x : v) x *= c;
    Polynomial p(std::move(v));
    if (root_form_) p.root_form_ = RootForm{root_form_->lead * c, root_form_->roots};
    return p;
}

std::vector<Complex> Polynomial::compute_roots() const {
    const int n = degree();
    if (n <= 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    const Complex ln = coeffs_.back();
    for (int j = 0; j < n; ++j) companion(j, n - 1) = -coeffs_[std::size_t(j)] / ln;
    for (int j = 1; j < n; ++j) companion(j, j - 1) = Complex(1.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, /*computeEigenvectors=*/false);
    std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);

    // One Newton polish per root, accepted only if the residual drops. At a
    // multiple root pv and dv are both rounding noise and their quotient can
    // be O(1); the residual check rejects such steps.
    Polynomial d = derivative();
    for (Complex& r : roots) {
        Complex pv = eval_coeffs(r);
        Complex dv = d.eval_coeffs(r);
        if (std::abs(pv) == 0.0 || std::abs(dv) == 0.0) continue;
        Complex step = pv / dv;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
        Complex cand = r - step;
        if (std::abs(eval_coeffs(cand)) < std::abs(pv)) r = cand;
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return roots;
}

Complex OddEvenRational::eval(Complex s) const {
    const Complex lam = s * s;
    const Complex den = q_tilde.eval(lam);
    if (std::abs(den) < kPoleFloor) throw PoleError("odd/even rational evaluated at a pole");
    return s * p_tilde.eval(lam) / den;
}

Complex reflection(const Polynomial& h, Complex s) {
    const Complex den = h.eval(-s);
    if (std::abs(den) < kPoleFloor) throw PoleError("reflection evaluated at a pole of h(s)/h(-s)");
    return h.eval(s) / den;
}

Complex newman_ntd(const Polynomial& h, Complex lambda) {
    const Complex s = sqrt_lambda(lambda);
    const Complex hp = h.eval(s);
    const Complex hm = h.eval(-s);
    const Complex den = s * (hp + hm);
    if (std::abs(den) < kPoleFloor) throw PoleError("NtD value requested at a pole");
    return (hp - hm) / den;
}

OddEvenRational split_odd_even(const Polynomial& t) {
    const int n = t.degree();
    if (n < 0) throw std::invalid_argument("cannot split the zero polynomial");
    if (n % 2 != 0) throw std::invalid_argument("odd/even split requires even degree");
    std::vector<Complex> p(std::size_t(n / 2), Complex(0.0));
    std::vector<Complex> q(std::size_t(n / 2) + 1, Complex(0.0));
    for (int j = 0; j <= n; ++j) {
        if (j % 2 == 0)
            q[std::size_t(j / 2)] = 2.0 * t.coeff(j);
        else
            p[std::size_t(j / 2)] = -2.0 * t.coeff(j);
    }
    return {Polynomial(std::move(p)), Polynomial(std::move(q))};
}

Polynomial combine_odd_even(const OddEvenRational& r) {
    const int k = r.q_tilde.degree();
    if (k < 0) throw std::invalid_argument("q~ must be nonzero");
    if (r.p_tilde.degree() >= k && !(r.p_tilde.is_zero() && k == 0))
        throw std::invalid_argument("deg p~ must stay below deg q~");

    // A shared factor in lambda means f is not in lowest terms; the caller
    // has to reduce, we only diagnose. Checked at the roots of q~ since the
    // candidate factors are exactly its divisors.
    if (!r.p_tilde.is_zero() && k >= 1) {
        for (const Complex& lam : r.q_tilde.compute_roots()) {
            double scale = 0.0;
            double pw = 1.0;
            for (const Complex& c : r.p_tilde.coeffs()) {
                scale += std::abs(c) * pw;
                pw *= std::abs(lam);
            }
            if (scale > 0.0 && std::abs(r.p_tilde.eval(lam)) <= 1e-9 * scale)
                throw std::invalid_argument("p~ and q~ share a common factor; pair is degenerate");
        }
    }

    std::vector<Complex> t(std::size_t(2 * k) + 1, Complex(0.0));
    for (int j = 0; j <= k; ++j) t[std::size_t(2 * j)] = 0.5 * r.q_tilde.coeff(j);
    for (int j = 0; j < k; ++j) t[std::size_t(2 * j + 1)] = -0.5 * r.p_tilde.coeff(j);
    return Polynomial(std::move(t));
}

}  // namespace pmlforge
