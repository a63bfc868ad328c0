// Minimal double-double arithmetic (Dekker/Bailey style) for the
// continued-fraction extraction at large pair counts, where plain double
// loses roughly a digit per division stage. Only what the cascade needs:
// +, -, *, / and complex versions thereof. Internal header.

#pragma once

#include <cmath>
#include <complex>

namespace pmlforge::detail {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double h) : hi(h) {}
    dd(double h, double l) : hi(h), lo(l) {}
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double v = s - a;
    return {s, (a - (s - v)) + (b - v)};
}

inline dd quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    const double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    const double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    const double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline double to_double(dd a) { return a.hi + a.lo; }

struct cdd {
    dd re;
    dd im;

    cdd() = default;
    cdd(dd r, dd i) : re(r), im(i) {}
    cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}
};

inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(cdd a, cdd b) { return {a.re - b.re, a.im - b.im}; }

inline cdd operator*(cdd a, cdd b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline cdd operator/(cdd a, cdd b) {
    const dd n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

inline std::complex<double> to_complex(cdd a) { return {to_double(a.re), to_double(a.im)}; }
inline double abs_est(cdd a) { return std::abs(to_complex(a)); }

}  // namespace pmlforge::detail
