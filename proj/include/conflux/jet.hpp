#pragma once
/*
 * Truncated Taylor jets in one complex variable.
 *
 * A Jet of order N stores coefficients c[0..N] of f(t) = sum_k c[k] t^k with
 * c[k] = f^{(k)}(0)/k!, i.e. the normalized derivatives at the expansion
 * point.  Arithmetic is exact truncated power-series arithmetic:
 *
 *   product:     (fg)_k   = sum_{m=0}^{k} f_m g_{k-m}
 *   reciprocal:  r_0 = 1/b_0,           r_k = -r_0 sum_{m=1}^{k} b_m r_{k-m}
 *   exponential: e_0 = exp(f_0),        e_k = (1/k) sum_{m=1}^{k} m f_m e_{k-m}
 *   logarithm:   l_0 = log(f_0),  l_k = (f_k - (1/k) sum_{m=1}^{k-1} m l_m f_{k-m}) / f_0
 *
 * exp/log recurrences follow from differentiating e = exp(f) (e' = f' e) and
 * l = log(f) (f l' = f').  Branch choices for log/log1p are made on the value
 * part only, so a jet inherits the principal branch of its value.
 */
#include <algorithm>
#include <cstddef>
#include <vector>

#include "conflux/errors.hpp"
#include "conflux/types.hpp"

namespace conflux {

class Jet {
public:
    Jet() : c_(1, Complex(0.0, 0.0)) {}
    explicit Jet(std::size_t order) : c_(order + 1, Complex(0.0, 0.0)) {}
    Jet(std::size_t order, const Complex& value) : c_(order + 1, Complex(0.0, 0.0)) {
        c_[0] = value;
    }

    static Jet constant(const Complex& value, std::size_t order) {
        return Jet(order, value);
    }
    // The identity function t -> value + t as a jet at `value`.
    static Jet variable(const Complex& value, std::size_t order) {
        Jet j(order, value);
        if (order >= 1) j.c_[1] = Complex(1.0, 0.0);
        return j;
    }

    std::size_t order() const { return c_.size() - 1; }
    const Complex& operator[](std::size_t k) const { return c_[k]; }
    Complex& operator[](std::size_t k) { return c_[k]; }
    const Complex& value() const { return c_[0]; }
    const std::vector<Complex>& coeffs() const { return c_; }

    Jet operator-() const {
        Jet r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r(std::max(a.order(), b.order()));
        for (std::size_t k = 0; k < a.c_.size(); ++k) r.c_[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) r.c_[k] += b.c_[k];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(std::max(a.order(), b.order()));
        const std::size_t n = r.c_.size();
        for (std::size_t k = 0; k < n; ++k) {
            Complex s(0.0, 0.0);
            const std::size_t lo = (k + 1 > b.c_.size()) ? k + 1 - b.c_.size() : 0;
            const std::size_t hi = std::min(k, a.c_.size() - 1);
            for (std::size_t m = lo; m <= hi; ++m) s += a.c_[m] * b.c_[k - m];
            r.c_[k] = s;
        }
        return r;
    }

    friend Jet operator+(const Jet& a, const Complex& s) {
        Jet r = a;
        r.c_[0] += s;
        return r;
    }
    friend Jet operator+(const Complex& s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, const Complex& s) { return a + (-s); }
    friend Jet operator-(const Complex& s, const Jet& a) { return (-a) + s; }
    friend Jet operator*(const Jet& a, const Complex& s) {
        Jet r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }
    friend Jet operator*(const Complex& s, const Jet& a) { return a * s; }
    friend Jet operator*(const Jet& a, double s) { return a * Complex(s, 0.0); }
    friend Jet operator*(double s, const Jet& a) { return a * Complex(s, 0.0); }
    friend Jet operator/(const Jet& a, const Complex& s) { return a * (Complex(1.0, 0.0) / s); }

private:
    std::vector<Complex> c_; // c_[k] = f^{(k)}/k!
};

inline Jet recip_jet(const Jet& b) {
    if (b.value() == Complex(0.0, 0.0))
        throw PoleError("reciprocal of a jet with zero value part");
    Jet r(b.order());
    const Complex r0 = Complex(1.0, 0.0) / b.value();
    r[0] = r0;
    for (std::size_t k = 1; k <= b.order(); ++k) {
        Complex s(0.0, 0.0);
        for (std::size_t m = 1; m <= k; ++m) s += b[m] * r[k - m];
        r[k] = -r0 * s;
    }
    return r;
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * recip_jet(b); }
inline Jet operator/(const Complex& s, const Jet& b) { return recip_jet(b) * s; }

inline Jet exp_jet(const Jet& f) {
    Jet e(f.order());
    e[0] = std::exp(f.value());
    for (std::size_t k = 1; k <= f.order(); ++k) {
        Complex s(0.0, 0.0);
        for (std::size_t m = 1; m <= k; ++m) s += static_cast<double>(m) * f[m] * e[k - m];
        e[k] = s / static_cast<double>(k);
    }
    return e;
}

inline Jet log_jet(const Jet& f) {
    if (f.value() == Complex(0.0, 0.0))
        throw PoleError("logarithm of a jet with zero value part");
    Jet l(f.order());
    l[0] = std::log(f.value());
    for (std::size_t k = 1; k <= f.order(); ++k) {
        Complex s(0.0, 0.0);
        for (std::size_t m = 1; m + 1 <= k; ++m) s += static_cast<double>(m) * l[m] * f[k - m];
        l[k] = (f[k] - s / static_cast<double>(k)) / f.value();
    }
    return l;
}

// log(1+q) for complex q, accurate for small |q|: evaluates log(u)/(u-1)·q
// with u = 1+q so the small-q cancellation in log(u) is divided back out.
inline Complex log1p_c(const Complex& q) {
    const Complex u = Complex(1.0, 0.0) + q;
    if (u == Complex(1.0, 0.0)) return q;
    return std::log(u) * (q / (u - Complex(1.0, 0.0)));
}

// log(1 + f) as a jet, with the value part computed cancellation-free.
inline Jet log1p_jet(const Jet& f) {
    Jet shifted = f + Complex(1.0, 0.0);
    Jet l = log_jet(shifted);
    l[0] = log1p_c(f.value());
    return l;
}

} // namespace conflux
