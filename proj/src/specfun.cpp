/*
 * Lanczos log-Gamma, cancellation-free Gamma ratios, characters and their
 * parameter jets.
 *
 * The Lanczos form used (g = 7, n = 9) is, for Re z >= 0.5 and t = z + 6.5,
 *
 *   logGamma(z) = ln(2 pi)/2 + (z - 1/2) Log t - t + Log A(z),
 *   A(z) = a_0 + sum_{k=1}^{8} a_k / (z + k - 1),
 *
 * and the ratio logGamma(z) - logGamma(z - c) collapses, with
 * t2 = z - c + 6.5, to
 *
 *   Log A(z) - Log A(z-c) + (z - 1/2) log1p(c/t2) + c Log t2 - c ,
 *
 * which is exact because arg t and arg t2 both lie in (-pi/2, pi/2), so
 * Log t - Log t2 = Log(t/t2) = log1p(c/t2) without any branch correction.
 * Arguments left of Re = 0.5 are lifted with the functional equation
 * (the same shift for both arguments of a ratio, keeping the correction
 * terms paired).
 *
 * All cores are templated over Complex and Jet so the c-derivatives of the
 * characters come from the same code path as their values.
 */
#include "conflux/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace conflux {
namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;

constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline Complex value_of(const Complex& z) { return z; }
inline Complex value_of(const Jet& z) { return z.value(); }

inline Complex constant_like(const Complex&, Complex v) { return v; }
inline Jet constant_like(const Jet& proto, Complex v) {
    return Jet::constant(v, proto.order());
}

inline Complex log_of(const Complex& z) { return std::log(z); }
inline Jet log_of(const Jet& z) { return log_jet(z); }

inline Complex exp_of(const Complex& z) { return std::exp(z); }
inline Jet exp_of(const Jet& z) { return exp_jet(z); }

inline Complex log1p_of(const Complex& z) { return log1p_c(z); }
inline Jet log1p_of(const Jet& z) { return log1p_jet(z); }

// Genuine pole of Gamma: within 1e-14 (relative to the integer size) of a
// non-positive integer.
bool gamma_pole(Complex z) {
    const double r = std::round(z.real());
    if (r > 0.0) return false;
    const double scale = std::max(1.0, std::abs(r));
    return std::abs(z - Complex(r, 0.0)) <= 1e-14 * scale;
}

// Routing tolerance for the character special cases: a point this close to a
// non-positive integer is treated as sitting on the lattice.
bool near_npint(Complex z, long* n_out = nullptr) {
    const double r = std::round(z.real());
    if (r > 0.0) return false;
    if (std::abs(z - Complex(r, 0.0)) <= 1e-8) {
        if (n_out) *n_out = std::lround(r);
        return true;
    }
    return false;
}

// Lanczos partial-fraction sum A(z); adequate for Re(value(z)) >= 0.5.
template <class T>
T lanczos_sum(const T& z) {
    T s = constant_like(z, Complex(kLanczos[0], 0.0));
    for (int k = 1; k < 9; ++k)
        s = s + constant_like(z, Complex(kLanczos[k], 0.0)) / (z + Complex(k - 1, 0.0));
    return s;
}

template <class T>
T log_gamma_right(const T& z) {
    T t = z + Complex(6.5, 0.0);
    return constant_like(z, Complex(kHalfLogTwoPi, 0.0)) +
           (z - Complex(0.5, 0.0)) * log_of(t) - t + log_of(lanczos_sum(z));
}

template <class T>
T log_gamma_impl(const T& z) {
    const Complex zv = value_of(z);
    if (gamma_pole(zv)) throw PoleError("log_gamma: non-positive integer argument");
    if (zv.real() >= 0.5) return log_gamma_right(z);
    const int m = static_cast<int>(std::ceil(0.5 - zv.real()));
    T acc = constant_like(z, Complex(0.0, 0.0));
    for (int j = 0; j < m; ++j) acc = acc + log_of(z + Complex(j, 0.0));
    return log_gamma_right(z + Complex(m, 0.0)) - acc;
}

template <class T>
T lgr_impl(const T& z, const T& c) {
    const Complex zv = value_of(z);
    const Complex wv = zv - value_of(c);
    if (gamma_pole(zv)) throw PoleError("log_gamma_ratio: z at a pole");
    if (gamma_pole(wv)) throw PoleError("log_gamma_ratio: z - c at a pole");
    if (zv.real() >= 0.5 && wv.real() >= 0.5) {
        T w = z - c;
        T t2 = w + Complex(6.5, 0.0);
        return log_of(lanczos_sum(z)) - log_of(lanczos_sum(w)) +
               (z - Complex(0.5, 0.0)) * log1p_of(c / t2) + c * log_of(t2) - c;
    }
    const int m =
        static_cast<int>(std::ceil(0.5 - std::min(zv.real(), wv.real())));
    T acc = constant_like(z, Complex(0.0, 0.0));
    for (int j = 0; j < m; ++j)
        acc = acc + (log_of(z + Complex(j, 0.0)) - log_of(z - c + Complex(j, 0.0)));
    return lgr_impl(z + Complex(m, 0.0), c) - acc;
}

// Gamma(z + n) / Gamma(z) continued as the finite product; exact on the
// lattice where both Gammas are singular.
Complex gamma_ratio_shift(Complex z, long n) {
    Complex p(1.0, 0.0);
    if (n >= 0) {
        for (long j = 0; j < n; ++j) p *= z + Complex(static_cast<double>(j), 0.0);
        return p;
    }
    for (long j = 1; j <= -n; ++j) {
        const Complex f = z - Complex(static_cast<double>(j), 0.0);
        if (std::abs(f) < 1e-300)
            throw PoleError("character: singular integer-shift Gamma ratio");
        p *= f;
    }
    return Complex(1.0, 0.0) / p;
}

Jet sin_jet(const Jet& f) {
    const Complex i(0.0, 1.0);
    Jet ep = exp_jet(f * i);
    Jet em = exp_jet(f * (-i));
    return (ep - em) * Complex(0.0, -0.5);
}

} // namespace

Complex log_gamma(Complex z) { return log_gamma_impl(z); }
Jet log_gamma(const Jet& z) { return log_gamma_impl(z); }

Complex log_gamma_ratio(Complex z, Complex c) { return lgr_impl(z, c); }
Jet log_gamma_ratio(const Jet& z, const Jet& c) { return lgr_impl(z, c); }

Complex character(CharacterKind kind, Complex c, double h, Complex x) {
    if (!(h > 0.0)) throw ValidationError("character: h must be positive");
    const Complex X = x / h;
    const double lh = std::log(h);
    const Complex hc = std::exp(c * lh);
    if (kind == CharacterKind::PlusInfinity) {
        const bool np = near_npint(X);
        const bool dp = near_npint(X - c);
        if (np && dp) {
            long n = 0;
            if (!near_integer(c, 1e-9, &n))
                throw PoleError("character: Gamma ratio singular at x/h");
            return hc * gamma_ratio_shift(X - Complex(static_cast<double>(n), 0.0), n);
        }
        if (np) throw PoleError("character: Gamma(x/h) pole");
        if (dp) return Complex(0.0, 0.0);
        return std::exp(c * lh + lgr_impl(X, c));
    }
    const Complex num = Complex(1.0, 0.0) + c - X;
    const Complex den = Complex(1.0, 0.0) - X;
    const bool np = near_npint(num);
    const bool dp = near_npint(den);
    if (np && dp) {
        long n = 0;
        if (!near_integer(c, 1e-9, &n))
            throw PoleError("character: Gamma ratio singular at x/h");
        return hc * gamma_ratio_shift(den, n);
    }
    if (np) throw PoleError("character: Gamma(1 + c - x/h) pole");
    if (dp) return Complex(0.0, 0.0);
    return std::exp(c * lh + lgr_impl(num, c));
}

Jet log_char_jet(CharacterKind kind, Complex c, double h, Complex x,
                 std::size_t k) {
    if (!(h > 0.0)) throw ValidationError("log_char_jet: h must be positive");
    const Complex X = x / h;
    const Jet cj = Jet::variable(c, k);
    const Complex lh(std::log(h), 0.0);
    constexpr double pi = std::numbers::pi;
    if (kind == CharacterKind::PlusInfinity) {
        const bool np = near_npint(X);
        const bool dp = near_npint(X - c);
        if (np && dp) {
            if (k == 0) return Jet::constant(character(kind, c, h, x), 0);
            throw PoleError("log_char_jet: jet undefined at a lattice double pole");
        }
        if (np) throw PoleError("log_char_jet: Gamma(x/h) pole");
        if (dp) {
            // Gamma(X - c) singular while Gamma(X) is fine: rewrite through
            // 1/Gamma(w) = Gamma(1 - w) sin(pi w) / pi, analytic in c here;
            // the log-space grouping keeps the two huge Gamma factors from
            // overflowing before they cancel.
            Jet logpart = cj * lh + Jet::constant(log_gamma_impl(X), k) +
                          log_gamma_impl(cj + (Complex(1.0, 0.0) - X));
            Jet s = sin_jet((Complex(X) - cj) * Complex(pi, 0.0));
            return exp_jet(logpart) * s * Complex(1.0 / pi, 0.0);
        }
        return exp_jet(cj * lh + lgr_impl(Jet::constant(X, k), cj));
    }
    const Complex numv = Complex(1.0, 0.0) + c - X;
    const Complex denv = Complex(1.0, 0.0) - X;
    const bool np = near_npint(numv);
    const bool dp = near_npint(denv);
    if (np && dp) {
        if (k == 0) return Jet::constant(character(kind, c, h, x), 0);
        throw PoleError("log_char_jet: jet undefined at a lattice double pole");
    }
    if (np) throw PoleError("log_char_jet: Gamma(1 + c - x/h) pole");
    if (dp) return Jet(k); // 1/Gamma(1 - X) = 0 independently of c
    const Jet num = cj + (Complex(1.0, 0.0) - X);
    return exp_jet(cj * lh + lgr_impl(num, cj));
}

Matrix matrix_character(const SpectralData& spec, CharacterKind kind, double h,
                        Complex x) {
    return matrix_apply_jet(spec, [&](Complex c, std::size_t ord) {
        return log_char_jet(kind, c, h, x, ord);
    });
}

} // namespace conflux
