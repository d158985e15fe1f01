#pragma once
/*
 * Log-Gamma and the Gamma-built characters of constant difference systems.
 *
 * For step h > 0 and X = x/h the two character families are
 *
 *   plus side:   e_c^{(h)+}(x) = h^c Gamma(X) / Gamma(X - c)
 *   minus side:  e_c^{(h)-}(x) = h^c Gamma(1 + c - X) / Gamma(1 - X)
 *
 * Both satisfy the eigen-equation  delta_{-h} e = c e  with
 * delta_{-h} y(x) = (x - h)(y(x) - y(x - h))/h.  Their "logarithms"
 * l_c^{(k,h)}(x) = (1/k!) d^k/dc^k e_c^{(h)}(x) extend the calculus to
 * Jordan blocks: for A0 = P (diag + N) P^{-1} the matrix character
 * P * blockdiag(sum_k l^{(k)} N^k) * P^{-1} solves delta_{-h} E = A0 E and is
 * independent of the Jordan reduction chosen.
 *
 * Numerical core: Lanczos log-Gamma (g = 7, 9 coefficients) for
 * Re z >= 0.5, extended leftwards by the functional equation
 * logGamma(z) = logGamma(z + m) - sum_{j<m} Log(z + j), which reproduces the
 * principal branch exactly on the cut plane C minus (-inf, 0].  The ratio
 * logGamma(z) - logGamma(z - c) is additionally provided in a
 * cancellation-free form (log1p of the shifted Lanczos argument), so
 * characters keep full relative accuracy for very large |x| where the two
 * individual logs would lose every digit of their difference.
 */
#include <cstddef>

#include "conflux/jet.hpp"
#include "conflux/spectral.hpp"
#include "conflux/types.hpp"

namespace conflux {

enum class CharacterKind { PlusInfinity, MinusInfinity };

// Principal-branch log Gamma on C minus (-inf, 0]; PoleError at non-positive
// integers.  The Jet overload propagates truncated Taylor coefficients in the
// argument (branch decisions are made on the value part).
Complex log_gamma(Complex z);
Jet log_gamma(const Jet& z);

// logGamma(z) - logGamma(z - c) without forming the two large logs.
Complex log_gamma_ratio(Complex z, Complex c);
Jet log_gamma_ratio(const Jet& z, const Jet& c);

// e_c^{(h)+-}(x).  Lattice configurations where numerator and denominator
// Gamma are singular together (integer c) fall back to the exact finite
// product Gamma(z+n)/Gamma(z); a numerator-only singularity is a genuine
// pole (PoleError) and a denominator-only singularity a genuine zero.
Complex character(CharacterKind kind, Complex c, double h, Complex x);

// Jet in the exponent of c' -> e_{c'}^{(h)}(x) at c' = c, truncated at order
// k: entry j is the logarithm l_c^{(j,h)}(x).  Computed by jet arithmetic
// through exp(c ln h + logGamma composition), not by finite differences.
Jet log_char_jet(CharacterKind kind, Complex c, double h, Complex x,
                 std::size_t k);

// P * blockdiag(upper-triangular Toeplitz blocks of l_c^{(j,h)}(x)) * P^{-1}.
Matrix matrix_character(const SpectralData& spec, CharacterKind kind, double h,
                        Complex x);

} // namespace conflux
