#pragma once
/*
 * Truncated factorial series with growth certificates.
 *
 * A factorial series with step h > 0 is
 *
 *     A(x) = A_0 + sum_{s>=1} A_s x^{-[s]_h},
 *     x^{-[s]_h} = 1 / ( x (x+h) (x+2h) ... (x+(s-1)h) ),
 *
 * stored as the coefficient list A_0..A_N.  An optional certificate (C, L)
 * asserts the growth bound  ||A_s|| <= C * L^{[s-1]_h}  for s >= 1, where
 * L^{[m]_h} = L (L+h) ... (L+(m-1)h) is the rising factorial with m factors;
 * under it the series converges absolutely on the half-plane Re x > L + 1
 * and truncation tails admit the closed bound implemented by
 * certified_tail().  All norms are max-row-sum norms.
 *
 * Arithmetic identities used throughout (u = x or x+h as indicated):
 *
 *   product:    x^{-[j]_h} x^{-[l]_h} = sum_{k>=0} c^{(k)}_{j,l} h^k x^{-[j+k+l]_h},
 *               c^{(k)}_{j,l} = (j+k-1)! (l+k-1)! / ( k! (j-1)! (l-1)! )
 *   translation: coefficients of A(x-h) via T_{s+1} = s h (T_s + A_s), T_1 = 0,
 *               B_s = A_s + T_s
 *   power basis: x^{-i} = sum_{s>=i} c(s-1, i-1) h^{s-i} x^{-[s]_h} with
 *               c(m, k) the unsigned Stirling cycle numbers,
 *               c(m, k) = c(m-1, k-1) + (m-1) c(m-1, k)
 *
 * expand_rational converts a proper rational matrix: its power-series
 * coefficients at infinity (by reversed-polynomial series division) feed the
 * power-basis identity, and a certificate is attached from a Cauchy estimate
 * of ||R - A_0|| on a circle enclosing every pole.
 */
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "conflux/rational.hpp"
#include "conflux/types.hpp"

namespace conflux {

inline constexpr std::size_t kDefaultOrder = 64;
inline constexpr std::size_t kMaxOrder = 128;

struct Certificate {
    double C = 0.0;
    double lambda = 0.0;
};

struct FactorialSeries {
    double h = 1.0;
    std::vector<Matrix> coeffs; // A_0 .. A_N
    std::optional<Certificate> cert;

    int n() const { return coeffs.empty() ? 0 : static_cast<int>(coeffs.front().rows()); }
    std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

// L (L+h) (L+2h) ... (L+(m-1)h); empty product (m = 0) is 1.
double rising_factorial(double lambda, int m, double h);

// fact[m] = m!, exact for m <= 18 and correctly accumulated beyond.
std::vector<double> factorial_table(std::size_t top);

// Product weight c^{(k)}_{j,l} = (j+k-1)! (l+k-1)! / (k! (j-1)! (l-1)!),
// grouped as binom(j+k-1, k) * (l+k-1)!/(l-1)! to avoid overflow.
double product_weight(const std::vector<double>& fact, int j, int k, int l);

// Exact value of  C * sum_{s>N} L^{[s-1]_h} / R^{[s]_h}  for R > L, the
// remainder bound after truncating a certified series at order N and
// evaluating at Re x = R.
double certified_tail(const Certificate& cert, double h, std::size_t order, double re_x);

// Smallest certificate constant covering the stored coefficients at the
// given lambda (with a tiny relative headroom).
Certificate empirical_certificate(const std::vector<Matrix>& coeffs, double lambda, double h);

// Factorial-series expansion of a proper rational matrix; attaches a
// certificate (C r, r) with r a radius enclosing all poles and C a sampled
// bound for sup ||R - A_0|| on |x| = r, lifted to cover every stored
// coefficient.
FactorialSeries expand_rational(const RationalMatrix& r, double h,
                                std::size_t order = kDefaultOrder);

// Cauchy-type product in the factorial basis, truncated at the shorter
// operand's order.  Certificates combine when both inputs carry one.
FactorialSeries multiply(const FactorialSeries& a, const FactorialSeries& b);

// Coefficients of x |-> A(x - h).
FactorialSeries translate(const FactorialSeries& a);

// Multiplicative inverse; requires A_0 invertible.
FactorialSeries invert(const FactorialSeries& a);

struct EvalResult {
    Matrix value;
    double tail = 0.0; // certified bound when cert present, heuristic otherwise
};

// Sum of the truncated series at x.  With a certificate, requires
// Re x > lambda + 1 (DomainError otherwise) and reports the exact tail
// bound; without one the tail is the max norm of the last three terms.
EvalResult evaluate(const FactorialSeries& a, Complex x);

struct CoefficientLimit {
    Matrix limit;
    std::vector<Matrix> samples; // one per family member, in input order
    bool diverged = false;
};

// Extrapolates coefficient s of a family h -> series (strictly decreasing h)
// to h = 0 by linear Richardson on the last two members; flags divergence
// when successive differences grow instead of shrinking.
CoefficientLimit coefficient_limits(const std::vector<std::pair<double, FactorialSeries>>& family,
                                    std::size_t s);

} // namespace conflux
