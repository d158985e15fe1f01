#pragma once
/*
 * Difference systems  delta_h Y = A(x) Y  with
 *
 *     delta_h y(x) = (x - h) (y(x) - y(x - h)) / h,
 *
 * their canonical fundamental solutions at +-infinity, and meromorphic
 * continuation.
 *
 * One backward step satisfies  Y(x - h) = S(x) Y(x),
 * S(x) = I - h A(x)/(x - h); forward steps invert S.
 *
 * A non-resonant system (no two eigenvalues of A_0 differing by a nonzero
 * integer) admits a unique gauge series F = I + sum F_s x^{-[s]_h} with
 *
 *     Y^+(x) = F(x) * E(x),   E = matrix character of A_0,
 *
 * whose coefficients solve Sylvester equations
 *
 *     (A_0 + sI) F_s - F_s A_0
 *         = -A_s + T_s A_0 - sum_{j+k+l=s} c^{(k)}_{j,l} A_j F_l
 *
 * (T_s the translation tail of F), computed in the rescaled h = 1 frame
 * (coefficients A_s / h^s) and rescaled back.
 *
 * The solution at -infinity is handled through the substitution u = -x:
 * a Minus-oriented system stores the transformed data  ^A(u) = A(-u)  and its
 * gauge G solves the mirrored recurrence
 *
 *     (A_0 + sI) G_s - G_s A_0
 *         = -[ M_s + T^G_s + T^W_s + sum c^{(k)}_{j,l} M_j G_l ],
 *
 * with M the factorial expansion of ^A and W = M * G (both translation
 * tails follow the T-recurrence).  The canonical solution is then
 * Y^-(x) = G(-x) * E^-(x) with the decaying character at -infinity.
 *
 * Continuation walks horizontally in steps of h from a certified seed on the
 * target's horizontal line; vertical legs are admissible only between
 * certified points (they re-seed by direct evaluation).
 */
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conflux/factorial_series.hpp"
#include "conflux/rational.hpp"
#include "conflux/specfun.hpp"
#include "conflux/spectral.hpp"
#include "conflux/types.hpp"

namespace conflux {

enum class Orientation { Plus, Minus };

struct DifferenceSystem {
    double h = 1.0;
    Orientation orientation = Orientation::Plus; // Minus stores A(-u) data
    std::optional<RationalMatrix> rational;      // exactly one backing store
    std::optional<FactorialSeries> factorial;
    Matrix a0; // constant term of the stored data's expansion
    std::optional<SpectralData> spectral_override;

    int n() const { return static_cast<int>(a0.rows()); }
    bool rational_backed() const { return rational.has_value(); }
};

DifferenceSystem make_system(const RationalMatrix& a, double h,
                             Orientation orientation = Orientation::Plus);
DifferenceSystem make_system(const FactorialSeries& a,
                             Orientation orientation = Orientation::Plus);

// Value of the ORIGINAL system's A at x (undoing the stored substitution for
// Minus-oriented systems).
Matrix system_value(const DifferenceSystem& sys, Complex x);

// S(x) = I - h A(x)/(x - h) with A the original data.
Matrix step_matrix(const DifferenceSystem& sys, Complex x);

// Poles of the original A (empty for factorial-backed systems).
std::vector<Complex> system_poles(const DifferenceSystem& sys);

// Factorial expansion of the STORED data (the recurrence input).
FactorialSeries system_expansion(const DifferenceSystem& sys, std::size_t order);

// Spectral data of A_0 (the override when present, decompose otherwise).
SpectralData system_spectral(const DifferenceSystem& sys);

// x |-> -x on the rational data, flipping the orientation tag; an exact
// involution.  Factorial-backed systems are rejected: the substitution does
// not map factorial series to factorial series.
DifferenceSystem minus_transform(const DifferenceSystem& sys);

// Gauge series of the stored data: F_0 = I, Sylvester recurrences as above,
// certified (C', lambda') when the expansion carries a certificate.
FactorialSeries gauge_series(const DifferenceSystem& sys, std::size_t order = kDefaultOrder);

struct CanonicalSolution {
    DifferenceSystem system;
    FactorialSeries gauge; // F (Plus) or G (Minus), constant term I
    SpectralData spec;     // of A_0
    CharacterKind kind;
    double halfplane = 0.0;     // certified convergence abscissa (gauge variable)
    double seed_abscissa = 0.0; // Re where the certified tail is <= 1e-12
    std::string warning;        // set when the half-plane is impractically far
};

CanonicalSolution canonical_solution(const DifferenceSystem& sys,
                                     std::size_t order = kDefaultOrder);

// Direct certified evaluation:
//   Plus:  evaluate(F, x)  * character(x)   for Re x  > halfplane
//   Minus: evaluate(G, -x) * character(x)   for Re -x > halfplane
Matrix evaluate_solution(const CanonicalSolution& sol, Complex x);

// Continuation to arbitrary x: certified seed on the target's horizontal
// line, then |m| one-step multiplications toward the target.
Matrix continue_to(const CanonicalSolution& sol, Complex x);

// Continuation along an explicit path: path.front() certified, steps of
// +-h in the real direction or vertical legs between certified points,
// path.back() == x.
Matrix continue_solution(const CanonicalSolution& sol, Complex x,
                         const std::vector<Complex>& path);

// || (x-h)(Y(x) - Y(x-h))/h - A(x) Y(x) || / max(1, ||Y(x)||)
double residual(const DifferenceSystem& sys, const std::function<Matrix(Complex)>& y,
                Complex x);

} // namespace conflux
