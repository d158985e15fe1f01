#pragma once
/*
 * Birkhoff connection matrices, strip decomposition, confluence limits over an
 * h-family, monodromy extraction, and an independent ODE oracle.
 *
 * For a difference system  delta_h Y = A(x) Y  with canonical solutions
 * e+ (at +infinity) and e- (at -infinity, through the x -> -x transform), the
 * connection matrix is
 *
 *     P(x) = e+(x)^{-1} e-(x),
 *
 * an h-periodic matrix function of x.  For an h-family A^(h) -> Atilde the
 * limits of P^(h) as h -> 0+ are constant on the horizontal strips cut out by
 * the lines Im x = Im z for z in poles(Atilde) union {0} (hypothesis: those
 * imaginary parts are pairwise distinct and no pole is real).  With strips
 * ordered bottom to top and limits P~_1 .. P~_{r+1}, the monodromy of the
 * limiting differential system  x Y' = Atilde(x) Y  around the j-th singular
 * point, expressed in its canonical Frobenius solution at infinity
 *
 *     Ytilde(x) = G(x) x^{A~_0},   G = I + sum_{s>=1} G_s x^{-s},
 *     (A~_0 + sI) G_s - G_s A~_0 = -sum_{k<s} A~_{s-k} G_k,
 *
 * is  M_j = P~_j P~_{j+1}^{-1}.
 *
 * The oracle integrates the loop  x(t) = z_j + r e^{it}  of the same ODE by
 * ordered Euler resolvent products  prod (I + B(x_k) dx_k),  B = Atilde(x)/x,
 * doubling the step count with one Richardson extrapolation until stable, and
 * conjugates the loop transport into the Frobenius basis at the base point.
 */
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "conflux/diff_system.hpp"
#include "conflux/factorial_series.hpp"
#include "conflux/rational.hpp"
#include "conflux/spectral.hpp"
#include "conflux/types.hpp"

namespace conflux {

// Both canonical solutions of one system, built once and reused across
// evaluation points.
struct ConnectionContext {
    CanonicalSolution plus;
    CanonicalSolution minus;
};

ConnectionContext make_connection(const DifferenceSystem& sys,
                                  std::size_t order = kDefaultOrder);

// P(x) = e+(x)^{-1} e-(x); SingularMatrixError when det e+(x) ~ 0.
Matrix connection_matrix(const ConnectionContext& ctx, Complex x);
Matrix connection_matrix(const DifferenceSystem& sys, Complex x,
                         std::size_t order = kDefaultOrder);

struct StripDecomposition {
    std::vector<Complex> poles;     // poles of Atilde plus 0, increasing Im
    std::vector<std::pair<double, double>> bands; // (lo, hi) Im range per strip
    std::vector<Complex> midpoints; // one per strip, Re = 0
};

// Cuts the plane along Im x = Im z for z in poles(Atilde) union {0}.
// ValidationError (naming the offending pair) when a pole is real or two
// points share an imaginary part.
StripDecomposition strip_partition(const RationalMatrix& atilde);

struct StripDiagnostics {
    Complex midpoint;          // sample point actually used (after shifts)
    std::vector<double> diffs; // ||P(h_{i+1}) - P(h_i)||
    std::vector<double> rates; // empirical order from consecutive diffs
    bool contracting = true;   // successive diffs shrink
    bool converged = false;    // diffs reached the rounding floor
    double constancy = 0.0;    // distance between the limits at two points
};

struct StripLimitReport {
    std::vector<Matrix> limits; // P~ per strip, bottom to top
    std::vector<StripDiagnostics> diagnostics;
    std::vector<double> h_sequence;
};

// Evaluates P^(h) at every strip midpoint over a strictly decreasing
// h-sequence and extrapolates linearly in h.  Midpoints blocked by a
// continuation obstruction are shifted by h/3 (exact: P is h-periodic).
StripLimitReport strip_limits(const std::vector<std::pair<double, DifferenceSystem>>& family,
                              const StripDecomposition& strips,
                              std::size_t order = kDefaultOrder);

struct MonodromyReport {
    std::vector<Complex> poles;       // z_1 .. z_r, increasing Im
    std::vector<Matrix> strip_limits; // P~_1 .. P~_{r+1}
    std::vector<Matrix> monodromies;  // M_j = P~_j P~_{j+1}^{-1}
    std::vector<double> h_sequence;
    std::vector<StripDiagnostics> diagnostics;
};

MonodromyReport monodromy(const StripLimitReport& limits, const StripDecomposition& strips);

// Canonical Frobenius solution of  x Y' = Atilde(x) Y  at infinity:
// Y(x) = G(x) x^{A~_0} with principal-branch powers.
struct FrobeniusSolution {
    RationalMatrix atilde;
    Matrix a0;
    SpectralData spec;
    std::vector<Matrix> gauge;  // G_0 .. G_N power-series coefficients
    double direct_radius = 0.0; // direct summation trusted for |x| >= this
};

FrobeniusSolution frobenius_solution(const RationalMatrix& atilde,
                                     std::size_t order = kDefaultOrder);

// Direct summation for |x| >= direct_radius; otherwise transported along the
// horizontal segment from the direct zone at the same height (PathError when
// that segment meets a pole or the origin).
Matrix frobenius_evaluate(const FrobeniusSolution& sol, Complex x);

// Monodromy of  x Y' = Atilde(x) Y  around strips.poles[pole_index] along the
// counterclockwise circle of the given radius through base, conjugated into
// the Frobenius basis: e+(b)^{-1} C_loop e+(b).  steps seeds the refinement
// (doubled, with Richardson, until two answers agree to 1e-8).
Matrix ode_monodromy_oracle(const RationalMatrix& atilde, std::size_t pole_index, Complex base,
                            double radius, int steps = 256,
                            std::size_t order = kDefaultOrder);

// Convenience: base point z_j - i * radius.
Matrix ode_monodromy_oracle(const RationalMatrix& atilde, std::size_t pole_index,
                            double radius, int steps = 256,
                            std::size_t order = kDefaultOrder);

} // namespace conflux
