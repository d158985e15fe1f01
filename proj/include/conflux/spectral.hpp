#pragma once
/*
 * Eigen-structure of constant matrices.
 *
 * A SpectralData packages a Jordan-type reduction A0 = P * J * P^{-1} with
 * J = blockdiag(c_b I + N_b), blocks ordered by the total order
 * (Re c, then Im c, then block size).  On top of it the module provides
 *
 *   - decompose:          clustered eigenvalues + rank-profile recovery of the
 *                         nilpotent structure, with a hard condition gate
 *                         (genuinely ambiguous inputs are rejected, not
 *                         guessed); callers may supply explicit data instead
 *   - check_nonresonant:  no two eigenvalues differ by a nonzero integer
 *   - sylvester_solve:    (A0 + sI) U - U A0 = R via a cached Schur form
 *   - operator_k_bound:   sup_s || K_s^{-1} || for K_s(M) = A0 M - M A0 - sM,
 *                         finite part by dense SVD, tail by the analytic
 *                         bound 1/(s - 2||A0||)
 *   - check_deployment:   convergence of an h-family of reductions to a limit
 *   - matrix_apply_jet:   P * blockdiag(sum_j f(c)_j N^j) * P^{-1}, the
 *                         functional calculus used by matrix characters,
 *                         matrix powers and matrix exponentials
 */
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "conflux/jet.hpp"
#include "conflux/types.hpp"

namespace conflux {

struct JordanBlock {
    Complex eigenvalue;
    int size = 1;
};

struct SpectralData {
    Matrix P;
    std::vector<JordanBlock> blocks;
    double tol = 1e-8; // clustering tolerance used to build this data
    double cond = 1.0; // condition number of P

    int dim() const;
    Matrix jordan() const;      // blockdiag(c I + N)
    Matrix reconstruct() const; // P * jordan() * P^{-1}
};

// Clustered Jordan-type reduction.  Eigenvalues within tol are merged, the
// nilpotent structure is read off rank profiles of (A0 - cI)^k, and the
// result is rejected (IllConditionedError) when cond(P) exceeds 1/tol.
SpectralData decompose(const Matrix& a0, double tol = 1e-8);

// True iff no pair of eigenvalues differs by a nonzero integer within tol.
bool check_nonresonant(const SpectralData& spec, double tol = 1e-8);

// Solves (A0 + sI) U - U A0 = R repeatedly for different s against one
// cached Schur factorization of A0.
class SylvesterSolver {
public:
    explicit SylvesterSolver(const Matrix& a0);
    Matrix solve(double s, const Matrix& rhs) const;

private:
    Matrix q_; // unitary factor,  A0 = Q T Q^*
    Matrix t_; // upper-triangular factor
};

Matrix sylvester_solve(const Matrix& a0, int s, const Matrix& rhs);

// max_{1 <= s} ||K_s^{-1}|| with K_s(M) = A0 M - M A0 - s M: dense smallest
// singular values up to s_max (internally extended past 2||A0||), analytic
// tail bound beyond.
double operator_k_bound(const Matrix& a0, int s_max);

struct DeploymentReport {
    bool ok = false;
    std::string diagnostic;
};

// family: (h, reduction) samples on a strictly decreasing h-sequence.
// Checks P^(h) -> P and J^(h) -> J monotonically with final distance <= tol
// and exact block-structure match at the smallest h.
DeploymentReport check_deployment(
    const std::vector<std::pair<double, SpectralData>>& family,
    const SpectralData& target, double tol);

// P * blockdiag(sum_j f(c_b, size_b - 1)[j] N^j) * P^{-1}.  The callable
// receives each block's eigenvalue and the jet order it must fill.
Matrix matrix_apply_jet(const SpectralData& spec,
                        const std::function<Jet(Complex, std::size_t)>& f);

// x^{A0} with the principal branch of log x.
Matrix matrix_power(const SpectralData& spec, Complex x);

// exp(a * A0) through the same spectral data.
Matrix matrix_exponential(const SpectralData& spec, Complex a);

} // namespace conflux
