#pragma once
/*
 * Shared scalar/matrix aliases and the project-wide matrix norm.
 *
 * All coefficient bounds and residuals use the max-row-sum norm
 * ||M|| = max_i sum_j |M_ij|, which is sub-multiplicative and induced by the
 * sup norm on vectors, so ||AB|| <= ||A||·||B|| holds for every estimate
 * propagated through series products.
 */
#include <complex>
#include <cmath>
#include <cstdint>
#include <Eigen/Dense>

#include "conflux/errors.hpp"

namespace conflux {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;

// Max row sum of absolute values (operator norm induced by the sup norm).
inline double norm_rowsum(const Matrix& m) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
        best = std::max(best, row);
    }
    return best;
}

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

// True when z sits within atol of the nearest integer; the integer is stored
// in *out when provided.
inline bool near_integer(const Complex& z, double atol, long* out = nullptr) {
    const double r = std::round(z.real());
    if (out) *out = static_cast<long>(r);
    return std::abs(z.real() - r) <= atol && std::abs(z.imag()) <= atol;
}

// Small deterministic mixing hash used to derive per-task RNG streams from a
// user seed (SplitMix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace conflux
