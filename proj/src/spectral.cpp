/*
 * Jordan-type reduction and Sylvester machinery.
 *
 * decompose: eigenvalues from a dense solver are clustered (union-find at
 * distance tol), each cluster's nilpotent structure is read off the rank
 * profile of B^k, B = A0 - cI:  #blocks(size >= k) = rank(B^{k-1}) - rank(B^k).
 * Chains are built top-down: a generator v in ker(B^m) \ ker(B^{m-1}) yields
 * columns [B^{m-1}v, ..., Bv, v], so A0 * col_i = c col_i + col_{i-1} and the
 * block reads c I + N with N the superdiagonal.  Chains are normalized so the
 * generator's largest entry (lowest index on ties) equals 1, making the
 * output deterministic.  Ill-conditioned bases (cond > 1/tol) are rejected:
 * numerically ambiguous Jordan structure must be supplied explicitly by the
 * caller rather than guessed.
 *
 * sylvester_solve: with the Schur form A0 = Q T Q^*, the equation
 * (A0 + sI)U - U A0 = R becomes (T + sI)V - V T = Q^* R Q and is solved
 * column by column: (T + (s - T_jj) I) v_j = r_j + sum_{k<j} T_kj v_k,
 * each a triangular solve.
 *
 * operator_k_bound: K_s(M) = A0 M - M A0 - s M as the n^2 x n^2 matrix
 * (I x A0) - (A0^T x I) - sI (column-stacked vec).  The returned bound also
 * covers the gauge operators phi_s(U) = (A0 + sI)U - U A0, whose singular
 * values coincide with K_s's (transposition and conjugation are isometries
 * that carry one operator family onto the other).
 */
#include "conflux/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

namespace conflux {

namespace {

// Kronecker product, column-stacking convention: vec(AXB) = (B^T x A) vec(X).
Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

Eigen::Index rank_with_threshold(const Matrix& m, double thresh) {
    Eigen::JacobiSVD<Matrix> svd(m);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > thresh) ++r;
    return r;
}

// Orthonormal basis of the numerical kernel of m.
Matrix kernel_basis(const Matrix& m, double thresh) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thresh) ++r;
    return svd.matrixV().rightCols(m.cols() - r);
}

double smallest_singular_value(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

} // namespace

int SpectralData::dim() const {
    int n = 0;
    for (const auto& b : blocks) n += b.size;
    return n;
}

Matrix SpectralData::jordan() const {
    const int n = dim();
    Matrix j = Matrix::Zero(n, n);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.size; ++i) {
            j(off + i, off + i) = b.eigenvalue;
            if (i + 1 < b.size) j(off + i, off + i + 1) = Complex(1.0, 0.0);
        }
        off += b.size;
    }
    return j;
}

Matrix SpectralData::reconstruct() const {
    Eigen::PartialPivLU<Matrix> lu(P);
    return P * jordan() * lu.inverse();
}

SpectralData decompose(const Matrix& a0, double tol) {
    if (a0.rows() != a0.cols() || a0.rows() == 0)
        throw ValidationError("decompose: matrix must be square and non-empty");
    if (!(tol > 0.0)) throw ValidationError("decompose: tol must be positive");
    const Eigen::Index n = a0.rows();
    const double scale = std::max(1.0, a0.norm());
    const double rank_thresh = 10.0 * tol * scale;

    Eigen::ComplexEigenSolver<Matrix> es(a0, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw IllConditionedError("decompose: eigenvalue iteration failed");
    const Vector ev = es.eigenvalues();

    // Cluster eigenvalues within tol (transitively, via union-find).
    std::vector<Eigen::Index> parent(n);
    for (Eigen::Index i = 0; i < n; ++i) parent[i] = i;
    std::function<Eigen::Index(Eigen::Index)> find = [&](Eigen::Index i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(ev(i) - ev(j)) <= tol) parent[find(i)] = find(j);

    struct Cluster {
        Complex rep;
        int multiplicity = 0;
    };
    std::vector<Cluster> clusters;
    std::vector<Eigen::Index> root_of(n);
    for (Eigen::Index i = 0; i < n; ++i) root_of[i] = find(i);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (root_of[i] != i) continue;
        Cluster c;
        Complex sum(0.0, 0.0);
        for (Eigen::Index j = 0; j < n; ++j)
            if (root_of[j] == i) {
                sum += ev(j);
                ++c.multiplicity;
            }
        c.rep = sum / static_cast<double>(c.multiplicity);
        clusters.push_back(c);
    }

    struct Chain {
        Complex eigenvalue;
        std::vector<Vector> columns; // [B^{m-1}v, ..., v]
    };
    std::vector<Chain> chains;
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    for (const auto& cl : clusters) {
        const Matrix b = a0 - cl.rep * Matrix::Identity(n, n);
        // Rank profile of powers: nu_k = #blocks of size >= k.
        std::vector<Eigen::Index> rank_pow{n};
        Matrix bp = Matrix::Identity(n, n);
        std::vector<Matrix> powers{bp};
        for (int k = 1; k <= cl.multiplicity; ++k) {
            bp = bp * b;
            powers.push_back(bp);
            rank_pow.push_back(rank_with_threshold(bp, rank_thresh));
        }
        std::vector<int> nu(cl.multiplicity + 2, 0);
        int total = 0;
        for (int k = 1; k <= cl.multiplicity; ++k) {
            nu[k] = static_cast<int>(rank_pow[k - 1] - rank_pow[k]);
            total += nu[k];
        }
        if (total != cl.multiplicity)
            throw IllConditionedError(
                "decompose: rank profile inconsistent with multiplicity; supply "
                "explicit spectral data");
        std::vector<int> sizes; // descending
        for (int k = cl.multiplicity; k >= 1; --k)
            for (int rep = 0; rep < nu[k] - nu[k + 1]; ++rep) sizes.push_back(k);
        std::sort(sizes.begin(), sizes.end(), std::greater<int>());

        std::vector<Chain> cluster_chains;
        auto stack_columns = [&](const std::vector<Chain>& cs,
                                 const std::vector<Vector>& extra) {
            Eigen::Index cols = static_cast<Eigen::Index>(extra.size());
            for (const auto& c : cs) cols += static_cast<Eigen::Index>(c.columns.size());
            Matrix m(n, cols);
            Eigen::Index at = 0;
            for (const auto& c : cs)
                for (const auto& col : c.columns) m.col(at++) = col.normalized();
            for (const auto& col : extra) m.col(at++) = col.normalized();
            return m;
        };

        for (int m : sizes) {
            const Matrix ker = kernel_basis(powers[static_cast<std::size_t>(m)], rank_thresh);
            // Score every admissible generator and keep the best-conditioned
            // chain: taking the first candidate that merely clears the gates
            // can pick a generator whose chain end is nearly degenerate.
            std::vector<Vector> best_cand;
            double best_score = -1.0;
            for (int attempt = 0; attempt < 32; ++attempt) {
                Vector v;
                if (attempt < static_cast<int>(ker.cols())) {
                    v = ker.col(attempt);
                } else {
                    v = Vector::Zero(n);
                    for (Eigen::Index j = 0; j < ker.cols(); ++j)
                        v += Complex(unif(rng), unif(rng)) * ker.col(j);
                }
                if (v.norm() < 1e-12) continue;
                v.normalize();
                std::vector<Vector> cand(static_cast<std::size_t>(m));
                cand[static_cast<std::size_t>(m - 1)] = v;
                bool degenerate = false;
                double min_col = 1.0;
                for (int i = m - 2; i >= 0; --i) {
                    cand[static_cast<std::size_t>(i)] = b * cand[static_cast<std::size_t>(i + 1)];
                    double nm = cand[static_cast<std::size_t>(i)].norm();
                    if (nm < 1e-10) {
                        degenerate = true; // chain shorter than m: wrong generator
                        break;
                    }
                    min_col = std::min(min_col, std::min(nm, 1.0 / nm));
                }
                if (degenerate) continue;
                const Matrix stacked = stack_columns(cluster_chains, cand);
                const double sv = smallest_singular_value(stacked);
                if (sv < 1e-6) continue;
                const double score = sv * min_col;
                if (score > best_score) {
                    best_score = score;
                    best_cand = std::move(cand);
                }
            }
            if (best_score < 0.0)
                throw IllConditionedError(
                    "decompose: failed to recover an independent Jordan chain; "
                    "supply explicit spectral data");
            // Deterministic normalization: generator's largest entry
            // (lowest index on ties) becomes exactly 1.
            const Vector& gen = best_cand[static_cast<std::size_t>(m - 1)];
            Eigen::Index best = 0;
            for (Eigen::Index j = 1; j < n; ++j)
                if (std::abs(gen(j)) > std::abs(gen(best))) best = j;
            const Complex pivot = gen(best);
            for (auto& col : best_cand) col /= pivot;
            Chain chain;
            chain.eigenvalue = cl.rep;
            chain.columns = std::move(best_cand);
            cluster_chains.push_back(std::move(chain));
        }
        for (auto& c : cluster_chains) chains.push_back(std::move(c));
    }

    // Order blocks: Re, then Im, then size descending.
    std::sort(chains.begin(), chains.end(), [](const Chain& a, const Chain& b) {
        if (a.eigenvalue.real() != b.eigenvalue.real())
            return a.eigenvalue.real() < b.eigenvalue.real();
        if (a.eigenvalue.imag() != b.eigenvalue.imag())
            return a.eigenvalue.imag() < b.eigenvalue.imag();
        return a.columns.size() > b.columns.size();
    });

    SpectralData out;
    out.tol = tol;
    out.P = Matrix(n, n);
    Eigen::Index at = 0;
    for (const auto& c : chains) {
        out.blocks.push_back({c.eigenvalue, static_cast<int>(c.columns.size())});
        for (const auto& col : c.columns) out.P.col(at++) = col;
    }

    Eigen::JacobiSVD<Matrix> svd(out.P);
    const double smin = svd.singularValues()(n - 1);
    const double smax = svd.singularValues()(0);
    out.cond = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
    if (!(out.cond <= 1.0 / tol))
        throw IllConditionedError(
            "decompose: basis condition number exceeds 1/tol; supply explicit "
            "spectral data");
    if (norm_rowsum(out.reconstruct() - a0) > 1000.0 * tol * scale)
        throw IllConditionedError(
            "decompose: reconstruction residual too large; supply explicit "
            "spectral data");
    return out;
}

bool check_nonresonant(const SpectralData& spec, double tol) {
    const auto& bl = spec.blocks;
    for (std::size_t i = 0; i < bl.size(); ++i) {
        for (std::size_t j = 0; j < bl.size(); ++j) {
            if (i == j) continue;
            const Complex d = bl[i].eigenvalue - bl[j].eigenvalue;
            const double r = std::round(d.real());
            double dist;
            if (r == 0.0)
                dist = std::min(std::abs(d - Complex(1.0, 0.0)),
                                std::abs(d + Complex(1.0, 0.0)));
            else
                dist = std::abs(d - Complex(r, 0.0));
            if (dist <= tol) return false;
        }
    }
    return true;
}

SylvesterSolver::SylvesterSolver(const Matrix& a0) {
    if (a0.rows() != a0.cols())
        throw ValidationError("SylvesterSolver: matrix must be square");
    Eigen::ComplexSchur<Matrix> schur(a0);
    if (schur.info() != Eigen::Success)
        throw IllConditionedError("SylvesterSolver: Schur iteration failed");
    q_ = schur.matrixU();
    t_ = schur.matrixT();
}

Matrix SylvesterSolver::solve(double s, const Matrix& rhs) const {
    const Eigen::Index n = t_.rows();
    if (rhs.rows() != n || rhs.cols() != n)
        throw ValidationError("SylvesterSolver: rhs dimension mismatch");
    const Matrix rt = q_.adjoint() * rhs * q_;
    Matrix v(n, n);
    const double thresh = 1e-12 * std::max(1.0, std::abs(s) + norm_rowsum(t_));
    for (Eigen::Index j = 0; j < n; ++j) {
        Vector b = rt.col(j);
        for (Eigen::Index k = 0; k < j; ++k) b += t_(k, j) * v.col(k);
        // (T + (s - T_jj) I) v_j = b, upper-triangular back-substitution.
        const Complex shift = Complex(s, 0.0) - t_(j, j);
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            Complex acc = b(i);
            for (Eigen::Index k = i + 1; k < n; ++k) acc -= t_(i, k) * v(k, j);
            const Complex d = t_(i, i) + shift;
            if (std::abs(d) < thresh)
                throw ResonanceError(
                    "sylvester_solve: operator nearly singular (resonance drift)");
            v(i, j) = acc / d;
        }
    }
    return q_ * v * q_.adjoint();
}

Matrix sylvester_solve(const Matrix& a0, int s, const Matrix& rhs) {
    return SylvesterSolver(a0).solve(static_cast<double>(s), rhs);
}

double operator_k_bound(const Matrix& a0, int s_max) {
    if (a0.rows() != a0.cols())
        throw ValidationError("operator_k_bound: matrix must be square");
    if (s_max < 1) throw ValidationError("operator_k_bound: s_max must be >= 1");
    const Eigen::Index n = a0.rows();
    Eigen::JacobiSVD<Matrix> svd(a0);
    const double a0_norm2 = (n > 0) ? svd.singularValues()(0) : 0.0;
    const int s_hi = std::max(
        s_max, static_cast<int>(std::ceil(2.0 * a0_norm2)) + 1);

    const Matrix eye = Matrix::Identity(n, n);
    const Matrix commutator = kron(eye, a0) - kron(a0.transpose(), eye);
    const Matrix big_eye = Matrix::Identity(n * n, n * n);
    double best = 0.0;
    for (int s = 1; s <= s_hi; ++s) {
        const Matrix ks = commutator - static_cast<double>(s) * big_eye;
        const double smin = smallest_singular_value(ks);
        if (smin < 1e-13 * std::max(1.0, static_cast<double>(s)))
            throw ResonanceError("operator_k_bound: K_s singular to tolerance");
        best = std::max(best, 1.0 / smin);
    }
    // Tail for s > s_hi: ||K_s^{-1}|| <= 1/(s - 2||A0||), decreasing in s.
    best = std::max(best, 1.0 / (static_cast<double>(s_hi) + 1.0 - 2.0 * a0_norm2));
    return best;
}

DeploymentReport check_deployment(
    const std::vector<std::pair<double, SpectralData>>& family,
    const SpectralData& target, double tol) {
    DeploymentReport rep;
    if (family.empty()) {
        rep.diagnostic = "empty family";
        return rep;
    }
    for (std::size_t i = 1; i < family.size(); ++i)
        if (!(family[i].first < family[i - 1].first)) {
            rep.diagnostic = "h-sequence not strictly decreasing";
            return rep;
        }
    const int n = target.dim();
    const Matrix jt = target.jordan();
    double prev = std::numeric_limits<double>::infinity();
    double last = prev;
    for (const auto& [h, spec] : family) {
        if (spec.dim() != n) {
            rep.diagnostic = "dimension mismatch at h=" + std::to_string(h);
            return rep;
        }
        const double d =
            norm_rowsum(spec.P - target.P) + norm_rowsum(spec.jordan() - jt);
        if (d > prev + 1e-12) {
            rep.diagnostic = "distance not monotone non-increasing at h=" +
                             std::to_string(h);
            return rep;
        }
        prev = d;
        last = d;
    }
    const auto& smallest = family.back().second;
    if (smallest.blocks.size() != target.blocks.size()) {
        rep.diagnostic = "block count differs at smallest h";
        return rep;
    }
    for (std::size_t b = 0; b < target.blocks.size(); ++b)
        if (smallest.blocks[b].size != target.blocks[b].size) {
            rep.diagnostic = "block sizes differ at smallest h";
            return rep;
        }
    if (!(last <= tol)) {
        rep.diagnostic = "final distance " + std::to_string(last) +
                         " exceeds tol";
        return rep;
    }
    rep.ok = true;
    rep.diagnostic = "deployed";
    return rep;
}

Matrix matrix_apply_jet(const SpectralData& spec,
                        const std::function<Jet(Complex, std::size_t)>& f) {
    const int n = spec.dim();
    if (spec.P.rows() != n || spec.P.cols() != n)
        throw ValidationError("matrix_apply_jet: P dimension mismatch");
    Matrix d = Matrix::Zero(n, n);
    int off = 0;
    for (const auto& b : spec.blocks) {
        const Jet j = f(b.eigenvalue, static_cast<std::size_t>(b.size - 1));
        for (int r = 0; r < b.size; ++r)
            for (int col = r; col < b.size; ++col)
                d(off + r, off + col) = j[static_cast<std::size_t>(col - r)];
        off += b.size;
    }
    Eigen::FullPivLU<Matrix> lu(spec.P);
    if (!lu.isInvertible())
        throw SingularMatrixError("matrix_apply_jet: singular basis P");
    return spec.P * d * lu.inverse();
}

Matrix matrix_power(const SpectralData& spec, Complex x) {
    const Complex lx = std::log(x);
    return matrix_apply_jet(spec, [&](Complex c, std::size_t ord) {
        return exp_jet(Jet::variable(c, ord) * lx);
    });
}

Matrix matrix_exponential(const SpectralData& spec, Complex a) {
    return matrix_apply_jet(spec, [&](Complex c, std::size_t ord) {
        return exp_jet(Jet::variable(c, ord) * a);
    });
}

} // namespace conflux
