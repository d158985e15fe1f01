/*
 * Spectral reductions are validated against independent oracles:
 *  (1) matrices built as P J P^{-1} from a KNOWN Jordan form must decompose
 *      back to the same block structure and reconstruct the input,
 *  (2) Sylvester solves are cross-checked against a dense Kronecker-product
 *      linear solve (column-stacking vectorization),
 *  (3) operator norms are cross-checked against closed forms for normal
 *      matrices (min distance |s - (mu_i - mu_j)|).
 */
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "conflux/errors.hpp"
#include "conflux/spectral.hpp"
#include "conflux/types.hpp"
#include "oracles.hpp"

using namespace conflux;

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

SpectralData manual_spec(const Matrix& p, std::vector<JordanBlock> blocks) {
    SpectralData s;
    s.P = p;
    s.blocks = std::move(blocks);
    return s;
}

Matrix random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(unif(rng), unif(rng));
    return m;
}

} // namespace

TEST_CASE("decompose: diagonal and diagonalizable matrices") {
    Matrix d = mat2(Complex(2, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0));
    SpectralData s = decompose(d);
    REQUIRE(s.blocks.size() == 2);
    // ordered by increasing Re
    CHECK(std::abs(s.blocks[0].eigenvalue - Complex(-1, 0)) < 1e-12);
    CHECK(std::abs(s.blocks[1].eigenvalue - Complex(2, 0)) < 1e-12);
    CHECK(s.blocks[0].size == 1);
    CHECK(s.blocks[1].size == 1);
    CHECK(norm_rowsum(s.reconstruct() - d) < 1e-10);

    // known diagonalizable conjugation
    Matrix p(3, 3);
    p << Complex(1, 0), Complex(1, 0), Complex(0, 1), Complex(0, 0), Complex(1, 0), Complex(1, 0),
        Complex(1, 0), Complex(0, 0), Complex(1, 0);
    Matrix j = Matrix::Zero(3, 3);
    j(0, 0) = Complex(1, 0);
    j(1, 1) = Complex(0, 2);
    j(2, 2) = Complex(-1, 0);
    Matrix a = p * j * p.inverse();
    SpectralData sa = decompose(a);
    REQUIRE(sa.blocks.size() == 3);
    CHECK(norm_rowsum(sa.reconstruct() - a) < 1e-9);
    bool found = false;
    for (const auto& b : sa.blocks)
        if (std::abs(b.eigenvalue - Complex(0, 2)) < 1e-9 && b.size == 1) found = true;
    CHECK(found);
}

TEST_CASE("decompose: nilpotent and derogatory structures") {
    Matrix nil = mat2(Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0));
    SpectralData s = decompose(nil);
    REQUIRE(s.blocks.size() == 1);
    CHECK(s.blocks[0].size == 2);
    CHECK(std::abs(s.blocks[0].eigenvalue) < 1e-12);
    CHECK(norm_rowsum(s.reconstruct() - nil) < 1e-10);

    // J(0.5, 2) + J(0.5, 1): derogatory eigenvalue, sizes must come out 2, 1
    Matrix j = Matrix::Zero(3, 3);
    j(0, 0) = j(1, 1) = j(2, 2) = Complex(0.5, 0);
    j(0, 1) = Complex(1, 0);
    Matrix p(3, 3);
    p << Complex(3.2, 0.1), Complex(-0.4, 0.5), Complex(0.7, -0.2), Complex(0.1, 0.9),
        Complex(3.5, -0.3), Complex(-0.6, 0.4), Complex(-0.8, 0.2), Complex(0.3, 0.7),
        Complex(3.1, 0.5);
    Matrix a = p * j * p.inverse();
    SpectralData sd = decompose(a);
    REQUIRE(sd.blocks.size() == 2);
    CHECK(sd.blocks[0].size == 2);
    CHECK(sd.blocks[1].size == 1);
    CHECK(norm_rowsum(sd.reconstruct() - a) < 1e-6 * norm_rowsum(a));
}

TEST_CASE("decompose: near-degenerate pair merges into a Jordan block") {
    Matrix a = mat2(Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1.0 + 1e-12, 0));
    SpectralData s = decompose(a); // defect below tol: treated as one block
    REQUIRE(s.blocks.size() == 1);
    CHECK(s.blocks[0].size == 2);
    CHECK(std::abs(s.blocks[0].eigenvalue - Complex(1, 0)) < 1e-10);
    CHECK(norm_rowsum(s.reconstruct() - a) < 1e-4); // within the decompose gate
}

TEST_CASE("decompose: separation beyond tol keeps blocks apart") {
    // eigenvalues +-1e-3, eigenvectors (1, +-1e-3): separated, mildly conditioned
    Matrix a = mat2(Complex(0, 0), Complex(1, 0), Complex(1e-6, 0), Complex(0, 0));
    SpectralData s = decompose(a);
    REQUIRE(s.blocks.size() == 2);
    CHECK(std::abs(s.blocks[0].eigenvalue - Complex(-1e-3, 0)) < 1e-9);
    CHECK(std::abs(s.blocks[1].eigenvalue - Complex(1e-3, 0)) < 1e-9);
    CHECK(s.cond > 100.0); // genuinely skewed basis, still below the gate

    // same matrix at looser tol: the pair merges into one nilpotent-type block
    SpectralData merged = decompose(a, 1e-2);
    REQUIRE(merged.blocks.size() == 1);
    CHECK(merged.blocks[0].size == 2);
}

TEST_CASE("decompose: ill-conditioned basis is rejected") {
    // eigenvalues +-1e-3 but eigenvectors (1, +-1e-9): cond ~ 1e9 > 1/tol
    Matrix a = mat2(Complex(0, 0), Complex(1e6, 0), Complex(1e-12, 0), Complex(0, 0));
    CHECK_THROWS_AS(decompose(a), IllConditionedError);
}

TEST_CASE("check_nonresonant") {
    auto spec_of = [](std::vector<Complex> eigs) {
        std::vector<JordanBlock> blocks;
        for (Complex c : eigs) blocks.push_back(JordanBlock{c, 1});
        return manual_spec(Matrix::Identity(static_cast<int>(eigs.size()),
                                            static_cast<int>(eigs.size())),
                           blocks);
    };
    CHECK(check_nonresonant(spec_of({Complex(0, 0), Complex(0.5, 0)})));
    CHECK(!check_nonresonant(spec_of({Complex(0, 0), Complex(1, 0)})));
    CHECK(!check_nonresonant(spec_of({Complex(0.3, 2), Complex(1.3, 2)})));
    CHECK(!check_nonresonant(spec_of({Complex(0.3, 2), Complex(-2.7, 2)})));
    // equal eigenvalues in different blocks: difference 0 is NOT a resonance
    CHECK(check_nonresonant(spec_of({Complex(0.3, 0), Complex(0.3, 0)})));
    // near-integer difference within tol
    CHECK(!check_nonresonant(spec_of({Complex(0, 0), Complex(2.0 + 1e-10, 0)})));
    CHECK(check_nonresonant(spec_of({Complex(0, 0), Complex(2.0 + 1e-3, 0)})));
    // integer difference with distinct imaginary parts is fine
    CHECK(check_nonresonant(spec_of({Complex(0, 0), Complex(1, 1)})));
}

TEST_CASE("sylvester: closed forms") {
    // A0 = 0: U = R / s
    Matrix r = random_matrix(3, 11);
    Matrix u = sylvester_solve(Matrix::Zero(3, 3), 4, r);
    CHECK(norm_rowsum(u - r / 4.0) < 1e-12);

    // diagonal A0: U_ij = R_ij / (a_i + s - a_j)
    Matrix a0 = Matrix::Zero(2, 2);
    a0(0, 0) = Complex(0.3, 0.1);
    a0(1, 1) = Complex(-0.2, 0.4);
    Matrix rhs = mat2(Complex(1, 0), Complex(2, 1), Complex(0, -1), Complex(3, 0));
    Matrix got = sylvester_solve(a0, 2, rhs);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Complex expect = rhs(i, j) / (a0(i, i) + Complex(2, 0) - a0(j, j));
            CHECK(std::abs(got(i, j) - expect) < 1e-13);
        }
}

TEST_CASE("sylvester: random systems against the dense Kronecker oracle") {
    for (int n : {2, 3, 4}) {
        Matrix a0 = 0.45 * random_matrix(n, static_cast<std::uint64_t>(100 + n));
        SylvesterSolver solver(a0);
        for (int s = 1; s <= 6; ++s) {
            Matrix rhs = random_matrix(n, static_cast<std::uint64_t>(200 + 10 * n + s));
            Matrix mine = solver.solve(static_cast<double>(s), rhs);
            Matrix dense = oracle::sylvester_dense(a0, static_cast<double>(s), rhs);
            CHECK(norm_rowsum(mine - dense) < 1e-10 * std::max(1.0, norm_rowsum(dense)));
            // residual of the defining equation
            Matrix res = (a0 + static_cast<double>(s) * Matrix::Identity(n, n)) * mine -
                         mine * a0 - rhs;
            CHECK(norm_rowsum(res) < 1e-11);
        }
    }
}

TEST_CASE("sylvester: resonance is rejected") {
    Matrix a0 = Matrix::Zero(2, 2);
    a0(1, 1) = Complex(3, 0); // eigenvalue difference 3 collides with s = 3
    Matrix rhs = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(sylvester_solve(a0, 3, rhs), ResonanceError);
    CHECK_NOTHROW(sylvester_solve(a0, 2, rhs));
}

TEST_CASE("operator_k_bound: closed forms for normal matrices") {
    CHECK(operator_k_bound(Matrix::Zero(2, 2), 10) == doctest::Approx(1.0).epsilon(1e-12));

    Matrix a0 = Matrix::Zero(2, 2);
    a0(1, 1) = Complex(0.5, 0);
    // min over s >= 1 of min |s - (mu_i - mu_j)| = |1 - 0.5| = 0.5 at s = 1
    CHECK(operator_k_bound(a0, 10) == doctest::Approx(2.0).epsilon(1e-10));

    // nilpotent: finite, and at least the s = 1 dense value
    Matrix nil = mat2(Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0));
    double b = operator_k_bound(nil, 8);
    CHECK(std::isfinite(b));
    CHECK(b >= 1.0); // K_1 has unit singular values among its spectrum

    // s_max smaller than 2||A0||: the internal extension must still cover the dip
    Matrix big = Matrix::Zero(2, 2);
    big(0, 0) = Complex(4.6, 0); // eigenvalue difference 4.6 dips at s = 5
    double wide = operator_k_bound(big, 10);
    double narrow = operator_k_bound(big, 2);
    CHECK(narrow == doctest::Approx(wide).epsilon(1e-10));
    CHECK(wide == doctest::Approx(1.0 / 0.4).epsilon(1e-10)); // min |s-4.6| = 0.4
}

TEST_CASE("operator_k_bound: resonant input is rejected") {
    Matrix a0 = Matrix::Zero(2, 2);
    a0(1, 1) = Complex(2, 0); // K_2 singular
    CHECK_THROWS_AS(operator_k_bound(a0, 6), ResonanceError);
}

TEST_CASE("check_deployment: families") {
    auto diag_spec = [](Complex c1, Complex c2) {
        return manual_spec(Matrix::Identity(2, 2),
                           {JordanBlock{c1, 1}, JordanBlock{c2, 1}});
    };
    SpectralData target = diag_spec(Complex(0.3, 0), Complex(-0.2, 0));

    // constant family: converged from the start
    std::vector<std::pair<double, SpectralData>> fam;
    for (double h : {0.2, 0.1, 0.05}) fam.emplace_back(h, target);
    CHECK(check_deployment(fam, target, 1e-8).ok);

    // drifting-in family: distance ~ h, monotone decreasing
    std::vector<std::pair<double, SpectralData>> fam2;
    for (double h : {0.2, 0.1, 0.05})
        fam2.emplace_back(h, diag_spec(Complex(0.3 + h * 1e-3, 0), Complex(-0.2 - h * 1e-3, 0)));
    CHECK(check_deployment(fam2, target, 1e-3).ok);

    // escaping eigenvalue: distance grows like 1/h
    std::vector<std::pair<double, SpectralData>> fam3;
    for (double h : {0.2, 0.1, 0.05})
        fam3.emplace_back(h, diag_spec(Complex(0.3, 0), Complex(1.0 / h, 0)));
    DeploymentReport bad = check_deployment(fam3, target, 1e-3);
    CHECK(!bad.ok);
    CHECK(!bad.diagnostic.empty());

    // block-structure mismatch at the smallest step
    SpectralData jordan_target = manual_spec(Matrix::Identity(2, 2), {JordanBlock{Complex(0.3, 0), 2}});
    std::vector<std::pair<double, SpectralData>> fam4;
    for (double h : {0.2, 0.1}) fam4.emplace_back(h, diag_spec(Complex(0.3, 0), Complex(0.3, 0)));
    CHECK(!check_deployment(fam4, jordan_target, 1e-6).ok);

    // non-decreasing h sequence is invalid input
    std::vector<std::pair<double, SpectralData>> fam5 = {{0.1, target}, {0.2, target}};
    CHECK(!check_deployment(fam5, target, 1e-6).ok);
}

TEST_CASE("matrix functions agree across equivalent reductions") {
    // Same A0 via decompose() and via a hand-built basis with rescaled chains:
    // every function computed through matrix_apply_jet must agree.
    Matrix p(2, 2);
    p << Complex(1, 0), Complex(0.5, 0.25), Complex(0, 0), Complex(2, -1);
    Matrix j = mat2(Complex(0.3, 0.1), Complex(1, 0), Complex(0, 0), Complex(0.3, 0.1));
    Matrix a = p * j * p.inverse();
    SpectralData via_decompose = decompose(a);
    SpectralData manual = manual_spec(p, {JordanBlock{Complex(0.3, 0.1), 2}});

    for (Complex x : {Complex(2, 0.5), Complex(5, -3)}) {
        Matrix lhs = matrix_power(via_decompose, x);
        Matrix rhs = matrix_power(manual, x);
        CHECK(norm_rowsum(lhs - rhs) < 1e-9 * std::max(1.0, norm_rowsum(rhs)));
    }
    Matrix el = matrix_exponential(via_decompose, Complex(0, 2));
    Matrix er = matrix_exponential(manual, Complex(0, 2));
    CHECK(norm_rowsum(el - er) < 1e-9 * std::max(1.0, norm_rowsum(er)));
}
