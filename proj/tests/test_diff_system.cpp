/*
 * Difference systems and canonical solutions, validated against
 *  (1) Gamma closed forms — the scalar model system delta_h y = -mu/(x-l-h) y
 *      has canonical solutions expressible through four Gamma factors on both
 *      sides, evaluated here with the independent log_gamma core and against
 *      40-digit reference constants,
 *  (2) series identities — the gauge must satisfy its defining functional
 *      equation, re-checked coefficient-wise with the factorial-series
 *      arithmetic module (multiply/translate) rather than the recurrence,
 *  (3) exactness properties — constant systems have the identity gauge, two
 *      truncation orders agree bit-for-bit on shared coefficients, and the
 *      minus transform is an exact involution.
 */
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "conflux/diff_system.hpp"
#include "conflux/errors.hpp"
#include "conflux/factorial_series.hpp"
#include "conflux/rational.hpp"
#include "conflux/specfun.hpp"
#include "conflux/types.hpp"
#include "oracles.hpp"

using namespace conflux;

namespace {

const Complex kLambda(0.0, 1.0);
const double kMu = 0.1;

Polynomial poly(std::initializer_list<Complex> cs) { return Polynomial(cs); }

RationalMatrix scalar_rational(Polynomial num, Polynomial den) {
    RationalMatrix r;
    r.n = 1;
    r.entries = {{RationalEntry{std::move(num), std::move(den)}}};
    return r;
}

// Scalar model system  delta_h y = -mu/(x - l - h) y.
DifferenceSystem model_system(double h) {
    return make_system(
        scalar_rational(poly({Complex(-kMu, 0.0)}), poly({-kLambda - h, Complex(1.0, 0.0)})), h);
}

// a_{1,2}^{(h)} = (l/(2h)) (1 -+ sqrt(1 - 4 mu h / l^2)).
std::pair<Complex, Complex> model_exponents(double h) {
    const Complex root = std::sqrt(Complex(1.0, 0.0) - 4.0 * kMu * h / (kLambda * kLambda));
    const Complex half = kLambda / (2.0 * h);
    return {half * (Complex(1.0, 0.0) - root), half * (Complex(1.0, 0.0) + root)};
}

Complex model_plus_closed(Complex x, double h) {
    const auto [a1, a2] = model_exponents(h);
    const Complex xx = x / h;
    const Complex ll = kLambda / h;
    return std::exp(log_gamma(xx) + log_gamma(xx - ll) - log_gamma(xx - a1) -
                    log_gamma(xx - a2));
}

Complex model_minus_closed(Complex x, double h) {
    const auto [a1, a2] = model_exponents(h);
    const Complex xx = x / h;
    const Complex ll = kLambda / h;
    const Complex one(1.0, 0.0);
    return std::exp(log_gamma(one + a1 - xx) + log_gamma(one + a2 - xx) - log_gamma(one - xx) -
                    log_gamma(one + ll - xx));
}

Matrix random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex(dist(gen), dist(gen));
    return m;
}

// Two-pole 2x2 test system  A(x) = B1/(x - p1) + B2/(x - p2) with A_0 = 0.
DifferenceSystem two_pole_system(double h, std::uint64_t seed, Orientation orientation) {
    const Complex p1(0.8, -0.6);
    const Complex p2(-0.5, 0.9);
    const Matrix b1 = 0.3 * random_matrix(2, seed);
    const Matrix b2 = 0.3 * random_matrix(2, seed + 1);
    RationalMatrix r;
    r.n = 2;
    r.entries.resize(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            // (b1 (x - p2) + b2 (x - p1)) / ((x - p1)(x - p2)) entrywise
            Polynomial num = {-b1(i, j) * p2 - b2(i, j) * p1, b1(i, j) + b2(i, j)};
            Polynomial den = {p1 * p2, -p1 - p2, Complex(1.0, 0.0)};
            r.entries[i].push_back(RationalEntry{std::move(num), std::move(den)});
        }
    DifferenceSystem sys = make_system(r, h);
    if (orientation == Orientation::Minus) sys = minus_transform(sys);
    return sys;
}

double coeff_gap(const Matrix& a, const Matrix& b) { return norm_rowsum(a - b); }

} // namespace

TEST_CASE("make_system validates input and exposes system data") {
    // Improper entry (numerator degree exceeds denominator degree).
    RationalMatrix bad = scalar_rational(poly({Complex(0, 0), Complex(0, 0), Complex(1, 0)}),
                                         poly({Complex(1, 0), Complex(1, 0)}));
    CHECK_THROWS_AS(make_system(bad, 1.0), ValidationError);

    RationalMatrix ok = scalar_rational(poly({Complex(1, 0)}), poly({Complex(-2, 0), Complex(1, 0)}));
    CHECK_THROWS_AS(make_system(ok, 0.0), ValidationError);
    CHECK_THROWS_AS(make_system(ok, -0.5), ValidationError);

    DifferenceSystem sys = make_system(ok, 0.5);
    CHECK(sys.n() == 1);
    CHECK(norm_rowsum(sys.a0) == 0.0);

    // A(x) = 1/(x-2): value, step matrix, poles.
    const Complex x(6.0, 1.0);
    CHECK(std::abs(system_value(sys, x)(0, 0) - 1.0 / (x - 2.0)) < 1e-15);
    const Complex s_expect = 1.0 - 0.5 / ((x - 2.0) * (x - 0.5));
    CHECK(std::abs(step_matrix(sys, x)(0, 0) - s_expect) < 1e-15);
    REQUIRE(system_poles(sys).size() == 1);
    CHECK(std::abs(system_poles(sys)[0] - Complex(2.0, 0.0)) < 1e-12);

    // The minus-oriented twin stores A(-u) but reports the original values.
    DifferenceSystem msys = minus_transform(sys);
    CHECK(msys.orientation == Orientation::Minus);
    CHECK(std::abs(system_value(msys, x)(0, 0) - system_value(sys, x)(0, 0)) < 1e-15);
    CHECK(std::abs(step_matrix(msys, x)(0, 0) - step_matrix(sys, x)(0, 0)) < 1e-15);
    REQUIRE(system_poles(msys).size() == 1);
    CHECK(std::abs(system_poles(msys)[0] - Complex(2.0, 0.0)) < 1e-12);
}

TEST_CASE("minus transform is an exact involution on rational data") {
    DifferenceSystem sys = two_pole_system(0.5, 11, Orientation::Plus);
    DifferenceSystem back = minus_transform(minus_transform(sys));
    CHECK(back.orientation == Orientation::Plus);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const RationalEntry& a = sys.rational->entries[i][j];
            const RationalEntry& b = back.rational->entries[i][j];
            REQUIRE(a.num.size() == b.num.size());
            REQUIRE(a.den.size() == b.den.size());
            for (std::size_t k = 0; k < a.num.size(); ++k) CHECK(a.num[k] == b.num[k]);
            for (std::size_t k = 0; k < a.den.size(); ++k) CHECK(a.den[k] == b.den[k]);
        }
    CHECK(norm_rowsum(back.a0 - sys.a0) == 0.0);

    FactorialSeries fs;
    fs.h = 1.0;
    fs.coeffs = {Matrix::Zero(1, 1), Matrix::Identity(1, 1)};
    CHECK_THROWS_AS(minus_transform(make_system(fs)), ValidationError);
}

TEST_CASE("constant system has the identity gauge") {
    Matrix c(2, 2);
    c << Complex(0.3, 0.1), Complex(0.2, 0.0), Complex(0.0, -0.1), Complex(-0.25, 0.4);
    RationalMatrix r;
    r.n = 2;
    r.entries.resize(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.entries[i].push_back(RationalEntry{poly({c(i, j)}), poly({Complex(1, 0)})});
    DifferenceSystem sys = make_system(r, 0.5);
    CHECK(norm_rowsum(sys.a0 - c) == 0.0);

    FactorialSeries f = gauge_series(sys, 24);
    CHECK(norm_rowsum(f.coeffs[0] - Matrix::Identity(2, 2)) == 0.0);
    for (std::size_t s = 1; s <= f.order(); ++s) CHECK(norm_rowsum(f.coeffs[s]) == 0.0);
    REQUIRE(f.cert.has_value());
    CHECK(f.cert->C == 0.0);

    // The canonical solution collapses to the matrix character.
    CanonicalSolution sol = canonical_solution(sys, 24);
    const Complex x(4.0, -1.5);
    const Matrix direct = matrix_character(sol.spec, CharacterKind::PlusInfinity, 0.5, x);
    CHECK(norm_rowsum(evaluate_solution(sol, x) - direct) < 1e-13 * norm_rowsum(direct));
}

TEST_CASE("scalar gauge first coefficient matches the closed form") {
    // delta_h y = (c + b x^{-[1]_h}) y  =>  F_1 = -b, independent of h.
    const Complex c(0.3, 0.0);
    const Complex b(0.7, 0.0);
    for (double h : {1.0, 0.5}) {
        FactorialSeries a;
        a.h = h;
        Matrix m0(1, 1), m1(1, 1);
        m0(0, 0) = c;
        m1(0, 0) = b;
        a.coeffs = {m0, m1};
        DifferenceSystem sys = make_system(a);
        FactorialSeries f = gauge_series(sys, 12);
        CHECK(std::abs(f.coeffs[1](0, 0) + b) < 1e-14);
    }

    // Model system at h = 1: A_1 = -mu, so F_1 = mu.
    FactorialSeries f = gauge_series(model_system(1.0), 12);
    CHECK(std::abs(f.coeffs[1](0, 0) - kMu) < 1e-14 * kMu + 1e-15);
}

TEST_CASE("gauge coefficients are independent of the truncation order") {
    for (Orientation o : {Orientation::Plus, Orientation::Minus}) {
        DifferenceSystem sys = two_pole_system(0.5, 23, o);
        FactorialSeries f20 = gauge_series(sys, 20);
        FactorialSeries f40 = gauge_series(sys, 40);
        for (std::size_t s = 0; s <= 20; ++s) CHECK(coeff_gap(f20.coeffs[s], f40.coeffs[s]) == 0.0);
    }
}

TEST_CASE("gauge certificate covers its coefficients") {
    DifferenceSystem sys = two_pole_system(0.25, 31, Orientation::Plus);
    FactorialSeries f = gauge_series(sys, 48);
    REQUIRE(f.cert.has_value());
    for (std::size_t s = 1; s <= f.order(); ++s) {
        const double bound =
            f.cert->C * rising_factorial(f.cert->lambda, static_cast<int>(s) - 1, f.h);
        CHECK(norm_rowsum(f.coeffs[s]) <= bound * (1.0 + 1e-12) + 1e-300);
    }
}

TEST_CASE("gauge series satisfies the defining identity") {
    // A F - delta_h F - translate(F) A_0 = 0, re-derived with the series
    // arithmetic module and evaluated numerically inside the half-plane.
    DifferenceSystem sys = two_pole_system(1.0, 47, Orientation::Plus);
    const std::size_t order = 40;
    FactorialSeries f = gauge_series(sys, order);
    FactorialSeries a = system_expansion(sys, order);

    FactorialSeries af = multiply(a, f);
    FactorialSeries df = f; // delta_h F: coefficient s maps to -s F_s
    df.coeffs[0] = Matrix::Zero(2, 2);
    for (std::size_t s = 1; s <= order; ++s) df.coeffs[s] = -static_cast<double>(s) * f.coeffs[s];
    FactorialSeries tfa = translate(f);
    for (std::size_t s = 0; s <= order; ++s) tfa.coeffs[s] = tfa.coeffs[s] * sys.a0;

    FactorialSeries resid = af;
    resid.cert.reset();
    for (std::size_t s = 0; s <= order; ++s)
        resid.coeffs[s] = af.coeffs[s] - df.coeffs[s] - tfa.coeffs[s];

    // Coefficient-wise smallness relative to the magnitudes involved.
    for (std::size_t s = 0; s <= order; ++s) {
        const double scale = 1.0 + norm_rowsum(af.coeffs[s]) + norm_rowsum(df.coeffs[s]) +
                             norm_rowsum(tfa.coeffs[s]);
        CHECK(norm_rowsum(resid.coeffs[s]) <= 1e-11 * scale);
    }

    // Evaluated residual at Re x = lambda' + 5.
    REQUIRE(f.cert.has_value());
    const Complex x0(f.cert->lambda + 5.0, 0.7);
    CHECK(norm_rowsum(evaluate(resid, x0).value) <= 1e-9);
}

TEST_CASE("minus gauge satisfies the covariant identity") {
    // delta_h G + G - translate(G) + G A_0 - translate(M G) = 0 with M the
    // stored (transformed) expansion.
    for (double h : {1.0, 0.5}) {
        DifferenceSystem msys = minus_transform(model_system(h));
        const std::size_t order = 24;
        FactorialSeries g = gauge_series(msys, order);
        FactorialSeries m = system_expansion(msys, order);

        FactorialSeries mg = multiply(m, g);
        FactorialSeries tmg = translate(mg);
        FactorialSeries tg = translate(g);
        for (std::size_t s = 0; s <= order; ++s) {
            Matrix term = -static_cast<double>(s) * g.coeffs[s]; // delta_h G
            term += g.coeffs[s] - tg.coeffs[s] + g.coeffs[s] * msys.a0 - tmg.coeffs[s];
            const double scale = 1.0 + norm_rowsum(g.coeffs[s]) + norm_rowsum(tg.coeffs[s]) +
                                 norm_rowsum(tmg.coeffs[s]);
            CHECK(norm_rowsum(term) <= 1e-11 * scale);
        }
    }

    DifferenceSystem msys = two_pole_system(0.5, 59, Orientation::Minus);
    const std::size_t order = 32;
    FactorialSeries g = gauge_series(msys, order);
    FactorialSeries m = system_expansion(msys, order);
    FactorialSeries tmg = translate(multiply(m, g));
    FactorialSeries tg = translate(g);
    for (std::size_t s = 0; s <= order; ++s) {
        Matrix term = -static_cast<double>(s) * g.coeffs[s];
        term += g.coeffs[s] - tg.coeffs[s] + g.coeffs[s] * msys.a0 - tmg.coeffs[s];
        const double scale = 1.0 + norm_rowsum(g.coeffs[s]) + norm_rowsum(tg.coeffs[s]) +
                             norm_rowsum(tmg.coeffs[s]);
        CHECK(norm_rowsum(term) <= 1e-11 * scale);
    }
}

TEST_CASE("resonant systems are rejected") {
    RationalMatrix r;
    r.n = 2;
    r.entries.resize(2);
    r.entries[0].push_back(RationalEntry{poly({Complex(0, 0)}), poly({Complex(1, 0)})});
    r.entries[0].push_back(
        RationalEntry{poly({Complex(1, 0)}), poly({Complex(-1, 0), Complex(1, 0)})});
    r.entries[1].push_back(RationalEntry{poly({Complex(0, 0)}), poly({Complex(1, 0)})});
    r.entries[1].push_back(RationalEntry{poly({Complex(2, 0)}), poly({Complex(1, 0)})});
    DifferenceSystem sys = make_system(r, 1.0); // A_0 = diag(0, 2): resonant
    CHECK_THROWS_AS(gauge_series(sys, 8), ResonanceError);
}

TEST_CASE("scalar model solution matches its Gamma closed form") {
    DifferenceSystem sys = model_system(1.0);
    CanonicalSolution sol = canonical_solution(sys, 64);
    CHECK(sol.kind == CharacterKind::PlusInfinity);
    CHECK(sol.halfplane < 6.0);

    // Deep in the half-plane, direct summation agrees with the Gamma ratio.
    const Complex far(20.0, -1.7);
    const Complex direct = evaluate_solution(sol, far)(0, 0);
    CHECK(std::abs(direct - model_plus_closed(far, 1.0)) <= 1e-10 * std::abs(direct));

    // The closed-form helper itself agrees with the 40-digit reference.
    const Complex target(0.31, -1.7);
    CHECK(std::abs(model_plus_closed(target, 1.0) - oracle::kModelPlusRef) <=
          1e-12 * std::abs(oracle::kModelPlusRef));

    // Continuation from the certified seed down to Re x = 0.31.
    const Complex continued = continue_to(sol, target)(0, 0);
    CHECK(std::abs(continued - oracle::kModelPlusRef) <= 1e-9 * std::abs(oracle::kModelPlusRef));
}

TEST_CASE("minus solution matches its Gamma closed form") {
    DifferenceSystem msys = minus_transform(model_system(1.0));
    FactorialSeries g = gauge_series(msys, 64);
    CHECK(std::abs(g.coeffs[1](0, 0) + kMu) < 1e-14); // G_1 = -mu

    CanonicalSolution sol = canonical_solution(msys, 64);
    CHECK(sol.kind == CharacterKind::MinusInfinity);

    const Complex far(-20.0, -1.7);
    const Complex direct = evaluate_solution(sol, far)(0, 0);
    CHECK(std::abs(direct - model_minus_closed(far, 1.0)) <= 1e-10 * std::abs(direct));

    const Complex target(0.31, -1.7);
    CHECK(std::abs(model_minus_closed(target, 1.0) - oracle::kModelMinusRef) <=
          1e-12 * std::abs(oracle::kModelMinusRef));

    const Complex continued = continue_to(sol, target)(0, 0);
    CHECK(std::abs(continued - oracle::kModelMinusRef) <= 1e-9 * std::abs(oracle::kModelMinusRef));
}

TEST_CASE("character continuation reproduces the Gamma ratio") {
    // Constant scalar system: the canonical solution IS e_c^{(h)+}.
    const Complex c(0.3, 0.2);
    RationalMatrix r = scalar_rational(poly({c}), poly({Complex(1, 0)}));
    DifferenceSystem sys = make_system(r, 1.0);
    CanonicalSolution sol = canonical_solution(sys, 32);

    const Complex x(2.3, 0.4);
    std::vector<Complex> path;
    for (int j = 30; j >= 0; --j) path.push_back(x + Complex(static_cast<double>(j), 0.0));
    const Complex walked = continue_solution(sol, x, path)(0, 0);
    const Complex closed = std::exp(log_gamma(x) - log_gamma(x - c)); // h = 1
    CHECK(std::abs(walked - closed) <= 1e-9 * std::abs(closed));

    // A zero-length path inside the half-plane is a direct evaluation.
    const Complex inside(7.5, -0.3);
    CHECK(continue_solution(sol, inside, {inside})(0, 0) == evaluate_solution(sol, inside)(0, 0));
}

TEST_CASE("two admissible paths agree") {
    DifferenceSystem sys = model_system(1.0);
    CanonicalSolution sol = canonical_solution(sys, 64);
    const Complex x(1.2, -0.8);

    const Matrix direct_walk = continue_to(sol, x);

    const long m = static_cast<long>(std::ceil(sol.seed_abscissa - x.real())) + 2;
    std::vector<Complex> path;
    path.emplace_back(x.real() + static_cast<double>(m), 2.5); // certified, off-line
    path.emplace_back(x.real() + static_cast<double>(m), x.imag()); // vertical re-seed
    for (long j = m - 1; j >= 0; --j) path.emplace_back(x.real() + static_cast<double>(j), x.imag());
    const Matrix legged = continue_solution(sol, x, path);

    CHECK(norm_rowsum(direct_walk - legged) <= 1e-9 * norm_rowsum(direct_walk));
}

TEST_CASE("continuation rejects poles, singular steps, and bad paths") {
    // Walking the horizontal line Im x = 1 into the model system's pole at
    // x = 1 + i trips the proximity gate.
    DifferenceSystem sys = model_system(1.0);
    CanonicalSolution sol = canonical_solution(sys, 48);
    CHECK_THROWS_AS(continue_to(sol, Complex(1e-7, 1.0)), PathError);

    // Constant scalar c = 5, h = 1: S(t) = 1 - 5/(t-1) vanishes at t = 6.
    RationalMatrix r5 = scalar_rational(poly({Complex(5, 0)}), poly({Complex(1, 0)}));
    CanonicalSolution sol5 = canonical_solution(make_system(r5, 1.0), 16);
    CHECK_THROWS_AS(continue_to(sol5, Complex(5.0, 0.0)), PathError);

    // Path validation.
    const Complex inside(sol.seed_abscissa + 1.0, 0.0);
    CHECK_THROWS_AS(continue_solution(sol, inside, {}), ValidationError);
    CHECK_THROWS_AS(continue_solution(sol, inside, {inside + 1.0}), ValidationError);
    CHECK_THROWS_AS(continue_solution(sol, Complex(0.5, 0.0),
                                      {Complex(0.5, 0.0)}), // seed outside half-plane
                    PathError);
    CHECK_THROWS_AS(continue_solution(sol, inside + 0.5, {inside, inside + 0.5}), // step != h
                    ValidationError);
    // Vertical leg with an uncertified endpoint: walk left out of the
    // half-plane first, then try to jump vertically.
    std::vector<Complex> bad;
    const long m = static_cast<long>(std::ceil(sol.seed_abscissa - 0.31)) + 1;
    for (long j = m; j >= 0; --j) bad.emplace_back(0.31 + static_cast<double>(j), -1.7);
    bad.emplace_back(0.31, 1.3); // vertical jump far below the half-plane
    CHECK_THROWS_AS(continue_solution(sol, Complex(0.31, 1.3), bad), PathError);
}

TEST_CASE("residual probes solutions of the system") {
    DifferenceSystem sys = model_system(1.0);

    // The exact Gamma-ratio solution drives the residual to rounding level.
    auto exact = [&](Complex x) {
        Matrix m(1, 1);
        m(0, 0) = model_plus_closed(x, 1.0);
        return m;
    };
    CHECK(residual(sys, exact, Complex(6.0, -0.4)) <= 1e-11);

    // The canonical solution (via continuation) satisfies it to target accuracy.
    CanonicalSolution sol = canonical_solution(sys, 64);
    auto canonical = [&](Complex x) { return continue_to(sol, x); };
    CHECK(residual(sys, canonical, Complex(2.2, 0.4)) <= 1e-9);
    CHECK(residual(sys, canonical, Complex(sol.seed_abscissa + 2.0, -1.1)) <= 1e-11);

    // A perturbed gauge coefficient is detected.
    CanonicalSolution broken = sol;
    broken.gauge.coeffs[1](0, 0) += 0.1;
    auto wrong = [&](Complex x) { return evaluate_solution(broken, x); };
    CHECK(residual(sys, wrong, Complex(sol.seed_abscissa + 2.0, -1.1)) >= 1e-3);

    // Constant 2x2 system: the matrix character is an exact solution.
    Matrix c(2, 2);
    c << Complex(0.2, 0.3), Complex(0.1, 0.0), Complex(0.0, 0.0), Complex(-0.3, -0.2);
    RationalMatrix rc;
    rc.n = 2;
    rc.entries.resize(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            rc.entries[i].push_back(RationalEntry{poly({c(i, j)}), poly({Complex(1, 0)})});
    DifferenceSystem csys = make_system(rc, 0.5);
    SpectralData cspec = system_spectral(csys);
    auto character_solution = [&](Complex x) {
        return matrix_character(cspec, CharacterKind::PlusInfinity, 0.5, x);
    };
    CHECK(residual(csys, character_solution, Complex(3.0, 0.8)) <= 1e-11);
}

TEST_CASE("evaluation outside the certified half-plane is rejected") {
    CanonicalSolution sol = canonical_solution(model_system(1.0), 32);
    CHECK_THROWS_AS(evaluate_solution(sol, Complex(0.5, 0.0)), DomainError);

    CanonicalSolution msol = canonical_solution(minus_transform(model_system(1.0)), 32);
    CHECK_THROWS_AS(evaluate_solution(msol, Complex(-0.5, 0.0)), DomainError);
}

TEST_CASE("distant poles trigger the half-plane warning") {
    RationalMatrix r = scalar_rational(poly({Complex(0.1, 0.0)}),
                                       poly({Complex(-600.0, 0.0), Complex(1.0, 0.0)}));
    CanonicalSolution sol = canonical_solution(make_system(r, 1.0), 16);
    CHECK(sol.halfplane > 500.0);
    CHECK(!sol.warning.empty());
}

TEST_CASE("factorial-backed systems work uncertified but cannot be certified") {
    FactorialSeries a;
    a.h = 1.0;
    Matrix m0(1, 1), m1(1, 1);
    m0(0, 0) = Complex(0.25, 0.0);
    m1(0, 0) = Complex(-0.4, 0.1);
    a.coeffs = {m0, m1}; // no certificate attached
    DifferenceSystem sys = make_system(a);

    FactorialSeries f = gauge_series(sys, 16);
    CHECK(!f.cert.has_value());
    CHECK(std::abs(f.coeffs[1](0, 0) - Complex(0.4, -0.1)) < 1e-14);

    CHECK_THROWS_AS(canonical_solution(sys, 16), ValidationError);
}
