/*
 * Connection matrices P = e+^{-1} e-, horizontal strips, h -> 0 limits,
 * monodromies M_j = P~_j P~_{j+1}^{-1}, the Frobenius solution of the limit
 * system x Y' = Atilde(x) Y, and the ordered-resolvent-product ODE oracle.
 *
 * Strip limits: P^(h) is sampled at each strip midpoint over a strictly
 * decreasing h-sequence; the limit is the linear-in-h Richardson value of the
 * last two samples, P~ = P_m + h_m (P_m - P_{m-1}) / (h_{m-1} - h_m).  The
 * per-strip empirical order is log(d_i/d_{i+1}) / log(h_i/h_{i+1}) on the
 * consecutive-difference norms d_i, skipped once the differences reach the
 * rounding floor.  A midpoint whose continuation is obstructed is shifted
 * horizontally in increments of one third of the family's largest step --
 * one shift shared by the entire h-sweep so all samples compare the same
 * point.
 *
 * ODE transport: ordered Euler products  prod_k (I + B(x_k)(x_{k+1} - x_k)),
 * B(x) = Atilde(x)/x, refined by step doubling with one Richardson
 * extrapolation (E_n = 2 R_{2n} - R_n) until two successive answers agree to
 * 1e-8; both the monodromy loops and the horizontal transport of the
 * Frobenius solution use this engine.
 */
#include "conflux/connection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace conflux {

namespace {

constexpr double kImTol = 1e-9;       // H-gate tolerance on imaginary parts
constexpr double kDetGate = 1e-12;    // singular-limit / singular-e+ gate
constexpr double kDiffFloor = 1e-11;  // convergence floor for rate estimates
constexpr double kTransportTol = 1e-8;
constexpr long kTransportCap = 1L << 21;

// Ordered product of (I + B dx) Euler factors along path(t), t in [0, 1].
Matrix ordered_product(const std::function<Complex(double)>& path,
                       const std::function<Matrix(Complex)>& field, long n, int dim) {
    Matrix y = identity(dim);
    Complex prev = path(0.0);
    for (long k = 0; k < n; ++k) {
        const Complex next = path(static_cast<double>(k + 1) / static_cast<double>(n));
        y = (identity(dim) + field(prev) * (next - prev)) * y;
        prev = next;
    }
    return y;
}

// Step-doubling with one Richardson level until two answers agree to 1e-8.
Matrix refined_transport(const std::function<Complex(double)>& path,
                         const std::function<Matrix(Complex)>& field, long n0, int dim) {
    long n = std::max(n0, 16L);
    Matrix r1 = ordered_product(path, field, n, dim);
    Matrix r2 = ordered_product(path, field, 2 * n, dim);
    Matrix extrap = 2.0 * r2 - r1;
    while (true) {
        n *= 2;
        if (n > kTransportCap)
            throw ConvergenceError("ordered resolvent products did not stabilize to 1e-8");
        const Matrix r4 = ordered_product(path, field, 2 * n, dim);
        const Matrix next = 2.0 * r4 - r2;
        if (norm_rowsum(next - extrap) <= kTransportTol * std::max(1.0, norm_rowsum(next)))
            return next;
        r2 = r4;
        extrap = next;
    }
}

double segment_distance(Complex p, Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(d)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

// Singular points of B(x) = Atilde(x)/x: the poles of Atilde and the origin.
std::vector<Complex> field_singularities(const RationalMatrix& atilde) {
    std::vector<Complex> out;
    for (const PoleData& p : atilde.poles()) out.push_back(p.location);
    out.emplace_back(0.0, 0.0);
    return out;
}

Matrix frobenius_direct(const FrobeniusSolution& sol, Complex x) {
    // Horner in 1/x.
    const Complex inv = Complex(1.0, 0.0) / x;
    Matrix g = sol.gauge.back();
    for (std::size_t s = sol.gauge.size() - 1; s-- > 0;) g = g * inv + sol.gauge[s];
    return g * matrix_power(sol.spec, x);
}

} // namespace

ConnectionContext make_connection(const DifferenceSystem& sys, std::size_t order) {
    if (sys.orientation != Orientation::Plus)
        throw ValidationError("make_connection: expects the untransformed (plus) system");
    ConnectionContext ctx;
    ctx.plus = canonical_solution(sys, order);
    ctx.minus = canonical_solution(minus_transform(sys), order);
    return ctx;
}

Matrix connection_matrix(const ConnectionContext& ctx, Complex x) {
    const Matrix ep = continue_to(ctx.plus, x);
    const Matrix em = continue_to(ctx.minus, x);
    Eigen::FullPivLU<Matrix> lu(ep);
    if (std::abs(lu.determinant()) < kDetGate)
        throw SingularMatrixError("connection_matrix: e+ is singular at the evaluation point");
    return lu.solve(em);
}

Matrix connection_matrix(const DifferenceSystem& sys, Complex x, std::size_t order) {
    return connection_matrix(make_connection(sys, order), x);
}

StripDecomposition strip_partition(const RationalMatrix& atilde) {
    std::vector<Complex> points;
    for (const PoleData& p : atilde.poles()) {
        if (std::abs(p.location.imag()) <= kImTol) {
            std::ostringstream os;
            os << "strip_partition: pole (" << p.location.real() << ", " << p.location.imag()
               << ") is real; the strip decomposition needs non-real poles";
            throw ValidationError(os.str());
        }
        points.push_back(p.location);
    }
    points.emplace_back(0.0, 0.0);
    std::sort(points.begin(), points.end(),
              [](Complex a, Complex b) { return a.imag() < b.imag(); });
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (points[i + 1].imag() - points[i].imag() <= kImTol) {
            std::ostringstream os;
            os << "strip_partition: singular points (" << points[i].real() << ", "
               << points[i].imag() << ") and (" << points[i + 1].real() << ", "
               << points[i + 1].imag() << ") share an imaginary part";
            throw ValidationError(os.str());
        }

    StripDecomposition out;
    out.poles = points;
    const std::size_t r = points.size();
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j <= r; ++j) {
        const double lo = j == 0 ? -inf : points[j - 1].imag();
        const double hi = j == r ? inf : points[j].imag();
        out.bands.emplace_back(lo, hi);
        double mid;
        if (j == 0)
            mid = points.front().imag() - 1.0;
        else if (j == r)
            mid = points.back().imag() + 1.0;
        else
            mid = 0.5 * (lo + hi);
        out.midpoints.emplace_back(0.0, mid);
    }
    return out;
}

StripLimitReport strip_limits(const std::vector<std::pair<double, DifferenceSystem>>& family,
                              const StripDecomposition& strips, std::size_t order) {
    if (family.size() < 2)
        throw ValidationError("strip_limits: need at least two h-values to extrapolate");
    for (std::size_t i = 0; i + 1 < family.size(); ++i)
        if (!(family[i + 1].first < family[i].first))
            throw ValidationError("strip_limits: h-sequence must be strictly decreasing");

    std::vector<ConnectionContext> contexts;
    contexts.reserve(family.size());
    for (const auto& [h, sys] : family) {
        if (std::abs(sys.h - h) > 1e-12 * std::max(1.0, h))
            throw ValidationError("strip_limits: family key does not match the system's step");
        contexts.push_back(make_connection(sys, order));
    }

    const double shift_unit = family.front().first / 3.0;
    const std::size_t m = family.size();

    StripLimitReport report;
    for (const auto& member : family) report.h_sequence.push_back(member.first);

    // One strip at a time; a midpoint obstructed for any h is shifted for the
    // whole sweep so every sample compares the same point.
    for (std::size_t strip = 0; strip < strips.midpoints.size(); ++strip) {
        auto sweep = [&](Complex base) {
            std::vector<Matrix> values;
            values.reserve(m);
            for (std::size_t i = 0; i < m; ++i) values.push_back(connection_matrix(contexts[i], base));
            return values;
        };
        std::vector<Matrix> values;
        Complex used = strips.midpoints[strip];
        for (int attempt = 0;; ++attempt) {
            try {
                values = sweep(used);
                break;
            } catch (const NumericError&) {
                if (attempt >= 3) throw;
                used += Complex(shift_unit, 0.0);
            }
        }

        auto extrapolate = [&](const std::vector<Matrix>& v) {
            const double h1 = report.h_sequence[m - 2];
            const double h2 = report.h_sequence[m - 1];
            return Matrix(v[m - 1] + (h2 / (h1 - h2)) * (v[m - 1] - v[m - 2]));
        };

        StripDiagnostics diag;
        diag.midpoint = used;
        for (std::size_t i = 0; i + 1 < m; ++i)
            diag.diffs.push_back(norm_rowsum(values[i + 1] - values[i]));
        diag.converged = !diag.diffs.empty() && diag.diffs.back() <= kDiffFloor;
        for (std::size_t i = 0; i + 1 < diag.diffs.size(); ++i) {
            if (diag.diffs[i + 1] <= kDiffFloor || diag.diffs[i] <= kDiffFloor) continue;
            diag.rates.push_back(std::log(diag.diffs[i] / diag.diffs[i + 1]) /
                                 std::log(report.h_sequence[i] / report.h_sequence[i + 1]));
        }
        for (std::size_t i = 0; i + 1 < diag.diffs.size(); ++i)
            if (diag.diffs[i + 1] > 0.9 * diag.diffs[i] + kDiffFloor) diag.contracting = false;

        const Matrix limit = extrapolate(values);

        // Within-strip constancy: extrapolate at a second point of the strip.
        const Complex second = used + Complex(0.45, 0.0);
        try {
            const std::vector<Matrix> values2 = sweep(second);
            diag.constancy = norm_rowsum(limit - extrapolate(values2));
        } catch (const NumericError&) {
            diag.constancy = std::numeric_limits<double>::quiet_NaN();
        }

        report.limits.push_back(limit);
        report.diagnostics.push_back(diag);
    }
    return report;
}

MonodromyReport monodromy(const StripLimitReport& limits, const StripDecomposition& strips) {
    if (limits.limits.size() != strips.poles.size() + 1)
        throw ValidationError("monodromy: strip-limit count does not match the decomposition");
    MonodromyReport report;
    report.poles = strips.poles;
    report.strip_limits = limits.limits;
    report.h_sequence = limits.h_sequence;
    report.diagnostics = limits.diagnostics;
    for (std::size_t j = 0; j < strips.poles.size(); ++j) {
        // M_j = P~_j P~_{j+1}^{-1}  via  M_j^T = P~_{j+1}^{-T} P~_j^T.
        Eigen::FullPivLU<Matrix> lu(limits.limits[j + 1].transpose().eval());
        if (std::abs(lu.determinant()) < kDetGate)
            throw SingularMatrixError("monodromy: a strip limit is singular");
        report.monodromies.push_back(
            Matrix(lu.solve(limits.limits[j].transpose()).transpose()));
    }
    return report;
}

FrobeniusSolution frobenius_solution(const RationalMatrix& atilde, std::size_t order) {
    if (order < 1 || order > kMaxOrder)
        throw ValidationError("frobenius_solution: truncation order out of range");
    FrobeniusSolution sol;
    sol.atilde = atilde;
    const std::vector<Matrix> pow = power_expansion(atilde, order);
    sol.a0 = pow[0];
    sol.spec = decompose(sol.a0);
    if (!check_nonresonant(sol.spec))
        throw ResonanceError(
            "frobenius_solution: two eigenvalues of the residue matrix at infinity differ "
            "by a nonzero integer");
    const int n = atilde.n;
    const SylvesterSolver solver(sol.a0);
    sol.gauge.assign(order + 1, Matrix::Zero(n, n));
    sol.gauge[0] = identity(n);
    for (std::size_t s = 1; s <= order; ++s) {
        Matrix rhs = Matrix::Zero(n, n);
        for (std::size_t k = 0; k < s; ++k) rhs -= pow[s - k] * sol.gauge[k];
        sol.gauge[s] = solver.solve(static_cast<double>(s), rhs);
    }
    double rho = 0.0;
    for (const PoleData& p : atilde.poles()) rho = std::max(rho, std::abs(p.location));
    sol.direct_radius = 1.5 * rho + 2.0;
    return sol;
}

Matrix frobenius_evaluate(const FrobeniusSolution& sol, Complex x) {
    if (std::abs(x) >= sol.direct_radius) return frobenius_direct(sol, x);

    // Transport along the horizontal segment from the direct zone at the same
    // height.  |Im x| < direct_radius here, so the entry abscissa is real.
    const double entry_re =
        std::sqrt(sol.direct_radius * sol.direct_radius - x.imag() * x.imag()) + 0.5;
    const Complex start(entry_re, x.imag());
    for (const Complex& p : field_singularities(sol.atilde))
        if (segment_distance(p, start, x) < 1e-6 * std::max(1.0, std::abs(p)))
            throw PathError("frobenius_evaluate: horizontal transport passes a singular point");
    auto path = [&](double t) { return start + t * (x - start); };
    auto field = [&](Complex z) { return Matrix(sol.atilde.value(z) / z); };
    const long n0 = static_cast<long>(64.0 * std::max(1.0, std::abs(x - start)));
    const Matrix transport = refined_transport(path, field, n0, sol.atilde.n);
    return transport * frobenius_direct(sol, start);
}

Matrix ode_monodromy_oracle(const RationalMatrix& atilde, std::size_t pole_index, Complex base,
                            double radius, int steps, std::size_t order) {
    const StripDecomposition strips = strip_partition(atilde);
    if (pole_index >= strips.poles.size())
        throw ValidationError("ode_monodromy_oracle: pole index out of range");
    if (!(radius > 0.0)) throw ValidationError("ode_monodromy_oracle: radius must be positive");
    const Complex center = strips.poles[pole_index];
    for (std::size_t k = 0; k < strips.poles.size(); ++k) {
        if (k == pole_index) continue;
        if (std::abs(strips.poles[k] - center) <= 1.25 * radius)
            throw PathError(
                "ode_monodromy_oracle: loop radius reaches another singular point; shrink it");
    }
    if (std::abs(std::abs(base - center) - radius) > 1e-9 * std::max(1.0, radius))
        throw ValidationError("ode_monodromy_oracle: base point is not on the loop");

    const Complex offset = base - center;
    auto path = [&](double t) {
        const double th = 2.0 * std::numbers::pi * t;
        return center + offset * Complex(std::cos(th), std::sin(th));
    };
    auto field = [&](Complex z) { return Matrix(atilde.value(z) / z); };
    const Matrix loop = refined_transport(path, field, std::max<long>(steps, 64), atilde.n);

    const FrobeniusSolution frob = frobenius_solution(atilde, order);
    const Matrix w = frobenius_evaluate(frob, base);
    Eigen::FullPivLU<Matrix> lu(w);
    if (std::abs(lu.determinant()) < kDetGate)
        throw SingularMatrixError("ode_monodromy_oracle: Frobenius basis singular at the base");
    return lu.solve(loop * w);
}

Matrix ode_monodromy_oracle(const RationalMatrix& atilde, std::size_t pole_index, double radius,
                            int steps, std::size_t order) {
    const StripDecomposition strips = strip_partition(atilde);
    if (pole_index >= strips.poles.size())
        throw ValidationError("ode_monodromy_oracle: pole index out of range");
    const Complex base = strips.poles[pole_index] - Complex(0.0, radius);
    return ode_monodromy_oracle(atilde, pole_index, base, radius, steps, order);
}

} // namespace conflux
