/*
 * Difference systems, canonical solutions, and continuation.
 *
 * Gauge recurrences (rescaled h = 1 frame, coefficients Abar_s = A_s / h^s):
 *
 *   Plus  (solution at +infinity), T_1 = 0, T_{s+1} = s (T_s + F_s):
 *       (A_0 + sI) F_s - F_s A_0
 *           = -Abar_s + T_s A_0 - sum_{j+k+l=s} c^{(k)}_{j,l} Abar_j F_l
 *
 *   Minus (stored data ^A(u) = A(-u); covariant form
 *          u (Z(u) - Z(u-h))/h = ^A(u-h) Z(u-h) - Z(u) A_0 rearranges to
 *          delta_h G + G - translate(G) + G A_0 = translate(^A G)):
 *       (A_0 + sI) G_s - G_s A_0
 *           = -[ M_s + T^G_s + T^W_s + sum_{j+k+l=s} c^{(k)}_{j,l} M_j G_l ],
 *       W = M * G (factorial product), both tails by the T-recurrence.
 *
 * Both recurrences are solved order by order through cached Schur-form
 * Sylvester solves; coefficients are rescaled back by F_s = h^s Fbar_s and a
 * growth certificate lambda' = lambda_A + 3 C_A bbar + h ||A_0|| (bbar the
 * uniform Sylvester inverse bound) is attached with an empirical covering
 * constant.
 *
 * Continuation: one backward step is Y(x-h) = S(x) Y(x) with
 * S(x) = I - h A(x)/(x-h); forward steps solve the same relation.  Paths are
 * gated away from poles of S (|t - p| < 1e-6 max(1, |p|)) and from singular
 * steps (|det S| < 1e-12).  Vertical legs re-seed by direct evaluation and are
 * admissible only between certified points.
 */
#include "conflux/diff_system.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace conflux {

namespace {

constexpr double kPoleGate = 1e-6;
constexpr double kDetGate = 1e-12;
constexpr double kSeedTailTarget = 1e-12;
constexpr double kWarnLambda = 500.0;
constexpr long kMaxSteps = 10000000L;

std::vector<Complex> gate_points(const DifferenceSystem& sys) {
    std::vector<Complex> gates = system_poles(sys);
    gates.emplace_back(sys.h, 0.0); // zero of the step denominator x - h
    return gates;
}

void check_pole_gate(const std::vector<Complex>& gates, Complex t) {
    for (const Complex& p : gates)
        if (std::abs(t - p) < kPoleGate * std::max(1.0, std::abs(p))) {
            std::ostringstream os;
            os << "continuation path passes within " << kPoleGate
               << " of a step-matrix pole near x = (" << p.real() << ", " << p.imag() << ")";
            throw PathError(os.str());
        }
}

Eigen::FullPivLU<Matrix> checked_step_lu(const DifferenceSystem& sys,
                                         const std::vector<Complex>& gates, Complex t,
                                         Matrix* s_out) {
    check_pole_gate(gates, t);
    Matrix s = step_matrix(sys, t);
    Eigen::FullPivLU<Matrix> lu(s);
    if (std::abs(lu.determinant()) < kDetGate)
        throw PathError("singular step matrix on continuation path");
    if (s_out) *s_out = s;
    return lu;
}

// Y(t - h) = S(t) Y(t)
Matrix step_left(const DifferenceSystem& sys, const std::vector<Complex>& gates, Complex t,
                 const Matrix& y) {
    Matrix s;
    checked_step_lu(sys, gates, t, &s);
    return s * y;
}

// Y(t) = S(t)^{-1} Y(t - h)
Matrix step_right(const DifferenceSystem& sys, const std::vector<Complex>& gates, Complex t,
                  const Matrix& y) {
    return checked_step_lu(sys, gates, t, nullptr).solve(y);
}

} // namespace

DifferenceSystem make_system(const RationalMatrix& a, double h, Orientation orientation) {
    if (!(h > 0.0)) throw ValidationError("make_system: step h must be positive");
    if (a.n <= 0) throw ValidationError("make_system: empty system");
    if (!a.is_proper())
        throw ValidationError("make_system: A must be holomorphic at infinity (proper entries)");
    DifferenceSystem sys;
    sys.h = h;
    sys.orientation = orientation;
    sys.rational = a;
    sys.a0 = a.value_at_infinity();
    return sys;
}

DifferenceSystem make_system(const FactorialSeries& a, Orientation orientation) {
    if (a.coeffs.empty()) throw ValidationError("make_system: empty coefficient list");
    if (!(a.h > 0.0)) throw ValidationError("make_system: step h must be positive");
    DifferenceSystem sys;
    sys.h = a.h;
    sys.orientation = orientation;
    sys.factorial = a;
    sys.a0 = a.coeffs.front();
    return sys;
}

Matrix system_value(const DifferenceSystem& sys, Complex x) {
    const Complex arg = sys.orientation == Orientation::Plus ? x : -x;
    if (sys.rational_backed()) return sys.rational->value(arg);
    return evaluate(*sys.factorial, arg).value;
}

Matrix step_matrix(const DifferenceSystem& sys, Complex x) {
    const Complex den = x - Complex(sys.h, 0.0);
    if (std::abs(den) < 1e-300) throw PoleError("step_matrix: x coincides with the step h");
    const Matrix a = system_value(sys, x);
    return identity(a.rows()) - (Complex(sys.h, 0.0) / den) * a;
}

std::vector<Complex> system_poles(const DifferenceSystem& sys) {
    std::vector<Complex> out;
    if (!sys.rational_backed()) return out;
    for (const PoleData& p : sys.rational->poles())
        out.push_back(sys.orientation == Orientation::Plus ? p.location : -p.location);
    return out;
}

FactorialSeries system_expansion(const DifferenceSystem& sys, std::size_t order) {
    if (sys.rational_backed()) return expand_rational(*sys.rational, sys.h, order);
    FactorialSeries out = *sys.factorial;
    if (out.coeffs.size() > order + 1) out.coeffs.resize(order + 1);
    return out;
}

SpectralData system_spectral(const DifferenceSystem& sys) {
    if (sys.spectral_override) return *sys.spectral_override;
    return decompose(sys.a0);
}

DifferenceSystem minus_transform(const DifferenceSystem& sys) {
    if (!sys.rational_backed())
        throw ValidationError(
            "minus_transform: only rational-backed systems support the substitution exactly");
    DifferenceSystem out = sys;
    out.rational = sys.rational->substitute_neg();
    out.orientation =
        sys.orientation == Orientation::Plus ? Orientation::Minus : Orientation::Plus;
    return out;
}

FactorialSeries gauge_series(const DifferenceSystem& sys, std::size_t order) {
    if (order < 1 || order > kMaxOrder)
        throw ValidationError("gauge_series: truncation order out of range");
    const int n = sys.n();
    const double h = sys.h;
    if (!std::isfinite(std::pow(h, -static_cast<double>(order))))
        throw ValidationError("gauge_series: order too large for step h in the rescaled frame");

    const SpectralData spec = system_spectral(sys);
    if (!check_nonresonant(spec))
        throw ResonanceError(
            "gauge_series: two eigenvalues of A0 differ by a nonzero integer; shear the "
            "system to a non-resonant form before computing the canonical gauge");

    const FactorialSeries exp = system_expansion(sys, order);
    const Matrix& a0 = sys.a0;
    const Matrix zero = Matrix::Zero(n, n);

    // Rescaled frame: Abar_s = A_s / h^s (missing coefficients are zero).
    std::vector<Matrix> abar(order + 1, zero);
    abar[0] = a0;
    {
        double hp = 1.0;
        for (std::size_t s = 1; s <= order; ++s) {
            hp /= h;
            if (s < exp.coeffs.size()) abar[s] = exp.coeffs[s] * hp;
        }
    }

    const SylvesterSolver solver(a0);
    const auto fact = factorial_table(order);
    std::vector<Matrix> fbar(order + 1, zero);
    fbar[0] = identity(n);

    if (sys.orientation == Orientation::Plus) {
        Matrix tail = zero; // T_s, translation tail of F
        for (std::size_t s = 1; s <= order; ++s) {
            Matrix rhs = -abar[s] + tail * a0;
            for (std::size_t j = 1; j + 1 <= s; ++j)
                for (std::size_t l = 1; l + j <= s; ++l) {
                    const int k = static_cast<int>(s - j - l);
                    rhs -= product_weight(fact, static_cast<int>(j), k, static_cast<int>(l)) *
                           (abar[j] * fbar[l]);
                }
            fbar[s] = solver.solve(static_cast<double>(s), rhs);
            tail = static_cast<double>(s) * (tail + fbar[s]);
        }
    } else {
        Matrix tail_g = zero; // T^G_s
        Matrix tail_w = zero; // T^W_s, W = M * G
        for (std::size_t s = 1; s <= order; ++s) {
            Matrix conv = zero;
            for (std::size_t j = 1; j + 1 <= s; ++j)
                for (std::size_t l = 1; l + j <= s; ++l) {
                    const int k = static_cast<int>(s - j - l);
                    conv += product_weight(fact, static_cast<int>(j), k, static_cast<int>(l)) *
                            (abar[j] * fbar[l]);
                }
            const Matrix rhs = -(abar[s] + tail_g + tail_w + conv);
            fbar[s] = solver.solve(static_cast<double>(s), rhs);
            const Matrix w_s = a0 * fbar[s] + abar[s] + conv;
            tail_g = static_cast<double>(s) * (tail_g + fbar[s]);
            tail_w = static_cast<double>(s) * (tail_w + w_s);
        }
    }

    FactorialSeries out;
    out.h = h;
    out.coeffs.resize(order + 1);
    {
        double hp = 1.0;
        out.coeffs[0] = fbar[0];
        for (std::size_t s = 1; s <= order; ++s) {
            hp *= h;
            out.coeffs[s] = fbar[s] * hp;
        }
    }

    if (exp.cert) {
        const double bbar = operator_k_bound(a0, static_cast<int>(order));
        const double lambda =
            exp.cert->lambda + 3.0 * exp.cert->C * bbar + h * norm_rowsum(a0);
        // The empirical covering constant is sound only while the rising
        // factorials it divides by stay finite.
        if (std::isfinite(rising_factorial(lambda, static_cast<int>(order) + 1, h)))
            out.cert = empirical_certificate(out.coeffs, lambda, h);
    }
    return out;
}

CanonicalSolution canonical_solution(const DifferenceSystem& sys, std::size_t order) {
    CanonicalSolution sol;
    sol.system = sys;
    sol.spec = system_spectral(sys);
    sol.gauge = gauge_series(sys, order);
    sol.kind = sys.orientation == Orientation::Plus ? CharacterKind::PlusInfinity
                                                    : CharacterKind::MinusInfinity;
    if (!sol.gauge.cert)
        throw ValidationError(
            "canonical_solution: the gauge series carries no certificate (input expansion "
            "was uncertified or its growth scale overflows)");
    sol.halfplane = sol.gauge.cert->lambda + 1.0;

    double r = sol.halfplane + 1e-6;
    while (certified_tail(*sol.gauge.cert, sys.h, sol.gauge.order(), r) > kSeedTailTarget) {
        r += 0.25;
        if (r > sol.halfplane + 1e6)
            throw ConvergenceError(
                "canonical_solution: certified tail does not reach 1e-12 at any practical "
                "abscissa; raise the truncation order");
    }
    sol.seed_abscissa = r;

    if (sol.gauge.cert->lambda > kWarnLambda) {
        std::ostringstream os;
        os << "certified half-plane begins at Re x > " << sol.halfplane
           << "; evaluations and continuations may be impractical";
        sol.warning = os.str();
    }
    return sol;
}

Matrix evaluate_solution(const CanonicalSolution& sol, Complex x) {
    const Complex arg = sol.kind == CharacterKind::PlusInfinity ? x : -x;
    const EvalResult ev = evaluate(sol.gauge, arg);
    return ev.value * matrix_character(sol.spec, sol.kind, sol.system.h, x);
}

Matrix continue_to(const CanonicalSolution& sol, Complex x) {
    const double h = sol.system.h;
    const auto gates = gate_points(sol.system);
    if (sol.kind == CharacterKind::PlusInfinity) {
        const long m = static_cast<long>(std::ceil((sol.seed_abscissa - x.real()) / h));
        if (m <= 0) return evaluate_solution(sol, x);
        if (m > kMaxSteps) throw PathError("continue_to: target too far from the certified seed");
        const Complex seed = x + Complex(static_cast<double>(m) * h, 0.0);
        Matrix y = evaluate_solution(sol, seed);
        for (long j = m; j >= 1; --j) {
            const Complex t = x + Complex(static_cast<double>(j) * h, 0.0);
            y = step_left(sol.system, gates, t, y);
        }
        return y;
    }
    const long m = static_cast<long>(std::ceil((x.real() + sol.seed_abscissa) / h));
    if (m <= 0) return evaluate_solution(sol, x);
    if (m > kMaxSteps) throw PathError("continue_to: target too far from the certified seed");
    const Complex seed = x - Complex(static_cast<double>(m) * h, 0.0);
    Matrix y = evaluate_solution(sol, seed);
    for (long j = m - 1; j >= 0; --j) {
        const Complex t = x - Complex(static_cast<double>(j) * h, 0.0);
        y = step_right(sol.system, gates, t, y);
    }
    return y;
}

Matrix continue_solution(const CanonicalSolution& sol, Complex x,
                         const std::vector<Complex>& path) {
    if (path.empty()) throw ValidationError("continue_solution: empty path");
    if (std::abs(path.back() - x) > 1e-9 * std::max(1.0, std::abs(x)))
        throw ValidationError("continue_solution: path does not end at the target point");
    const double h = sol.system.h;
    const auto certified = [&](Complex p) {
        const double re = sol.kind == CharacterKind::PlusInfinity ? p.real() : -p.real();
        return re > sol.halfplane;
    };
    if (!certified(path.front()))
        throw PathError(
            "continue_solution: certified seed unreachable; the path must start in the "
            "certified half-plane");
    const auto gates = gate_points(sol.system);
    Matrix y = evaluate_solution(sol, path.front());
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const Complex a = path[i];
        const Complex b = path[i + 1];
        const Complex d = b - a;
        if (std::abs(d - Complex(h, 0.0)) <= 1e-9 * h) {
            y = step_right(sol.system, gates, b, y);
        } else if (std::abs(d + Complex(h, 0.0)) <= 1e-9 * h) {
            y = step_left(sol.system, gates, a, y);
        } else if (std::abs(d.real()) <= 1e-12 * std::max(1.0, std::abs(a.real())) &&
                   d.imag() != 0.0) {
            if (!certified(a) || !certified(b))
                throw PathError("continue_solution: vertical leg outside the certified half-plane");
            y = evaluate_solution(sol, b);
        } else {
            throw ValidationError(
                "continue_solution: step must be +-h along the real direction or a vertical "
                "re-seeding leg");
        }
    }
    return y;
}

double residual(const DifferenceSystem& sys, const std::function<Matrix(Complex)>& y, Complex x) {
    const Matrix yx = y(x);
    const Matrix ym = y(x - Complex(sys.h, 0.0));
    const Complex factor = (x - Complex(sys.h, 0.0)) / sys.h;
    const Matrix r = factor * (yx - ym) - system_value(sys, x) * yx;
    return norm_rowsum(r) / std::max(1.0, norm_rowsum(yx));
}

} // namespace conflux
