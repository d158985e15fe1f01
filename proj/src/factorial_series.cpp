/*
 * Factorial-series arithmetic.
 *
 * Product coefficients (step h, basis x^{-[s]_h}):
 *   C_0 = A_0 B_0
 *   C_s = A_0 B_s + A_s B_0
 *         + sum_{j,l>=1, k>=0, j+k+l=s} c^{(k)}_{j,l} h^k A_j B_l,
 *   c^{(k)}_{j,l} = (j+k-1)! (l+k-1)! / ( k! (j-1)! (l-1)! ).
 *
 * Translation B(x) = A(x-h):
 *   B_0 = A_0,  B_s = A_s + T_s,  T_1 = 0,  T_{s+1} = s h (T_s + A_s).
 *
 * Inversion solves A B = I coefficient by coefficient:
 *   B_0 = A_0^{-1},
 *   B_s = -A_0^{-1} ( A_s B_0 + sum_{j+k+l=s} c^{(k)}_{j,l} h^k A_j B_l ).
 *
 * Rational expansion: per entry, the power-series coefficients at infinity
 * come from reversed-polynomial series division; the basis change
 *   x^{-p} = sum_{s>=p} c(s-1, p-1) h^{s-p} x^{-[s]_h}
 * with unsigned Stirling cycle numbers c(m, k) gives
 *   A_s = sum_{p=1}^{s} P_p h^{s-p} c(s-1, p-1).
 * The Stirling recurrence is pure non-negative integer arithmetic, so
 * expansions of 1/x^p with h = 1 are bit-exact while values stay below 2^53.
 *
 * Certified truncation tail: with ||A_s|| <= C L^{[s-1]_h} and R = Re x > L,
 *   sum_{s>N} L^{[s-1]_h} / R^{[s]_h}
 * telescopes in closed form (via u_s = G(a+s)/G(b+s-1) differences) to
 *   t_{N+1} (R + N h) / (R - L),   t_{N+1} = L^{[N]_h} / R^{[N+1]_h},
 * evaluated in log space.
 */
#include "conflux/factorial_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "conflux/errors.hpp"

namespace conflux {

namespace {

bool same_step(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

void validate_series(const FactorialSeries& a, const char* who) {
    if (a.coeffs.empty()) throw ValidationError(std::string(who) + ": empty coefficient list");
    if (!(a.h > 0.0)) throw ValidationError(std::string(who) + ": step h must be positive");
    const int n = a.n();
    for (const Matrix& m : a.coeffs)
        if (m.rows() != n || m.cols() != n)
            throw ValidationError(std::string(who) + ": ragged coefficient dimensions");
}

// Unsigned Stirling cycle numbers c(m, k), rows m = 0..top.
std::vector<std::vector<double>> stirling_cycle_table(std::size_t top) {
    std::vector<std::vector<double>> c(top + 1);
    c[0] = {1.0};
    for (std::size_t m = 1; m <= top; ++m) {
        c[m].assign(m + 1, 0.0);
        for (std::size_t k = 1; k <= m; ++k) c[m][k] = c[m - 1][k - 1];
        for (std::size_t k = 0; k < m; ++k) c[m][k] += static_cast<double>(m - 1) * c[m - 1][k];
    }
    return c;
}

} // namespace

std::vector<double> factorial_table(std::size_t top) {
    std::vector<double> f(top + 1, 1.0);
    for (std::size_t m = 1; m <= top; ++m) f[m] = f[m - 1] * static_cast<double>(m);
    return f;
}

double product_weight(const std::vector<double>& fact, int j, int k, int l) {
    double binom = fact[static_cast<std::size_t>(j + k - 1)] /
                   (fact[static_cast<std::size_t>(j - 1)] * fact[static_cast<std::size_t>(k)]);
    double rise = fact[static_cast<std::size_t>(l + k - 1)] / fact[static_cast<std::size_t>(l - 1)];
    return binom * rise;
}

double rising_factorial(double lambda, int m, double h) {
    double out = 1.0;
    for (int j = 0; j < m; ++j) out *= lambda + static_cast<double>(j) * h;
    return out;
}

double certified_tail(const Certificate& cert, double h, std::size_t order, double re_x) {
    if (cert.C == 0.0) return 0.0;
    if (re_x <= cert.lambda) return std::numeric_limits<double>::infinity();
    if (cert.lambda == 0.0 && order >= 1) return 0.0;
    const auto n = static_cast<double>(order);
    double log_t = 0.0;
    for (std::size_t j = 0; j < order; ++j)
        log_t += std::log(cert.lambda + static_cast<double>(j) * h);
    for (std::size_t j = 0; j <= order; ++j)
        log_t -= std::log(re_x + static_cast<double>(j) * h);
    return cert.C * std::exp(log_t) * (re_x + n * h) / (re_x - cert.lambda);
}

Certificate empirical_certificate(const std::vector<Matrix>& coeffs, double lambda, double h) {
    double c = 0.0;
    for (std::size_t s = 1; s < coeffs.size(); ++s) {
        double nm = norm_rowsum(coeffs[s]);
        if (nm == 0.0) continue;
        double rf = rising_factorial(lambda, static_cast<int>(s) - 1, h);
        if (!(rf > 0.0))
            throw ValidationError("empirical certificate: lambda too small for nonzero coefficients");
        c = std::max(c, nm / rf);
    }
    return Certificate{c * (1.0 + 1e-9), lambda};
}

FactorialSeries expand_rational(const RationalMatrix& r, double h, std::size_t order) {
    if (r.n <= 0) throw ValidationError("expand_rational: empty matrix");
    if (!(h > 0.0)) throw ValidationError("expand_rational: step h must be positive");
    if (order < 1 || order > kMaxOrder)
        throw ValidationError("expand_rational: truncation order out of range [1, 128]");
    if (!r.is_proper())
        throw ValidationError("expand_rational: matrix has an entry with deg num > deg den");

    const int n = r.n;
    const Matrix a0 = r.value_at_infinity();

    // Power-series coefficients at infinity: pow_coeff[p](i, j) multiplies x^{-p}.
    const std::vector<Matrix> pow_coeff = power_expansion(r, order);

    const auto stir = stirling_cycle_table(order == 0 ? 0 : order - 1);
    std::vector<double> hpow(order + 1, 1.0);
    for (std::size_t k = 1; k <= order; ++k) hpow[k] = hpow[k - 1] * h;

    FactorialSeries out;
    out.h = h;
    out.coeffs.assign(order + 1, Matrix::Zero(n, n));
    out.coeffs[0] = a0;
    for (std::size_t s = 1; s <= order; ++s) {
        Matrix acc = Matrix::Zero(n, n);
        for (std::size_t p = 1; p <= s; ++p)
            acc += pow_coeff[p] * (hpow[s - p] * stir[s - 1][p - 1]);
        out.coeffs[s] = acc;
    }

    // Certificate from a Cauchy bound of R - A_0 on a circle past every pole.
    double rho = 0.0;
    for (const PoleData& p : r.poles()) rho = std::max(rho, std::abs(p.location));
    const double rad = 1.25 * rho + 0.25;
    double sup = 0.0;
    constexpr int kSamples = 720;
    for (int k = 0; k < kSamples; ++k) {
        double th = 2.0 * 3.14159265358979323846 * static_cast<double>(k) / kSamples;
        Complex x(rad * std::cos(th), rad * std::sin(th));
        sup = std::max(sup, norm_rowsum(r.value(x) - a0));
    }
    double cert_c = sup * 1.02 * rad;
    for (std::size_t s = 1; s <= order; ++s) {
        double nm = norm_rowsum(out.coeffs[s]);
        if (nm == 0.0) continue;
        cert_c = std::max(cert_c, nm / rising_factorial(rad, static_cast<int>(s) - 1, h));
    }
    out.cert = Certificate{cert_c * (1.0 + 1e-12), rad};
    return out;
}

FactorialSeries multiply(const FactorialSeries& a, const FactorialSeries& b) {
    validate_series(a, "multiply");
    validate_series(b, "multiply");
    if (a.n() != b.n()) throw ValidationError("multiply: dimension mismatch");
    if (!same_step(a.h, b.h)) throw ValidationError("multiply: step mismatch");

    const double h = a.h;
    const std::size_t order = std::min(a.order(), b.order());
    const auto fact = factorial_table(order == 0 ? 1 : order);
    std::vector<double> hpow(order + 1, 1.0);
    for (std::size_t k = 1; k <= order; ++k) hpow[k] = hpow[k - 1] * h;

    FactorialSeries out;
    out.h = h;
    out.coeffs.assign(order + 1, Matrix());
    out.coeffs[0] = a.coeffs[0] * b.coeffs[0];
    for (std::size_t s = 1; s <= order; ++s) {
        Matrix acc = a.coeffs[0] * b.coeffs[s] + a.coeffs[s] * b.coeffs[0];
        for (std::size_t j = 1; j + 1 <= s; ++j) {
            for (std::size_t l = 1; l <= s - j; ++l) {
                const std::size_t k = s - j - l;
                const double w = product_weight(fact, static_cast<int>(j), static_cast<int>(k),
                                                static_cast<int>(l)) *
                                 hpow[k];
                acc += w * (a.coeffs[j] * b.coeffs[l]);
            }
        }
        out.coeffs[s] = acc;
    }

    if (a.cert && b.cert) {
        double lambda = a.cert->lambda + b.cert->lambda +
                        std::max(norm_rowsum(a.coeffs[0]), norm_rowsum(b.coeffs[0]));
        if (lambda == 0.0) lambda = h; // degenerate all-constant operands
        out.cert = empirical_certificate(out.coeffs, lambda, h);
    }
    return out;
}

FactorialSeries translate(const FactorialSeries& a) {
    validate_series(a, "translate");
    const int n = a.n();
    const double h = a.h;
    FactorialSeries out;
    out.h = h;
    out.coeffs.assign(a.coeffs.size(), Matrix());
    out.coeffs[0] = a.coeffs[0];
    Matrix t = Matrix::Zero(n, n);
    for (std::size_t s = 1; s <= a.order(); ++s) {
        out.coeffs[s] = a.coeffs[s] + t;
        t = (static_cast<double>(s) * h) * (t + a.coeffs[s]);
    }
    if (a.cert) out.cert = empirical_certificate(out.coeffs, a.cert->lambda + h, h);
    return out;
}

FactorialSeries invert(const FactorialSeries& a) {
    validate_series(a, "invert");
    const double h = a.h;
    const std::size_t order = a.order();
    Eigen::FullPivLU<Matrix> lu(a.coeffs[0]);
    if (!lu.isInvertible())
        throw SingularMatrixError("invert: constant term is singular");
    const Matrix a0_inv = lu.inverse();

    const auto fact = factorial_table(order == 0 ? 1 : order);
    std::vector<double> hpow(order + 1, 1.0);
    for (std::size_t k = 1; k <= order; ++k) hpow[k] = hpow[k - 1] * h;

    FactorialSeries out;
    out.h = h;
    out.coeffs.assign(order + 1, Matrix());
    out.coeffs[0] = a0_inv;
    for (std::size_t s = 1; s <= order; ++s) {
        Matrix acc = a.coeffs[s] * out.coeffs[0];
        for (std::size_t j = 1; j + 1 <= s; ++j) {
            for (std::size_t l = 1; l <= s - j; ++l) {
                const std::size_t k = s - j - l;
                const double w = product_weight(fact, static_cast<int>(j), static_cast<int>(k),
                                                static_cast<int>(l)) *
                                 hpow[k];
                acc += w * (a.coeffs[j] * out.coeffs[l]);
            }
        }
        out.coeffs[s] = -(a0_inv * acc);
    }
    return out;
}

EvalResult evaluate(const FactorialSeries& a, Complex x) {
    validate_series(a, "evaluate");
    if (a.cert && x.real() <= a.cert->lambda + 1.0)
        throw DomainError("evaluate: Re x <= lambda + 1, outside the certified half-plane");

    const double h = a.h;
    Matrix value = a.coeffs[0];
    Complex w(1.0, 0.0);
    double last_terms[3] = {0.0, 0.0, 0.0};
    for (std::size_t s = 1; s <= a.order(); ++s) {
        Complex denom = x + Complex(static_cast<double>(s - 1) * h, 0.0);
        if (std::abs(denom) < 1e-12 * std::max(1.0, std::abs(x)))
            throw PoleError("evaluate: x lies on a factorial-power pole");
        w /= denom;
        value += a.coeffs[s] * w;
        last_terms[2] = last_terms[1];
        last_terms[1] = last_terms[0];
        last_terms[0] = norm_rowsum(a.coeffs[s]) * std::abs(w);
    }

    EvalResult out;
    out.value = value;
    if (a.cert)
        out.tail = certified_tail(*a.cert, h, a.order(), x.real());
    else
        out.tail = std::max({last_terms[0], last_terms[1], last_terms[2]});
    return out;
}

CoefficientLimit coefficient_limits(const std::vector<std::pair<double, FactorialSeries>>& family,
                                    std::size_t s) {
    if (family.size() < 2)
        throw ValidationError("coefficient_limits: need at least two family members");
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!(family[i].first > 0.0))
            throw ValidationError("coefficient_limits: steps must be positive");
        if (i > 0 && !(family[i].first < family[i - 1].first))
            throw ValidationError("coefficient_limits: steps must be strictly decreasing");
        if (s >= family[i].second.coeffs.size())
            throw ValidationError("coefficient_limits: coefficient index beyond truncation order");
        if (family[i].second.n() != family[0].second.n())
            throw ValidationError("coefficient_limits: dimension mismatch across family");
    }

    CoefficientLimit out;
    for (const auto& [h, series] : family) out.samples.push_back(series.coeffs[s]);

    const std::size_t last = out.samples.size() - 1;
    const double h1 = family[last - 1].first;
    const double h2 = family[last].first;
    out.limit = out.samples[last] +
                (h2 / (h1 - h2)) * (out.samples[last] - out.samples[last - 1]);

    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < out.samples.size(); ++i)
        diffs.push_back(norm_rowsum(out.samples[i + 1] - out.samples[i]));
    out.diverged = diffs.size() >= 2 && diffs.back() > 1.1 * diffs.front() + 1e-13;
    return out;
}

} // namespace conflux
