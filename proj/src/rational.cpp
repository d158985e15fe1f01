/*
 * Polynomial utilities and rational-matrix operations.
 *
 * Root finding goes through the Frobenius companion matrix of the
 * monic-normalized polynomial; eigenvalues are computed with Eigen's complex
 * Schur-based solver.  Pole lists merge roots that agree within an absolute
 * + relative tolerance and keep, per merged location, the largest
 * multiplicity seen in any single entry.
 */
#include "conflux/rational.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "conflux/errors.hpp"

namespace conflux {

namespace {

constexpr double kPoleMergeTol = 1e-9;

bool is_exact_zero(const Complex& c) { return c.real() == 0.0 && c.imag() == 0.0; }

} // namespace

Complex poly_eval(const Polynomial& p, Complex x) {
    Complex acc(0.0, 0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int poly_degree(const Polynomial& p) {
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
        if (!is_exact_zero(p[static_cast<std::size_t>(k)])) return k;
    return -1;
}

Polynomial poly_trim(const Polynomial& p) {
    int d = poly_degree(p);
    if (d < 0) return Polynomial{};
    return Polynomial(p.begin(), p.begin() + d + 1);
}

Polynomial poly_neg_arg(const Polynomial& p) {
    Polynomial q = p;
    for (std::size_t k = 1; k < q.size(); k += 2) q[k] = -q[k];
    return q;
}

Polynomial poly_scale_arg(const Polynomial& p, Complex a) {
    Polynomial q = p;
    Complex pw(1.0, 0.0);
    for (std::size_t k = 0; k < q.size(); ++k) {
        q[k] *= pw;
        pw *= a;
    }
    return q;
}

std::vector<Complex> poly_roots(const Polynomial& p) {
    Polynomial q = poly_trim(p);
    int d = poly_degree(q);
    if (d <= 0) return {};
    if (d == 1) return {-q[0] / q[1]};
    Matrix companion = Matrix::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = Complex(1.0, 0.0);
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -q[static_cast<std::size_t>(i)] / q[static_cast<std::size_t>(d)];
    Eigen::ComplexEigenSolver<Matrix> solver(companion, /*computeEigenvectors=*/false);
    std::vector<Complex> roots(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return roots;
}

Matrix RationalMatrix::value(Complex x) const {
    Matrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const RationalEntry& e = entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            Complex den = poly_eval(e.den, x);
            if (std::abs(den) < 1e-300)
                throw PoleError("rational matrix evaluated at a denominator zero");
            out(i, j) = poly_eval(e.num, x) / den;
        }
    }
    return out;
}

Matrix RationalMatrix::value_at_infinity() const {
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const RationalEntry& e = entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            int dn = poly_degree(e.num);
            int dd = poly_degree(e.den);
            if (dd < 0) throw ValidationError("rational entry has zero denominator");
            if (dn > dd) throw ValidationError("rational entry is not proper");
            if (dn == dd && dn >= 0)
                out(i, j) = e.num[static_cast<std::size_t>(dn)] / e.den[static_cast<std::size_t>(dd)];
        }
    }
    return out;
}

bool RationalMatrix::is_proper() const {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const RationalEntry& e = entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (poly_degree(e.den) < 0) return false;
            if (poly_degree(e.num) > poly_degree(e.den)) return false;
        }
    }
    return true;
}

std::vector<PoleData> RationalMatrix::poles() const {
    std::vector<PoleData> merged;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const RationalEntry& e = entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            std::vector<Complex> roots = poly_roots(e.den);
            // Multiplicity of each root within this entry.
            std::vector<char> used(roots.size(), 0);
            for (std::size_t a = 0; a < roots.size(); ++a) {
                if (used[a]) continue;
                int mult = 1;
                used[a] = 1;
                for (std::size_t b = a + 1; b < roots.size(); ++b) {
                    if (used[b]) continue;
                    double tol = kPoleMergeTol * std::max(1.0, std::abs(roots[a]));
                    if (std::abs(roots[a] - roots[b]) <= tol) {
                        used[b] = 1;
                        ++mult;
                    }
                }
                bool found = false;
                for (PoleData& p : merged) {
                    double tol = kPoleMergeTol * std::max(1.0, std::abs(p.location));
                    if (std::abs(p.location - roots[a]) <= tol) {
                        p.multiplicity = std::max(p.multiplicity, mult);
                        found = true;
                        break;
                    }
                }
                if (!found) merged.push_back(PoleData{roots[a], mult});
            }
        }
    }
    std::sort(merged.begin(), merged.end(), [](const PoleData& a, const PoleData& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return merged;
}

RationalMatrix RationalMatrix::substitute_neg() const {
    RationalMatrix out = *this;
    for (auto& row : out.entries) {
        for (auto& e : row) {
            e.num = poly_neg_arg(e.num);
            e.den = poly_neg_arg(e.den);
        }
    }
    return out;
}

RationalMatrix RationalMatrix::substitute_scale(Complex a) const {
    RationalMatrix out = *this;
    for (auto& row : out.entries) {
        for (auto& e : row) {
            e.num = poly_scale_arg(e.num, a);
            e.den = poly_scale_arg(e.den, a);
        }
    }
    return out;
}

RationalMatrix rational_zero(int n) {
    if (n <= 0) throw ValidationError("rational matrix dimension must be positive");
    RationalMatrix r;
    r.n = n;
    r.entries.assign(static_cast<std::size_t>(n),
                     std::vector<RationalEntry>(
                         static_cast<std::size_t>(n),
                         RationalEntry{Polynomial{Complex(0.0, 0.0)}, Polynomial{Complex(1.0, 0.0)}}));
    return r;
}

std::vector<Matrix> power_expansion(const RationalMatrix& r, std::size_t order) {
    if (r.n <= 0) throw ValidationError("power_expansion: empty matrix");
    if (!r.is_proper())
        throw ValidationError("power_expansion: matrix has an entry with deg num > deg den");
    const int n = r.n;
    std::vector<Matrix> pow_coeff(order + 1, Matrix::Zero(n, n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const RationalEntry& e =
                r.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const Polynomial num = poly_trim(e.num);
            const Polynomial den = poly_trim(e.den);
            const int dn = poly_degree(num);
            const int dd = poly_degree(den);
            if (dn < 0) continue; // zero entry
            const int shift = dd - dn;
            if (static_cast<std::size_t>(shift) > order) continue;
            // q(t) = n*(t)/d*(t) with reversed coefficient lists; the entry is
            // t^shift q(t) at t = 1/x.
            const std::size_t qlen = order - static_cast<std::size_t>(shift) + 1;
            std::vector<Complex> q(qlen, Complex(0.0, 0.0));
            auto nrev = [&](std::size_t k) {
                return k <= static_cast<std::size_t>(dn) ? num[static_cast<std::size_t>(dn) - k]
                                                         : Complex(0.0, 0.0);
            };
            auto drev = [&](std::size_t k) {
                return k <= static_cast<std::size_t>(dd) ? den[static_cast<std::size_t>(dd) - k]
                                                         : Complex(0.0, 0.0);
            };
            for (std::size_t k = 0; k < qlen; ++k) {
                Complex acc = nrev(k);
                for (std::size_t m = 0; m < k; ++m) acc -= q[m] * drev(k - m);
                q[k] = acc / drev(0);
            }
            for (std::size_t p = static_cast<std::size_t>(shift); p <= order; ++p)
                pow_coeff[p](i, j) = q[p - static_cast<std::size_t>(shift)];
        }
    }
    return pow_coeff;
}

} // namespace conflux
