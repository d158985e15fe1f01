#pragma once
/*
 * Polynomials and matrices of rational functions.
 *
 * Polynomials store ascending complex coefficients (p[k] is the coefficient
 * of x^k).  A RationalMatrix is an n x n grid of numerator/denominator pairs;
 * it is "proper" (holomorphic at infinity) when every entry has
 * deg num <= deg den, the admissibility condition for difference-system
 * input.  Poles are the union of denominator roots over all entries, merged
 * within a small tolerance and carrying the largest multiplicity observed —
 * a conservative set (common factors are not cancelled), which is the right
 * direction for every bound built on top of it.
 */
#include <vector>

#include "conflux/types.hpp"

namespace conflux {

using Polynomial = std::vector<Complex>; // ascending: p[k] x^k

Complex poly_eval(const Polynomial& p, Complex x);
int poly_degree(const Polynomial& p); // -1 for the zero polynomial
Polynomial poly_trim(const Polynomial& p); // drop exact-zero leading coeffs
Polynomial poly_neg_arg(const Polynomial& p);              // x -> -x
Polynomial poly_scale_arg(const Polynomial& p, Complex a); // x -> a x
std::vector<Complex> poly_roots(const Polynomial& p); // companion matrix

struct PoleData {
    Complex location;
    int multiplicity = 1;
};

struct RationalEntry {
    Polynomial num;
    Polynomial den;
};

struct RationalMatrix {
    int n = 0;
    std::vector<std::vector<RationalEntry>> entries; // [row][col]

    Matrix value(Complex x) const;     // PoleError on a denominator zero
    Matrix value_at_infinity() const;  // requires properness
    bool is_proper() const;
    std::vector<PoleData> poles() const;
    RationalMatrix substitute_neg() const;            // R(-x)
    RationalMatrix substitute_scale(Complex a) const; // R(a x)
};

// Convenience constructor for an n x n matrix of zero entries (num = 0,
// den = 1).
RationalMatrix rational_zero(int n);

// Power-series coefficients at infinity of a proper rational matrix:
// R(x) = C_0 + C_1 x^{-1} + ... + C_order x^{-order},  computed entrywise by
// reversed-polynomial series division.  ValidationError on improper input.
std::vector<Matrix> power_expansion(const RationalMatrix& r, std::size_t order);

} // namespace conflux
