#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wseshadri/rational.hpp"

namespace wseshadri {

/* Exact quadratic irrational a + b*sqrt(n) with n a square-free positive
 * integer. Radicands are reduced at construction so equality is canonical;
 * rational values always carry n = 1 and b = 0. Arithmetic combines values
 * with equal n (or pure rationals) only. */
struct QuadExt {
    Rational a{0};
    Rational b{0};
    Integer n{1};

    bool is_rational() const { return sgn(b) == 0; }

    bool operator==(const QuadExt& other) const {
        return a == other.a && b == other.b && n == other.n;
    }
};

/* Square-free decomposition m = s^2 * f with f square-free; returns (s, f).
 * Trial division up to 10^6, then a perfect-square check on the cofactor;
 * anything this cannot settle would exceed 10^18 and is rejected. */
std::pair<Integer, Integer> squarefree_decompose(const Integer& m);

/* Canonicalizing constructor (reduces the radicand, folds rational cases). */
QuadExt quad(const Rational& a, const Rational& b, const Integer& n);
QuadExt quad_from_rat(const Rational& r);

QuadExt operator+(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x, const QuadExt& y);
QuadExt operator-(const QuadExt& x);
QuadExt operator*(const QuadExt& x, const QuadExt& y);

/* Exact sign of a + b*sqrt(n), via case analysis and a^2 vs b^2 n. */
int quad_sign(const QuadExt& x);

/* Exact three-way comparison; supports different radicands by sign analysis
 * plus one squaring step (which reduces two radicals to one). */
int quad_cmp(const QuadExt& x, const QuadExt& y);

/* Roots of A x^2 + B x + C = 0, smaller first. Throws NegativeDiscriminant. */
std::pair<QuadExt, QuadExt> quad_roots(const Rational& A, const Rational& B,
                                       const Rational& C);

/* Polynomial evaluation, coefficients highest-degree first. */
QuadExt quad_eval_poly(const std::vector<Rational>& coeffs, const QuadExt& x);

double quad_double(const QuadExt& x);

/* "(p/q)+(p/q)*sqrt(n)"; parse also accepts a bare rational. */
std::string quad_str(const QuadExt& x);
QuadExt quad_parse(const std::string& text);

} // namespace wseshadri
