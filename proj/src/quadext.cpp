#include "wseshadri/quadext.hpp"

#include <cmath>

namespace wseshadri {

std::pair<Integer, Integer> squarefree_decompose(const Integer& m) {
    require(sgn(m) > 0, "BadRadicand", "radicand must be positive");
    const unsigned long bound = 1000000;
    Integer rest = m;
    Integer square_part = 1;
    Integer free_part = 1;
    for (unsigned long p = 2; p <= bound; p = (p == 2 ? 3 : p + 2)) {
        if (Integer(p) * p > rest) break;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
            rest /= p;
            ++e;
        }
        for (unsigned long i = 0; i + 1 < e; i += 2) square_part *= p;
        if (e % 2 == 1) free_part *= p;
    }
    // rest now has no prime factor <= 10^6.
    if (rest > 1) {
        if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
            Integer s;
            mpz_sqrt(s.get_mpz_t(), rest.get_mpz_t());
            square_part *= s;
        } else {
            // Not a perfect square and all factors > 10^6: square-free unless
            // rest >= 10^18, which we refuse to guess about.
            Integer limit("1000000000000000000");
            require(rest < limit, "RadicandTooLarge",
                    "cannot certify square-free part of " + rest.get_str());
            free_part *= rest;
        }
    }
    return {square_part, free_part};
}

QuadExt quad(const Rational& a, const Rational& b, const Integer& n) {
    require(sgn(n) > 0, "BadRadicand", "radicand must be positive");
    if (sgn(b) == 0) return QuadExt{a, Rational(0), Integer(1)};
    auto [s, f] = squarefree_decompose(n);
    if (f == 1) {
        // sqrt(n) = s is rational: fold into a.
        Rational folded = a + b * Rational(s);
        return QuadExt{folded, Rational(0), Integer(1)};
    }
    return QuadExt{a, b * Rational(s), f};
}

QuadExt quad_from_rat(const Rational& r) { return QuadExt{r, Rational(0), Integer(1)}; }

namespace {

Integer common_radicand(const QuadExt& x, const QuadExt& y) {
    if (x.is_rational()) return y.n;
    if (y.is_rational()) return x.n;
    require(x.n == y.n, "MixedRadicand",
            "cannot combine sqrt(" + x.n.get_str() + ") with sqrt(" + y.n.get_str() + ")");
    return x.n;
}

} // namespace

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    Integer n = common_radicand(x, y);
    Rational b = x.b + y.b;
    if (sgn(b) == 0) return QuadExt{x.a + y.a, Rational(0), Integer(1)};
    return QuadExt{x.a + y.a, b, n};
}

QuadExt operator-(const QuadExt& x) { return QuadExt{-x.a, -x.b, x.n}; }

QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Integer n = common_radicand(x, y);
    Rational a = x.a * y.a + x.b * y.b * Rational(n);
    Rational b = x.a * y.b + x.b * y.a;
    if (sgn(b) == 0) return QuadExt{a, Rational(0), Integer(1)};
    return QuadExt{a, b, n};
}

int quad_sign(const QuadExt& x) {
    int sa = sgn(x.a), sb = sgn(x.b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| vs |b| sqrt(n) decided by a^2 vs b^2 n.
    Rational lhs = x.a * x.a;
    Rational rhs = x.b * x.b * Rational(x.n);
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return (c > 0) ? sa : sb;
}

int quad_cmp(const QuadExt& x, const QuadExt& y) {
    if (x.is_rational() || y.is_rational() || x.n == y.n)
        return quad_sign(x - y);
    // Different radicands: decide sign of (x.a - y.a) + x.b sqrt(m) - y.b sqrt(k).
    QuadExt lhs{x.a - y.a, x.b, x.n};
    int sL = quad_sign(lhs);
    int sR = sgn(y.b);
    if (sL >= 0 && sR <= 0) return (sL == 0 && sR == 0) ? 0 : +1;
    if (sL <= 0 && sR >= 0) return (sL == 0 && sR == 0) ? 0 : -1;
    // Same strict sign: compare squares (one radical survives).
    QuadExt lhs_sq = lhs * lhs; // rational + radical in x.n
    Rational rhs_sq = y.b * y.b * Rational(y.n);
    int d = quad_sign(lhs_sq - quad_from_rat(rhs_sq));
    return (sL > 0) ? d : -d;
}

std::pair<QuadExt, QuadExt> quad_roots(const Rational& A, const Rational& B,
                                       const Rational& C) {
    require(sgn(A) != 0, "ZeroLeadingCoefficient", "quadratic requires A != 0");
    Rational disc = B * B - 4 * A * C;
    require(sgn(disc) >= 0, "NegativeDiscriminant", "discriminant is negative");
    // sqrt(p/q) = sqrt(p q)/q; reduce p q to s^2 f.
    Integer pq = disc.get_num() * disc.get_den();
    auto [s, f] = squarefree_decompose(pq == 0 ? Integer(1) : pq);
    Rational root_coeff = (pq == 0) ? Rational(0) : Rational(s) / Rational(disc.get_den());
    QuadExt r1 = quad(-B / (2 * A), -root_coeff / (2 * A), f);
    QuadExt r2 = quad(-B / (2 * A), root_coeff / (2 * A), f);
    if (quad_cmp(r1, r2) <= 0) return {r1, r2};
    return {r2, r1};
}

QuadExt quad_eval_poly(const std::vector<Rational>& coeffs, const QuadExt& x) {
    QuadExt acc = quad_from_rat(Rational(0));
    for (const Rational& c : coeffs)
        acc = acc * x + quad_from_rat(c);
    return acc;
}

double quad_double(const QuadExt& x) {
    return rat_double(x.a) + rat_double(x.b) * std::sqrt(x.n.get_d());
}

std::string quad_str(const QuadExt& x) {
    return "(" + rat_str(x.a) + ")+(" + rat_str(x.b) + ")*sqrt(" + x.n.get_str() + ")";
}

QuadExt quad_parse(const std::string& text) {
    if (text.empty()) fail("BadQuadExt", "empty quadratic-irrational literal");
    if (text.front() != '(') return quad_from_rat(rat_parse(text));
    auto close_a = text.find(')');
    auto open_b = text.find('(', close_a);
    auto close_b = text.find(')', open_b);
    auto sqrt_pos = text.find("sqrt(", close_b);
    auto close_n = text.rfind(')');
    if (close_a == std::string::npos || open_b == std::string::npos ||
        close_b == std::string::npos || sqrt_pos == std::string::npos ||
        close_n <= sqrt_pos)
        fail("BadQuadExt", "cannot parse '" + text + "'");
    Rational a = rat_parse(text.substr(1, close_a - 1));
    Rational b = rat_parse(text.substr(open_b + 1, close_b - open_b - 1));
    Integer n(text.substr(sqrt_pos + 5, close_n - sqrt_pos - 5));
    return quad(a, b, n);
}

} // namespace wseshadri
