#include "wseshadri/toricfan.hpp"

namespace wseshadri {

namespace {

Integer vec_gcd(const std::vector<Integer>& v) {
    Integer g = 0;
    for (const Integer& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

} // namespace

WeightVector weight_vector(std::vector<Integer> entries) {
    require(entries.size() >= 2, "BadWeights", "weight vector needs n >= 2");
    for (const Integer& x : entries)
        require(sgn(x) > 0, "BadWeights", "weight entries must be positive");
    require(vec_gcd(entries) == 1, "NonPrimitive",
            "weight vector entries must be coprime");
    return WeightVector{std::move(entries)};
}

CartierData cartier_data(const WeightVector& a) {
    const std::size_t n = a.a.size();
    Integer prod = 1;
    for (const Integer& x : a.a) prod *= x;
    CartierData cd;
    cd.m.assign(n, std::vector<Integer>(n, 0));
    for (std::size_t j = 0; j < n; ++j) cd.m[j][j] = -prod / a.a[j];
    return cd;
}

Rational exc_dot_toric(const WeightVector& a, std::size_t i, std::size_t j) {
    const std::size_t n = a.a.size();
    require(1 <= i && i <= n && 1 <= j && j <= n && i != j, "BadIndex",
            "need distinct 1-based indices i, j in 1..n");
    const Integer &ai = a.a[i - 1], &aj = a.a[j - 1];

    Integer g, l;
    mpz_gcd(g.get_mpz_t(), ai.get_mpz_t(), aj.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), ai.get_mpz_t(), aj.get_mpz_t());
    Rational closed = Rational(-1) / Rational(l);

    // Bezout route: u with a_j u_i - a_i u_j = gcd(a_i, a_j), taken with the
    // minimal nonnegative u_i; then (m_{sigma_i} - m_{sigma_j}) . u / prod a.
    Integer s, t; // s*a_j + t*a_i = g
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), aj.get_mpz_t(),
               ai.get_mpz_t());
    Integer ui = s, uj = -t;
    // Shift by (a_i/g, a_j/g) to make u_i the minimal nonnegative solution.
    Integer stepi = ai / g, stepj = aj / g;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), ui.get_mpz_t(), stepi.get_mpz_t());
    ui -= q * stepi;
    uj -= q * stepj;

    CartierData cd = cartier_data(a);
    Integer prod = 1;
    for (const Integer& x : a.a) prod *= x;
    Integer dot = cd.m[i - 1][i - 1] * ui - cd.m[j - 1][j - 1] * uj;
    Rational bezout = Rational(dot) / Rational(prod);

    require(bezout == closed, "ChainInvariant",
            "Cartier/Bezout route disagrees with -1/lcm");
    return closed;
}

bool polytope_contains(const Polytope& p, const std::vector<Rational>& x) {
    for (const HalfSpace& h : p.halfspaces) {
        require(h.c.size() == x.size(), "BadParams",
                "point dimension mismatch");
        Rational dot(0);
        for (std::size_t k = 0; k < x.size(); ++k) dot += h.c[k] * x[k];
        if (dot > h.rhs) return false;
    }
    return true;
}

MomentPolytopes moment_polytopes(const WeightVector& a, const Rational& R) {
    require(sgn(R) > 0, "NonPositive", "R must be positive");
    const std::size_t n = a.a.size();
    const Rational half = R / 2;

    std::vector<HalfSpace> orthant;
    for (std::size_t k = 0; k < n; ++k) {
        HalfSpace h;
        h.c.assign(n, Rational(0));
        h.c[k] = -1;
        h.rhs = 0;
        orthant.push_back(std::move(h));
    }
    HalfSpace below; // a . mu <= R/2
    below.c.reserve(n);
    for (const Integer& x : a.a) below.c.emplace_back(x);
    below.rhs = half;
    HalfSpace above = below; // -a . mu <= -R/2
    for (Rational& c : above.c) c = -c;
    above.rhs = -half;

    MomentPolytopes mp;
    mp.delta = Polytope{"Delta", orthant};
    mp.delta.halfspaces.push_back(below);
    mp.lambda = Polytope{"Lambda", orthant};
    mp.lambda.halfspaces.push_back(below);
    mp.lambda.halfspaces.push_back(above);
    mp.p_y = Polytope{"P_Y", orthant};
    mp.p_y.halfspaces.push_back(above);

    if (n == 2) {
        Integer l;
        mpz_lcm(l.get_mpz_t(), a.a[0].get_mpz_t(), a.a[1].get_mpz_t());
        mp.lambda_face_lengths.push_back(R / (2 * Rational(l)));
    }
    return mp;
}

json polytope_to_json(const Polytope& p) {
    json j;
    j["name"] = p.name;
    json hs = json::array();
    for (const HalfSpace& h : p.halfspaces) {
        json row;
        json c = json::array();
        for (const Rational& v : h.c) c.push_back(rat_str(v));
        row["c"] = c;
        row["rhs"] = rat_str(h.rhs);
        hs.push_back(std::move(row));
    }
    j["halfspaces"] = hs;
    return j;
}

json moment_polytopes_to_json(const MomentPolytopes& mp) {
    json j;
    j["delta"] = polytope_to_json(mp.delta);
    j["lambda"] = polytope_to_json(mp.lambda);
    j["p_y"] = polytope_to_json(mp.p_y);
    json lens = json::array();
    for (const Rational& v : mp.lambda_face_lengths) lens.push_back(rat_str(v));
    j["lambda_face_lengths"] = lens;
    return j;
}

} // namespace wseshadri
