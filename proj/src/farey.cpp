#include "wseshadri/farey.hpp"

#include <algorithm>

namespace wseshadri {

namespace {

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

json json_int(const Integer& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

// Increasing slope y/x, with (1,0) first and (0,1) last.
bool slope_less(const PrimVec2& u, const PrimVec2& v) {
    return u.y * v.x < v.y * u.x;
}

} // namespace

Integer wedge(const PrimVec2& u, const PrimVec2& v) {
    return u.x * v.y - u.y * v.x;
}

FareyPath farey_path(const PrimVec2& target) {
    require(sgn(target.x) >= 0 && sgn(target.y) >= 0 &&
                !(target.x == 0 && target.y == 0),
            "BadTarget", "target must be a nonzero nonnegative vector");
    require(gcd(target.x, target.y) == 1, "NonPrimitive",
            "target coordinates must be coprime");
    require(target.x <= target.y, "SlopeBelowOne",
            "target must satisfy x <= y; swap coordinates first");
    require(sgn(target.x) > 0, "BadTarget", "target (0,1) is not a tree node");

    FareyPath path;
    path.target = target;
    PrimVec2 u{1, 0}, v{1, 1}, w{0, 1};
    while (!(v == target)) {
        if (wedge(v, target) > 0) { // target has larger slope: go right
            path.moves.push_back('R');
            u = v;
            v = PrimVec2{v.x + w.x, v.y + w.y};
        } else {
            path.moves.push_back('L');
            w = v;
            v = PrimVec2{u.x + v.x, u.y + v.y};
        }
    }
    return path;
}

Rational hj_cf_eval(const std::vector<Integer>& terms) {
    require(!terms.empty(), "BadContinuedFraction", "empty HJ continued fraction");
    Rational value(terms.back());
    for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) {
        require(sgn(value) != 0, "BadContinuedFraction", "division by zero tail");
        value = Rational(*it) - 1 / value;
    }
    return value;
}

std::vector<Rational> chain_solve_gammas(const std::vector<Integer>& b,
                                         std::size_t i1,
                                         const Rational& rhs_value) {
    const std::size_t m = b.size();
    require(m >= 1 && 1 <= i1 && i1 <= m, "BadIndex", "invalid chain solve input");
    std::vector<Rational> cp(m), dp(m);
    auto rhs = [&](std::size_t i) { // 1-based
        return (i == i1) ? rhs_value : Rational(0);
    };
    Rational denom = -Rational(b[0]);
    cp[0] = 1 / denom;
    dp[0] = rhs(1) / denom;
    for (std::size_t i = 1; i < m; ++i) {
        denom = -Rational(b[i]) - cp[i - 1];
        require(sgn(denom) != 0, "SingularChainMatrix", "tridiagonal pivot vanished");
        cp[i] = 1 / denom;
        dp[i] = (rhs(i + 1) - dp[i - 1]) / denom;
    }
    std::vector<Rational> gamma(m);
    gamma[m - 1] = dp[m - 1];
    for (std::size_t i = m - 1; i-- > 0;)
        gamma[i] = dp[i] - cp[i] * gamma[i + 1];
    return gamma;
}

ResolutionChain chain_from_weights(const PrimVec2& weights) {
    ResolutionChain chain;
    chain.weights = weights;

    std::vector<PrimVec2> middles;
    if (weights == PrimVec2{1, 1}) {
        middles.push_back(weights);
    } else {
        FareyPath path = farey_path(weights);
        PrimVec2 u{1, 0}, v{1, 1}, w{0, 1};
        middles.push_back(v);
        for (char mv : path.moves) {
            if (mv == 'R') {
                u = v;
                v = PrimVec2{v.x + w.x, v.y + w.y};
            } else {
                w = v;
                v = PrimVec2{u.x + v.x, u.y + v.y};
            }
            middles.push_back(v);
        }
    }
    std::sort(middles.begin(), middles.end(), slope_less);

    chain.rays.push_back(PrimVec2{1, 0});
    chain.rays.insert(chain.rays.end(), middles.begin(), middles.end());
    chain.rays.push_back(PrimVec2{0, 1});
    chain.m = middles.size();

    for (std::size_t i = 1; i <= chain.m; ++i) {
        chain.b.push_back(wedge(chain.rays[i - 1], chain.rays[i + 1]));
        chain.alphas.push_back(chain.rays[i].x);
        chain.betas.push_back(chain.rays[i].y);
        if (chain.rays[i] == weights) chain.i1 = i;
    }
    require(chain.i1 != 0, "BadTarget", "weights ray missing from chain");

    // Closed-form gammas.
    const Rational alpha(weights.x), beta(weights.y);
    for (std::size_t i = 1; i <= chain.m; ++i) {
        if (i < chain.i1)
            chain.gammas.push_back(Rational(chain.betas[i - 1]) / beta);
        else if (i == chain.i1)
            chain.gammas.push_back(Rational(1));
        else
            chain.gammas.push_back(Rational(chain.alphas[i - 1]) / alpha);
    }

    validate_chain(chain);
    return chain;
}

void validate_chain(const ResolutionChain& chain) {
    const std::size_t m = chain.m;
    const Rational alpha(chain.weights.x), beta(chain.weights.y);

    for (std::size_t i = 0; i + 1 < chain.rays.size(); ++i)
        require(wedge(chain.rays[i], chain.rays[i + 1]) == 1,
                "ChainInvariant", "adjacent rays are not Farey neighbours");
    for (std::size_t i = 1; i <= m; ++i) {
        if (i == chain.i1)
            require(chain.b[i - 1] == 1, "ChainInvariant", "b_{i1} != 1");
        else
            require(chain.b[i - 1] >= 2, "ChainInvariant", "b_i < 2 off the centre");
    }

    // HJ continued-fraction identities.
    for (std::size_t i = 2; i <= m; ++i) {
        std::vector<Integer> terms(chain.b.rend() - (i - 1), chain.b.rend()); // b_{i-1}..b_1
        require(Rational(chain.betas[i - 1]) / Rational(chain.betas[i - 2]) ==
                    hj_cf_eval(terms),
                "ChainInvariant", "beta continued-fraction identity failed");
    }
    for (std::size_t i = 1; i + 1 <= m; ++i) {
        std::vector<Integer> terms(chain.b.begin() + i, chain.b.end()); // b_{i+1}..b_m
        require(Rational(chain.alphas[i - 1]) / Rational(chain.alphas[i]) ==
                    hj_cf_eval(terms),
                "ChainInvariant", "alpha continued-fraction identity failed");
    }

    for (const Rational& g : chain.gammas)
        require(sgn(g) > 0 && g <= 1, "ChainInvariant", "gamma outside (0,1]");

    // Oracle: exact tridiagonal solve must reproduce the closed-form gammas.
    std::vector<Rational> solved =
        chain_solve_gammas(chain.b, chain.i1, Rational(-1) / (alpha * beta));
    require(solved == chain.gammas, "ChainInvariant",
            "closed-form gammas disagree with the linear solve");
}

json chain_to_json(const ResolutionChain& chain) {
    json j;
    j["weights"] = json::array({json_int(chain.weights.x), json_int(chain.weights.y)});
    json rays = json::array();
    for (const auto& r : chain.rays)
        rays.push_back(json::array({json_int(r.x), json_int(r.y)}));
    j["rays"] = rays;
    json b = json::array();
    for (const auto& v : chain.b) b.push_back(json_int(v));
    j["b"] = b;
    j["i1"] = chain.i1;
    json alphas = json::array(), betas = json::array(), gammas = json::array();
    for (const auto& v : chain.alphas) alphas.push_back(json_int(v));
    for (const auto& v : chain.betas) betas.push_back(json_int(v));
    for (const auto& g : chain.gammas) gammas.push_back(rat_str(g));
    j["alphas"] = alphas;
    j["betas"] = betas;
    j["gammas"] = gammas;
    return j;
}

} // namespace wseshadri
