#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wseshadri/rational.hpp"

namespace wseshadri {

using json = nlohmann::ordered_json;

/* Primitive lattice vector (x, y) with gcd(x, y) = 1, (x, y) != (0, 0). */
struct PrimVec2 {
    Integer x{0};
    Integer y{0};

    bool operator==(const PrimVec2& o) const { return x == o.x && y == o.y; }
};

/* wedge((x,y),(x',y')) = x y' - y x'. */
Integer wedge(const PrimVec2& u, const PrimVec2& v);

/* Move sequence through the Stern-Brocot / Farey tree, root triple
 * ((1,0),(1,1),(0,1)), right -> (v, v+w, w), left -> (u, u+v, v). */
struct FareyPath {
    std::string moves; // over {'L','R'}
    PrimVec2 target;
};

/* Unique path from (1,1) to target; requires gcd = 1, 1 <= x <= y. */
FareyPath farey_path(const PrimVec2& target);

/* Resolution chain E_1..E_m of the weighted blow-up with weights (α,β).
 * rays are u_0=(1,0), u_1, ..., u_m, u_{m+1}=(0,1) in increasing slope,
 * b_i = wedge(u_{i-1}, u_{i+1}) (so E_i^2 = -b_i), i1 is the 1-based index
 * of the ray equal to (α,β), and γ solves M γ = -(1/(αβ)) e_{i1}. */
struct ResolutionChain {
    PrimVec2 weights;
    std::size_t m{0};
    std::vector<PrimVec2> rays;   // size m + 2
    std::vector<Integer> b;       // size m, 1-based semantics via b[i-1]
    std::size_t i1{0};            // 1-based
    std::vector<Integer> alphas;  // size m
    std::vector<Integer> betas;   // size m
    std::vector<Rational> gammas; // size m
};

/* Builds the chain, computing γ by the closed formula and cross-checking it
 * against the exact tridiagonal solve; validates every chain invariant. */
ResolutionChain chain_from_weights(const PrimVec2& weights);

/* Hirzebruch-Jung ("minus") continued fraction [b1, b2, ...] =
 * b1 - 1/(b2 - 1/(...)). */
Rational hj_cf_eval(const std::vector<Integer>& terms);

/* Exact solve of the tridiagonal system M γ = rhs_value * e_{i1}
 * with M_ii = -b_i, M_{i,i±1} = 1. */
std::vector<Rational> chain_solve_gammas(const std::vector<Integer>& b,
                                         std::size_t i1,
                                         const Rational& rhs_value);

/* Throws on any violated invariant (wedge = 1, b values, CF identities,
 * γ range, linear-system residual). */
void validate_chain(const ResolutionChain& chain);

json chain_to_json(const ResolutionChain& chain);

} // namespace wseshadri
