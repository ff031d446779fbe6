#pragma once

#include <cstddef>
#include <vector>

#include "wseshadri/farey.hpp"

namespace wseshadri {

/* Primitive positive integer weight vector a in Z^n, n >= 2, defining the
 * star subdivision of the positive orthant along the ray through a. */
struct WeightVector {
    std::vector<Integer> a;
};

WeightVector weight_vector(std::vector<Integer> entries);

/* Cartier data of the exceptional divisor on the maximal cones sigma_j:
 * m_{sigma_j} = -(prod_{k != j} a_k) e_j. */
struct CartierData {
    std::vector<std::vector<Integer>> m; // m[j] is m_{sigma_j}, size n each
};

CartierData cartier_data(const WeightVector& a);

/* Intersection C . T_ij of the exceptional curve class with the toric curve
 * of the wall sigma_i ∩ sigma_j. Computes both the closed form
 * -1/lcm(a_i, a_j) and the Cartier/Bezout route (m_{sigma_i} - m_{sigma_j})
 * dotted with the minimal nonnegative Bezout point u, divided by prod a_k,
 * and asserts exact agreement. Indices are 1-based. Throws BadIndex. */
Rational exc_dot_toric(const WeightVector& a, std::size_t i, std::size_t j);

/* Closed half-space c . x <= rhs. */
struct HalfSpace {
    std::vector<Rational> c;
    Rational rhs;
};

struct Polytope {
    std::string name;
    std::vector<HalfSpace> halfspaces;
};

bool polytope_contains(const Polytope& p, const std::vector<Rational>& x);

/* Moment polytopes of the weighted blow-up at radius R:
 *   Delta_{a,R} = {mu >= 0 : a.mu <= R/2}   (chopped-corner complement
 *                 of the orthant piece; the image of the disc bundle),
 *   Lambda_{a,R} = {mu >= 0 : a.mu = R/2} as the pair of inequalities
 *                 a.mu <= R/2 and -a.mu <= -R/2,
 *   P_Y(R) = {mu >= 0 : a.mu >= R/2}. */
struct MomentPolytopes {
    Polytope delta;
    Polytope lambda;
    Polytope p_y;
    /* For n = 2 only: the affine length R/(2 lcm(a_1, a_2)) of the single
     * face of Lambda; empty otherwise. */
    std::vector<Rational> lambda_face_lengths;
};

MomentPolytopes moment_polytopes(const WeightVector& a, const Rational& R);

json polytope_to_json(const Polytope& p);
json moment_polytopes_to_json(const MomentPolytopes& mp);

} // namespace wseshadri
