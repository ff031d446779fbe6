#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "wseshadri/errors.hpp"

namespace wseshadri {

using Vec = std::vector<double>;

/* Parameter block for the toric potentials on the weighted blow-up:
 * weights a, inner radius R0, outer radius R_bd, target level S, scaling
 * factors r1, r2 and the smoothing band (delta, eta). All inequalities of
 * the construction are enforced at creation. */
struct PotentialParams {
    Vec a;
    double R0{1.0};
    double R_bd{12.0};
    double S{6.0};
    double r1{2.0};
    double r2{1.0};
    double delta{0.05};
    double eta{0.02};
};

PotentialParams make_params(Vec a, double R0, double R_bd, double S, double r1,
                            double r2, double delta, double eta);

/* Reference instantiation a = (2,3), R0 = 1, R_bd = 12, S = 6, r1 = 2,
 * r2 = 1, delta = 0.05, eta = 0.02. */
PotentialParams reference_params();

struct GridSpec {
    std::vector<std::size_t> counts; // per-axis sample counts, each >= 2
    double tolerance{1e-9};
};

GridSpec make_grid(std::vector<std::size_t> counts, double tolerance);

/* L(t) = (t log(2t) - t)/2, the building block of every potential here. */
double L(double t);
double L_prime(double t);

Vec psi_Z(const Vec& m);
Vec psi_Z_inv(const Vec& lambda);

/* C^2 convex smoothing of the kinked functions
 *   zeta_delta(t) = L(t) for t >= delta, tangent line at delta below, and
 *   chi_delta(t)  = (t log(t/delta) + delta - t)/2 for t <= delta, 0 above.
 * Outside the band (delta-eta, delta+eta) the branch formulas are returned
 * exactly. Inside, the second derivative is a piecewise-linear weighting of
 * the branch curvature 1/(2t), with two free node heights solved from the
 * C^1 matching conditions at both ends of the band; the resulting weights
 * stay positive for the parameter ranges used, giving convexity. */
class SmoothedKink {
public:
    enum class Kind { Chi, Zeta };

    SmoothedKink(Kind kind, double delta, double eta);

    double value(double t) const;
    double deriv(double t) const;
    double second(double t) const;

private:
    double band_value(double t) const;
    double band_deriv(double t) const;

    Kind kind_;
    double delta_, eta_, t0_, t1_;
    double f0_, g0_;                 // value/derivative at t0
    std::array<double, 5> node_t_{}; // band nodes
    std::array<double, 5> node_w_{}; // curvature weights at the nodes
    std::array<double, 5> A_{};      // prefix of w/(2s) over the band
    std::array<double, 5> M_{};      // prefix of w/2 over the band
};

double chi(double delta, double eta, double t);
double zeta(double delta, double eta, double t);

/* Potential values (for Legendre-duality checks): G_Z = sum L(m_j),
 * G_Y = sum L(m_j) + L(a.m - R0/2) - (a.m) log(R_bd - R0)/2, and the ironed
 * variant with L(a.m - R0/2) replaced by zeta_{delta,eta}. */
double potential_Z(const Vec& m);
double potential_Y(const PotentialParams& p, const Vec& m);
double potential_ironed_Z(const PotentialParams& p, const Vec& m);

/* Gradient of G_Y on the interior of P_Y (m > 0, a.m > R0/2) and its
 * inverse; the inverse solves the scalar equation for ell0 = a.m by
 * bracketed bisection (the defining function is strictly decreasing). */
Vec psi_Y(const PotentialParams& p, const Vec& m);
Vec psi_Y_inv(const PotentialParams& p, const Vec& lambda);

/* Gradient of the ironed potential, defined for all m > 0, and its inverse
 * (damped Newton in log m; the rank-one Jacobian structure is solved by the
 * Sherman-Morrison formula). */
Vec psi_ironed_Z(const PotentialParams& p, const Vec& m);
Vec psi_ironed_Z_inv(const PotentialParams& p, const Vec& lambda);

/* Hessian of the ironed potential: diag(1/(2 m_j)) + zeta'' a a^T. */
std::vector<Vec> hessian_ironed(const PotentialParams& p, const Vec& m);

/* In-place Cholesky test; true iff the symmetric matrix is positive
 * definite. */
bool is_positive_definite(std::vector<Vec> mat);

/* |sum_j a_j exp(2 lambda_j) - R|: distance of lambda from resh_{a,R}. */
double resh_residual(const Vec& a, const Vec& lambda, double R);

/* Interior samples of the slanted face Lambda_{a,R} (n = 2 only). */
std::vector<Vec> lambda_face_samples(const Vec& a, double R,
                                     std::size_t count);

/* Residual of the moment-image identity: for m on Lambda_{a,R}, the image
 * of m under psi_Y (or the ironed gradient) translated by
 * (a_j/2) log((R_bd-R0)/(R-R0)) must land on resh_{a,R}. */
double psi_image_residual(const PotentialParams& p, const Vec& m, double R,
                          bool ironed);

struct ContainmentReport {
    bool precondition_ok{false};
    bool pass{false};
    double worst_margin{0.0}; // min over grid of S/2 - sum a_j e^{2 lambda_j}
    std::size_t points_checked{0};
    std::string message;
};

/* Numerical instantiation of the ellipsoid-containment argument: for every
 * grid point m of Delta_{a, r1 R0}, solve
 *   r1 m' + (r2/2) exp(2 psi_ironed(m')) = m
 * for m' (damped Newton in log m'), set lambda = psi_ironed(m'), and check
 * sum a_j exp(2 lambda_j) <= S/2 + tolerance. Guards: r1 R0 < R_bd and the
 * sampled inclusion psi_ironed(Delta_{a, R0+2(delta+eta)}) within
 * mem_{a,S/2} are verified first and reported as precondition failures. */
ContainmentReport check_containment(const PotentialParams& p,
                                    const GridSpec& grid,
                                    bool parallel = true);

/* Strictly increasing C^1 interpolant with h(t) = kappa t / eps_scale below
 * t_lo = (eps_scale/kappa) sqrt(R/(3 a_n)) and h(t) = t above
 * t_hi = sqrt(R/(2 a_n)); in between h' = exp(piecewise linear) with the
 * interior node height solved so the values match at t_hi. */
double monotone_h(double R, double a_n, double kappa, double eps_scale,
                  double t);

/* CSV over a grid of Delta_{a, R_bd}: m-coordinates, ironed lambda image,
 * and the mem-function value sum a_j e^{2 lambda_j}. */
std::string potentials_grid_csv(const PotentialParams& p,
                                const GridSpec& grid);

nlohmann::ordered_json containment_to_json(const ContainmentReport& r);

} // namespace wseshadri
