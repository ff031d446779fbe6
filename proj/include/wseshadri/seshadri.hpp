#pragma once

#include <map>
#include <utility>

#include "wseshadri/farey.hpp"

namespace wseshadri {

/* Sparse intersection data of the (normalized) proper transform against the
 * chain: entries[i] = phi_i >= 0 for i in 1..m, with D = A/d and D^2 given. */
struct IntersectionProfile {
    std::map<std::size_t, Integer> entries;
    Rational d{1};
    Rational d_squared{1};
};

enum class Regime { Ineffective, PotentiallyObstructive };

const char* regime_name(Regime r);

struct SeshadriReport {
    PrimVec2 weights;
    Rational slope;     // beta/alpha
    Rational cd;        // C . Dtilde
    Rational delta;     // alpha beta cd
    Rational eps_upper; // D^2 / cd
    Rational eps;       // min(delta, eps_upper)
    Regime regime{Regime::Ineffective};
    std::pair<Rational, Rational> sigma_sup; // (eps/alpha, eps/beta), open bounds
    Rational packing_sup;                    // eps^2 / (alpha beta D^2)
    Rational d_squared{1};
    bool obstructive_curve{false}; // user-asserted only; never validated
};

/* The three intersection tests of the nef argument at a trial epsilon. */
struct NefCertificate {
    bool pass{false};
    Rational eps_test;
    Rational upsilon_dot_C;      // eps/(alpha beta)
    Rational upsilon_dot_Dtilde; // D^2 - eps * cd
    Rational effectivity_slack;  // delta - eps
};

/* (1/d) * sum_i gamma_i phi_i, exactly. Throws IndexOutOfRange. */
Rational cd_from_profile(const ResolutionChain& chain,
                         const IntersectionProfile& profile);

/* Assembles the full report from exact C.Dtilde and D^2. Shared by the chain
 * route and the curve-model route so the two agree field for field. */
SeshadriReport report_from_cd(const PrimVec2& weights, const Rational& cd,
                              const Rational& d_squared);

SeshadriReport seshadri_eval(const ResolutionChain& chain,
                             const IntersectionProfile& profile);

NefCertificate nef_certificate(const SeshadriReport& report,
                               const Rational& eps_test);

/* Supremal ellipsoid parameters (eps/alpha, eps/beta); open bounds. */
std::pair<Rational, Rational> ellipsoid_from_eps(const Rational& eps,
                                                 const PrimVec2& weights);

json report_to_json(const SeshadriReport& report);

} // namespace wseshadri
