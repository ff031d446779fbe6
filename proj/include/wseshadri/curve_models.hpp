#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wseshadri/quadext.hpp"
#include "wseshadri/seshadri.hpp"

namespace wseshadri {

/* Interval endpoint: exact value (rational or quadratic irrational) plus
 * openness. Comparable against any rational slope exactly. */
struct SlopeBound {
    QuadExt value;
    bool closed{true};
};

/* One slope-interval piece of a divisor model, carrying the (k, l) data of
 * C.Dtilde = (k/beta + l/alpha)/d. Degenerate point pieces (lo == hi, both
 * ends closed) are allowed. */
struct ModelPiece {
    SlopeBound lo, hi;
    Rational k{0}, l{0};
};

struct CurveModel {
    std::string name;
    Rational d{1};         // normalizer: D = A/d
    Rational d_squared{1}; // D^2
    std::vector<ModelPiece> pieces;
};

/* Exact verification record for a two-piece staircase step. */
struct StepReport {
    std::string name;
    bool start_ok{false};
    bool end_ok{false};
    bool continuity_ok{false};
    bool full_fill_at_start_ok{false};
    // Roots of l^2 s^2 + (2kl - d^2) s + k^2 = 0 per piece (equal pair when
    // the equation degenerates to linear).
    std::vector<std::pair<QuadExt, QuadExt>> roots;
};

struct SweepItem {
    Rational slope;
    bool in_domain{false};
    SeshadriReport report; // valid iff in_domain
    Rational k{0}, l{0};   // containing piece data, valid iff in_domain
    std::string note;      // set when skipped
};

/* Thread budget for the parallel kernels: min(omp max threads,
 * SESHADRI_THREADS) when the env var is a positive integer. */
int effective_threads();

bool piece_contains(const ModelPiece& piece, const Rational& slope);

/* Index of the first piece containing the slope, or pieces.size(). */
std::size_t find_piece(const CurveModel& model, const Rational& slope);

PrimVec2 weights_from_slope(const Rational& slope);

/* Report for slope beta/alpha with cd = (k/beta + l/alpha)/d.
 * Throws SlopeOutsideModel. */
SeshadriReport model_eval(const CurveModel& model, const PrimVec2& weights);

/* Built-in registry: the nine staircase steps (corrected step 2), the
 * literal printed step-2 row, the full-range nodal cubic, Fibonacci and
 * genus-1 unicuspidal families, full-filling point models, and the slope-10
 * sextic. */
std::map<std::string, CurveModel> builtin_models();

CurveModel unicuspidal_model(const Integer& p, const Integer& q,
                             const Integer& d, const std::string& name);
CurveModel opshtein_model(const Integer& d);

/* Exact verification of a two-piece step. Throws MalformedStep. */
StepReport verify_step(const CurveModel& step);

std::vector<SweepItem> sweep(const CurveModel& model,
                             const std::vector<Rational>& slopes,
                             bool parallel = true);

/* E(eps/beta, eps/alpha) -> E(k, l) for slope above the exact threshold
 * (kl - 2 + sqrt(k^2 l^2 - 4 k l))/2. Throws BelowThreshold, BadWeights. */
SeshadriReport ellipsoid_in_ellipsoid(const Integer& k, const Integer& l,
                                      const PrimVec2& weights);
QuadExt eie_threshold(const Integer& k, const Integer& l);

/* k = 1 variant; the derived threshold 2l - 1 + 2 sqrt(l^2 - l) is the
 * default, the printed 4 sqrt(l^2 - l) is available behind the flag. */
SeshadriReport ellipsoid_in_ellipsoid_k1(const Integer& l,
                                         const PrimVec2& weights,
                                         bool printed_threshold = false);
QuadExt eie_k1_threshold(const Integer& l, bool printed_threshold = false);

/* Continued-fraction convergents of sqrt(n), starting from the first
 * convergent with denominator > 1. Throws PerfectSquare. */
std::vector<Rational> sqrt_convergents(const Integer& n, std::size_t count);

/* Config ingest/export: {name, d, d_squared, pieces:[{lo, hi, k, l, ...}]}
 * with bounds as "p/q" or "(a)+(b)*sqrt(n)". */
CurveModel model_from_json(const json& j);
json model_to_json(const CurveModel& model);

/* CSV of in-domain sweep rows (exact strings plus float columns). */
std::string sweep_to_csv(const std::vector<SweepItem>& items);

} // namespace wseshadri
