#include "wseshadri/seshadri.hpp"

namespace wseshadri {

const char* regime_name(Regime r) {
    return r == Regime::PotentiallyObstructive ? "PotentiallyObstructive"
                                               : "Ineffective";
}

Rational cd_from_profile(const ResolutionChain& chain,
                         const IntersectionProfile& profile) {
    require(sgn(profile.d) > 0, "BadProfile", "normalizer d must be positive");
    require(sgn(profile.d_squared) > 0, "BadProfile", "D^2 must be positive");
    require(!profile.entries.empty(), "BadProfile", "profile has no entries");
    Rational sum(0);
    bool nonzero = false;
    for (const auto& [i, phi] : profile.entries) {
        require(1 <= i && i <= chain.m, "IndexOutOfRange",
                "profile index " + std::to_string(i) + " outside 1..m");
        require(sgn(phi) >= 0, "BadProfile", "phi_i must be nonnegative");
        if (sgn(phi) != 0) nonzero = true;
        sum += chain.gammas[i - 1] * Rational(phi);
    }
    require(nonzero, "BadProfile", "profile has no nonzero entry");
    return sum / profile.d;
}

SeshadriReport report_from_cd(const PrimVec2& weights, const Rational& cd,
                              const Rational& d_squared) {
    require(sgn(cd) > 0, "BadProfile", "C.Dtilde must be positive");
    const Rational alpha(weights.x), beta(weights.y);
    SeshadriReport r;
    r.weights = weights;
    r.slope = beta / alpha;
    r.cd = cd;
    r.delta = alpha * beta * cd;
    r.eps_upper = d_squared / cd;
    r.d_squared = d_squared;
    if (r.eps_upper <= r.delta) {
        r.regime = Regime::PotentiallyObstructive;
        r.eps = r.eps_upper;
    } else {
        r.regime = Regime::Ineffective;
        r.eps = r.delta;
    }
    r.sigma_sup = ellipsoid_from_eps(r.eps, weights);
    r.packing_sup = r.eps * r.eps / (alpha * beta * d_squared);
    return r;
}

SeshadriReport seshadri_eval(const ResolutionChain& chain,
                             const IntersectionProfile& profile) {
    return report_from_cd(chain.weights, cd_from_profile(chain, profile),
                          profile.d_squared);
}

NefCertificate nef_certificate(const SeshadriReport& report,
                               const Rational& eps_test) {
    require(sgn(eps_test) >= 0, "BadParams", "eps_test must be nonnegative");
    const Rational alpha(report.weights.x), beta(report.weights.y);
    NefCertificate cert;
    cert.eps_test = eps_test;
    cert.upsilon_dot_C = eps_test / (alpha * beta);
    cert.upsilon_dot_Dtilde = report.d_squared - eps_test * report.cd;
    cert.effectivity_slack = report.delta - eps_test;
    cert.pass = (eps_test <= report.eps);
    return cert;
}

std::pair<Rational, Rational> ellipsoid_from_eps(const Rational& eps,
                                                 const PrimVec2& weights) {
    require(sgn(eps) > 0, "BadParams", "eps must be positive");
    return {eps / Rational(weights.x), eps / Rational(weights.y)};
}

json report_to_json(const SeshadriReport& r) {
    json j;
    j["weights"] = json::array(
        {r.weights.x.get_str(), r.weights.y.get_str()});
    auto both = [](const Rational& q) {
        return json{{"exact", rat_str(q)}, {"float", float_str(rat_double(q))}};
    };
    j["slope"] = both(r.slope);
    j["cd"] = both(r.cd);
    j["delta"] = both(r.delta);
    j["eps_upper"] = both(r.eps_upper);
    j["eps"] = both(r.eps);
    j["regime"] = regime_name(r.regime);
    j["sigma_sup"] = json::array({both(r.sigma_sup.first), both(r.sigma_sup.second)});
    j["packing_sup"] = both(r.packing_sup);
    j["d_squared"] = both(r.d_squared);
    j["obstructive_curve"] = r.obstructive_curve;
    return j;
}

} // namespace wseshadri
