#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wseshadri/seshadri.hpp"

using namespace wseshadri;

namespace {

PrimVec2 pv(long x, long y) { return PrimVec2{Integer(x), Integer(y)}; }

IntersectionProfile profile(std::initializer_list<std::pair<std::size_t, long>> es,
                            const Rational& d, const Rational& d2) {
    IntersectionProfile p;
    for (auto [i, phi] : es) p.entries[i] = Integer(phi);
    p.d = d;
    p.d_squared = d2;
    return p;
}

} // namespace

TEST_CASE("nodal cubic branch-b data at slope 7") {
    ResolutionChain chain = chain_from_weights(pv(1, 7));
    SeshadriReport r =
        seshadri_eval(chain, profile({{1, 1}, {7, 1}}, rat(3), rat(1)));
    CHECK(r.cd == rat(8, 21));
    CHECK(r.delta == rat(8, 3));
    CHECK(r.eps_upper == rat(21, 8));
    CHECK(r.eps == rat(21, 8));
    CHECK(r.regime == Regime::PotentiallyObstructive);
    CHECK(r.sigma_sup == std::pair<Rational, Rational>(rat(21, 8), rat(3, 8)));
    CHECK(r.packing_sup == rat(63, 64));
}

TEST_CASE("slope-10 sextic data") {
    ResolutionChain chain = chain_from_weights(pv(1, 10));
    SeshadriReport r =
        seshadri_eval(chain, profile({{9, 1}, {10, 1}}, rat(6), rat(1)));
    CHECK(r.cd == rat(19, 60));
    CHECK(r.eps == rat(60, 19));
    CHECK(r.packing_sup == rat(360, 361));
    CHECK(r.sigma_sup ==
          std::pair<Rational, Rational>(rat(60, 19), rat(6, 19)));

    SUBCASE("nef certificates") {
        NefCertificate at_eps = nef_certificate(r, rat(60, 19));
        CHECK(at_eps.pass);
        CHECK(at_eps.upsilon_dot_Dtilde == rat(0));
        NefCertificate at_zero = nef_certificate(r, rat(0));
        CHECK(at_zero.pass);
        CHECK(sgn(at_zero.upsilon_dot_Dtilde) > 0);
        CHECK(sgn(at_zero.effectivity_slack) > 0);
        NefCertificate too_big = nef_certificate(r, rat(19, 6));
        CHECK_FALSE(too_big.pass);
        CHECK(sgn(too_big.upsilon_dot_Dtilde) < 0);
    }
}

TEST_CASE("ordinary blow-up of the plane along a line") {
    ResolutionChain chain = chain_from_weights(pv(1, 1));
    SeshadriReport r =
        seshadri_eval(chain, profile({{1, 1}}, rat(1), rat(1)));
    CHECK(r.cd == rat(1));
    CHECK(r.delta == rat(1));
    CHECK(r.eps == rat(1));
    CHECK(r.sigma_sup == std::pair<Rational, Rational>(rat(1), rat(1)));
}

TEST_CASE("central profile gives cd = 1") {
    ResolutionChain chain = chain_from_weights(pv(2, 3));
    SeshadriReport r = seshadri_eval(
        chain, profile({{chain.i1, 1}}, rat(1), rat(1)));
    CHECK(r.cd == rat(1));
}

TEST_CASE("ellipsoid_from_eps") {
    CHECK(ellipsoid_from_eps(rat(3), pv(1, 1)) ==
          std::pair<Rational, Rational>(rat(3), rat(3)));
    CHECK(ellipsoid_from_eps(rat(60, 19), pv(1, 10)) ==
          std::pair<Rational, Rational>(rat(60, 19), rat(6, 19)));
    CHECK(ellipsoid_from_eps(rat(21, 8), pv(1, 7)) ==
          std::pair<Rational, Rational>(rat(21, 8), rat(3, 8)));
    CHECK_THROWS_AS(ellipsoid_from_eps(rat(0), pv(1, 1)), DomainError);
}

TEST_CASE("scaling the normalizer") {
    // Replacing (d, D^2) by (t d, D^2/t^2) rescales the divisor D by 1/t:
    // cd, delta, eps_upper, eps all scale by 1/t; regime and packing do not
    // change.
    ResolutionChain chain = chain_from_weights(pv(2, 3));
    Rational t = rat(5, 2);
    SeshadriReport base = seshadri_eval(
        chain, profile({{1, 1}, {2, 1}}, rat(3), rat(2)));
    SeshadriReport scaled = seshadri_eval(
        chain, profile({{1, 1}, {2, 1}}, rat(3) * t, rat(2) / (t * t)));
    CHECK(scaled.cd == base.cd / t);
    CHECK(scaled.delta == base.delta / t);
    CHECK(scaled.eps_upper == base.eps_upper / t);
    CHECK(scaled.eps == base.eps / t);
    CHECK(scaled.regime == base.regime);
    CHECK(scaled.packing_sup == base.packing_sup);
}

TEST_CASE("profile monotonicity") {
    ResolutionChain chain = chain_from_weights(pv(2, 3));
    SeshadriReport small =
        seshadri_eval(chain, profile({{2, 1}}, rat(1), rat(1)));
    SeshadriReport big =
        seshadri_eval(chain, profile({{2, 1}, {1, 1}}, rat(1), rat(1)));
    CHECK(big.eps_upper < small.eps_upper);
    CHECK(big.delta > small.delta);
}

TEST_CASE("full-filling equivalence") {
    // genus-1 unicuspidal data: weights (9,64), cd = 1/24, D^2 = 1.
    SeshadriReport full = report_from_cd(pv(9, 64), rat(1, 24), rat(1));
    CHECK(full.packing_sup == rat(1));
    CHECK(full.eps * full.eps == Rational(9) * Rational(64) * full.d_squared);
    CHECK(full.eps_upper == full.delta);

    SeshadriReport part = report_from_cd(pv(1, 10), rat(19, 60), rat(1));
    CHECK(part.packing_sup != rat(1));
    CHECK(part.eps * part.eps != Rational(10) * part.d_squared);
}

TEST_CASE("profile validation") {
    ResolutionChain chain = chain_from_weights(pv(2, 3));
    CHECK_THROWS_AS(
        seshadri_eval(chain, profile({{9, 1}}, rat(1), rat(1))),
        DomainError);
    CHECK_THROWS_AS(seshadri_eval(chain, profile({{1, 0}}, rat(1), rat(1))),
                    DomainError);
    CHECK_THROWS_AS(seshadri_eval(chain, profile({{1, 1}}, rat(0), rat(1))),
                    DomainError);
}

TEST_CASE("report JSON carries exact strings with float companions") {
    SeshadriReport r = report_from_cd(pv(1, 10), rat(19, 60), rat(1));
    json j = report_to_json(r);
    CHECK(j["eps"]["exact"] == "60/19");
    CHECK(j["regime"] == "PotentiallyObstructive");
    CHECK(j["packing_sup"]["exact"] == "360/361");
    CHECK(j["eps"]["float"].get<std::string>().find('.') !=
          std::string::npos);
}
