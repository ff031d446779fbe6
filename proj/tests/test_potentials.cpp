#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "wseshadri/potentials.hpp"

using namespace wseshadri;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

} // namespace

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(reference_params());
    CHECK_THROWS_AS(make_params({2, 3}, 12, 1, 6, 2, 1, 0.05, 0.02),
                    DomainError); // R0 > R_bd
    CHECK_THROWS_AS(make_params({2, 3}, 1, 12, 13, 2, 1, 0.05, 0.02),
                    DomainError); // S > R_bd
    CHECK_THROWS_AS(make_params({2, 3}, 1, 12, 6, 2, 1, 0.02, 0.05),
                    DomainError); // eta > delta
    CHECK_THROWS_AS(make_params({2, 3}, 11.9, 12, 6, 2, 1, 0.05, 0.02),
                    DomainError); // band escapes R_bd
    CHECK_THROWS_AS(make_grid({1}, 1e-9), DomainError);
}

TEST_CASE("the building block L") {
    CHECK(L(0.5) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(std::abs(L(std::exp(1.0) / 2)) < 1e-15);
    CHECK(L(1.0) ==
          doctest::Approx(0.5 * (std::log(2.0) - 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(L(0.0), DomainError);
}

TEST_CASE("psi_Z round trip and closed forms") {
    Vec zero = psi_Z({0.5, 0.5});
    CHECK(std::abs(zero[0]) < 1e-15);
    CHECK(std::abs(zero[1]) < 1e-15);
    Vec m = psi_Z_inv({1.0});
    CHECK(rel_err(m[0], std::exp(2.0) / 2) < 1e-14);
    for (int i = 1; i <= 100; ++i)
        for (int j = 1; j <= 100; ++j) {
            Vec mm{0.07 * i, 0.11 * j};
            Vec back = psi_Z_inv(psi_Z(mm));
            CHECK(std::abs(back[0] - mm[0]) / mm[0] < 1e-12);
            CHECK(std::abs(back[1] - mm[1]) / mm[1] < 1e-12);
        }
}

TEST_CASE("resh_{a,R} is a translate of resh_{1,1}") {
    Vec a{2.0, 3.0};
    const double R = 12.0;
    for (int i = 1; i < 40; ++i) {
        // Sample lambda on resh_{a,R} by solving for the second coordinate.
        double l1 = -2.0 + 0.1 * i;
        double rest = R - a[0] * std::exp(2.0 * l1);
        if (rest <= 0) continue;
        double l2 = 0.5 * std::log(rest / a[1]);
        // Undo the translate (-log a_j)/2 + (log R)/2 per coordinate.
        Vec mu{l1 + 0.5 * std::log(a[0]) - 0.5 * std::log(R),
               l2 + 0.5 * std::log(a[1]) - 0.5 * std::log(R)};
        CHECK(resh_residual({1.0, 1.0}, mu, 1.0) < 1e-10);
    }
}

TEST_CASE("chi and zeta match their branch formulas outside the band") {
    const double d = 0.05, e = 0.02;
    SmoothedKink zk(SmoothedKink::Kind::Zeta, d, e);
    SmoothedKink ck(SmoothedKink::Kind::Chi, d, e);
    CHECK(chi(d, e, d + e) == 0.0);
    CHECK(chi(d, e, 1.0) == 0.0);
    CHECK(chi(d, e, d / 2) ==
          doctest::Approx(0.5 * (0.5 * d * std::log(0.5) + d - 0.5 * d))
              .epsilon(1e-14));
    CHECK(zeta(d, e, d + e) == doctest::Approx(L(d + e)).epsilon(1e-14));
    CHECK(zeta(d, e, 2.0) == L(2.0));
    CHECK(zeta(d, e, d - e) ==
          doctest::Approx(0.5 * ((d - e) * std::log(2 * d) - d))
              .epsilon(1e-14));
    CHECK_THROWS_AS(chi(0.02, 0.05, 0.1), DomainError);

    SUBCASE("C^1 matching at the band edges") {
        for (const SmoothedKink* k : {&zk, &ck}) {
            double t0 = d - e, t1 = d + e;
            CHECK(std::abs(k->value(t0 - 1e-12) - k->value(t0 + 1e-12)) <
                  1e-10);
            CHECK(std::abs(k->deriv(t0 - 1e-12) - k->deriv(t0 + 1e-12)) <
                  1e-8);
            CHECK(std::abs(k->value(t1 - 1e-12) - k->value(t1 + 1e-12)) <
                  1e-10);
            CHECK(std::abs(k->deriv(t1 - 1e-12) - k->deriv(t1 + 1e-12)) <
                  1e-8);
        }
    }

    SUBCASE("convexity across the band") {
        for (const SmoothedKink* k : {&zk, &ck}) {
            const double h = 1e-3;
            for (double t = 0.005; t <= d + 3 * e; t += h / 4) {
                double dd =
                    k->value(t - h) - 2 * k->value(t) + k->value(t + h);
                CHECK(dd / (h * h) >= -1e-9);
                CHECK(k->second(t) >= 0.0);
            }
        }
    }

    SUBCASE("derivative consistency") {
        for (const SmoothedKink* k : {&zk, &ck}) {
            for (double t : {d - 1.5 * e, d - 0.4 * e, d + 0.3 * e,
                             d + 0.9 * e, d + 4 * e}) {
                double h = 1e-7;
                double fd = (k->value(t + h) - k->value(t - h)) / (2 * h);
                CHECK(std::abs(fd - k->deriv(t)) < 1e-6);
            }
        }
    }
}

TEST_CASE("psi_Y round trips") {
    PotentialParams p = reference_params();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.05, 2.5);
    for (int trial = 0; trial < 200; ++trial) {
        Vec m{u(rng), u(rng)};
        if (2 * m[0] + 3 * m[1] <= p.R0 / 2 + 0.01) continue;
        Vec back = psi_Y_inv(p, psi_Y(p, m));
        CHECK(std::abs(back[0] - m[0]) / m[0] < 1e-10);
        CHECK(std::abs(back[1] - m[1]) / m[1] < 1e-10);
    }
    CHECK_THROWS_AS(psi_Y(p, {0.01, 0.01}), DomainError); // not interior
}

TEST_CASE("moment images land on translated resh curves") {
    PotentialParams p = reference_params();
    for (double R : {2.0, 4.0, 6.0, 9.0, 12.0}) {
        for (const Vec& m : lambda_face_samples(p.a, R, 200)) {
            CHECK(psi_image_residual(p, m, R, false) < 1e-8);
            CHECK(psi_image_residual(p, m, R, true) < 1e-8);
        }
    }
    // At the outer radius the image is resh_{a,R_bd} itself.
    for (const Vec& m : lambda_face_samples(p.a, p.R_bd, 50)) {
        CHECK(resh_residual(p.a, psi_ironed_Z(p, m), p.R_bd) < 1e-8);
        CHECK(resh_residual(p.a, psi_Y(p, m), p.R_bd) < 1e-8);
    }
}

TEST_CASE("ironed potential: Hessian, inverse, gradient consistency") {
    PotentialParams p = reference_params();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.02, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        Vec m{u(rng), u(rng)};
        CHECK(is_positive_definite(hessian_ironed(p, m)));
        Vec back = psi_ironed_Z_inv(p, psi_ironed_Z(p, m));
        CHECK(std::abs(back[0] - m[0]) / m[0] < 1e-9);
        CHECK(std::abs(back[1] - m[1]) / m[1] < 1e-9);
    }
    // Gradient check: psi_ironed_Z is the gradient of potential_ironed_Z.
    Vec m{0.4, 0.7};
    Vec g = psi_ironed_Z(p, m);
    for (int j = 0; j < 2; ++j) {
        double h = 1e-6;
        Vec hi = m, lo = m;
        hi[j] += h;
        lo[j] -= h;
        double fd =
            (potential_ironed_Z(p, hi) - potential_ironed_Z(p, lo)) / (2 * h);
        CHECK(std::abs(fd - g[j]) < 1e-7);
    }
}

TEST_CASE("Legendre duality") {
    PotentialParams p = reference_params();
    // F(lambda) = lambda . psi^{-1}(lambda) - G(psi^{-1}(lambda)); its
    // gradient must be psi^{-1} itself.
    auto check_pair = [&](auto&& inv, auto&& G) {
        Vec lambda{0.1, -0.2};
        double h = 1e-5;
        auto F = [&](const Vec& l) {
            Vec m = inv(l);
            return l[0] * m[0] + l[1] * m[1] - G(m);
        };
        Vec m = inv(lambda);
        for (int j = 0; j < 2; ++j) {
            Vec hi = lambda, lo = lambda;
            hi[j] += h;
            lo[j] -= h;
            double fd = (F(hi) - F(lo)) / (2 * h);
            CHECK(std::abs(fd - m[j]) < 1e-6);
        }
    };
    check_pair([&](const Vec& l) { return psi_Z_inv(l); },
               [&](const Vec& m) { return potential_Z(m); });
    check_pair([&](const Vec& l) { return psi_Y_inv(p, l); },
               [&](const Vec& m) { return potential_Y(p, m); });
    check_pair([&](const Vec& l) { return psi_ironed_Z_inv(p, l); },
               [&](const Vec& m) { return potential_ironed_Z(p, m); });
}

TEST_CASE("containment: reference set, perturbations, guard") {
    PotentialParams p = reference_params();
    GridSpec grid = make_grid({25}, 1e-9);
    ContainmentReport rep = check_containment(p, grid);
    CHECK(rep.precondition_ok);
    CHECK(rep.pass);
    CHECK(rep.points_checked > 0);

    // Serial kernel agrees with the parallel one.
    ContainmentReport ser = check_containment(p, grid, false);
    CHECK(ser.pass == rep.pass);
    CHECK(ser.points_checked == rep.points_checked);
    CHECK(ser.worst_margin == doctest::Approx(rep.worst_margin).epsilon(1e-12));

    // r1 scaled x10 puts r1 R0 past R_bd: reported, not thrown.
    PotentialParams bad = p;
    bad.r1 = 20.0;
    ContainmentReport guard = check_containment(bad, grid);
    CHECK_FALSE(guard.precondition_ok);
    CHECK_FALSE(guard.pass);
    CHECK_FALSE(guard.message.empty());

    for (double f : {1.2, 0.8}) {
        PotentialParams q = p;
        q.S = p.S * f;
        CHECK(check_containment(q, grid).pass);
        q = p;
        q.r1 = p.r1 * f;
        CHECK(check_containment(q, grid).pass);
    }
    PotentialParams q = p;
    q.r2 = p.r2 * 1.2;
    CHECK(check_containment(q, grid).pass);
}

TEST_CASE("monotone interpolant h") {
    const double R = 6.0, an = 3.0, kappa = 2.0, eps = 0.5;
    const double t_hi = std::sqrt(R / (2 * an));
    const double t_lo = (eps / kappa) * std::sqrt(R / (3 * an));
    CHECK(monotone_h(R, an, kappa, eps, 0.0) == 0.0);
    CHECK(monotone_h(R, an, kappa, eps, 2 * t_hi) == 2 * t_hi);
    CHECK(monotone_h(R, an, kappa, eps, 0.5 * t_lo) ==
          doctest::Approx(kappa * 0.5 * t_lo / eps).epsilon(1e-14));
    // Continuity at the regime boundaries and strict monotonicity.
    CHECK(monotone_h(R, an, kappa, eps, t_hi - 1e-10) ==
          doctest::Approx(t_hi).epsilon(1e-8));
    CHECK(monotone_h(R, an, kappa, eps, t_lo + 1e-10) ==
          doctest::Approx(kappa * t_lo / eps).epsilon(1e-8));
    double prev = 0.0;
    for (int i = 1; i <= 400; ++i) {
        double t = 1.5 * t_hi * i / 400.0;
        double h = monotone_h(R, an, kappa, eps, t);
        CHECK(h > prev);
        prev = h;
    }
    // A steep ratio still brackets.
    CHECK_NOTHROW(monotone_h(R, an, 400.0, 0.01, 0.3 * t_hi));
    CHECK_THROWS_AS(monotone_h(R, an, 0.5, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(monotone_h(R, an, 2.0, 1.5, 1.0), DomainError);
}

TEST_CASE("grid CSV") {
    PotentialParams p = reference_params();
    std::string csv = potentials_grid_csv(p, make_grid({8}, 1e-9));
    CHECK(csv.rfind("m1,m2,lambda1,lambda2,mem\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') > 8);
}
