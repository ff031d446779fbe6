#include "wseshadri/curve_models.hpp"

#include <cstdlib>
#include <sstream>

#include <omp.h>

namespace wseshadri {

int effective_threads() {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("SESHADRI_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0 && cap < n) n = cap;
    }
    return n;
}

bool piece_contains(const ModelPiece& piece, const Rational& slope) {
    QuadExt s = quad_from_rat(slope);
    int lo = quad_cmp(s, piece.lo.value);
    if (piece.lo.closed ? lo < 0 : lo <= 0) return false;
    int hi = quad_cmp(s, piece.hi.value);
    if (piece.hi.closed ? hi > 0 : hi >= 0) return false;
    return true;
}

std::size_t find_piece(const CurveModel& model, const Rational& slope) {
    for (std::size_t i = 0; i < model.pieces.size(); ++i)
        if (piece_contains(model.pieces[i], slope)) return i;
    return model.pieces.size();
}

PrimVec2 weights_from_slope(const Rational& slope) {
    require(sgn(slope) > 0, "BadParams", "slope must be positive");
    return PrimVec2{Integer(slope.get_den()), Integer(slope.get_num())};
}

SeshadriReport model_eval(const CurveModel& model, const PrimVec2& weights) {
    const Rational alpha(weights.x), beta(weights.y);
    const Rational slope = beta / alpha;
    std::size_t idx = find_piece(model, slope);
    require(idx < model.pieces.size(), "SlopeOutsideModel",
            "slope " + rat_str(slope) + " outside model '" + model.name + "'");
    const ModelPiece& piece = model.pieces[idx];
    Rational cd = (piece.k / beta + piece.l / alpha) / model.d;
    return report_from_cd(weights, cd, model.d_squared);
}

namespace {

SlopeBound closed_bound(const Rational& v) { return {quad_from_rat(v), true}; }
SlopeBound open_bound_q(const QuadExt& v) { return {v, false}; }

CurveModel make_step(const std::string& name, long d, const SlopeBound& start,
                     long k1, long l1, const Rational& brk, long k2, long l2,
                     const QuadExt& end) {
    CurveModel m;
    m.name = name;
    m.d = Rational(d);
    m.pieces.push_back(
        {start, closed_bound(brk), Rational(k1), Rational(l1)});
    m.pieces.push_back(
        {closed_bound(brk), SlopeBound{end, true}, Rational(k2), Rational(l2)});
    return m;
}

} // namespace

CurveModel unicuspidal_model(const Integer& p, const Integer& q,
                             const Integer& d, const std::string& name) {
    CurveModel m;
    m.name = name;
    m.d = Rational(d);
    Rational lo = Rational(d * d) / Rational(q * q);
    Rational mid = Rational(p) / Rational(q);
    Rational hi = Rational(p * p) / Rational(d * d);
    if (lo < mid) // first piece [d^2/q^2, p/q) with (0, q); empty when equal
        m.pieces.push_back({closed_bound(lo), {quad_from_rat(mid), false},
                            Rational(0), Rational(q)});
    m.pieces.push_back(
        {closed_bound(mid), closed_bound(hi), Rational(p), Rational(0)});
    return m;
}

CurveModel opshtein_model(const Integer& d) {
    CurveModel m;
    m.name = "opshtein_d" + d.get_str();
    m.d = Rational(d);
    Rational s(d * d);
    m.pieces.push_back({closed_bound(s), closed_bound(s), Rational(d * d),
                        Rational(0)});
    return m;
}

std::map<std::string, CurveModel> builtin_models() {
    std::map<std::string, CurveModel> reg;
    auto add = [&](CurveModel m) { reg[m.name] = std::move(m); };

    auto irr = [](long a_num, long a_den, long b_num, long b_den, long n) {
        return quad(rat(a_num, a_den), rat(b_num, b_den), Integer(n));
    };

    add(make_step("step1", 3, open_bound_q(irr(7, 2, 3, 2, 5)), 1, 1,
                  Rational(7), 8, 0, quad_from_rat(rat(64, 9))));
    add(make_step("step2", 48, open_bound_q(irr(1033, 289, 48, 289, 457)), 7,
                  17, rat(57, 8), 121, 1, irr(1031, 1, -48, 1, 455)));
    add(make_step("step2_literal", 48,
                  open_bound_q(irr(1033, 289, 48, 289, 457)), 7, 17,
                  rat(-57, 8), 131, 1, irr(1031, 1, -48, 1, 455)));
    add(make_step("step3", 64, open_bound_q(irr(435, 121, 32, 121, 179)), 14,
                  22, rat(107, 15), 121, 7, irr(1201, 49, -64, 49, 177)));
    add(make_step("step4", 24, open_bound_q(irr(29, 8, 6, 8, 22)), 7, 8,
                  rat(50, 7), 57, 1, irr(231, 1, -24, 1, 87)));
    add(make_step("step5", 40, open_bound_q(irr(618, 169, 40, 169, 218)), 14,
                  13, rat(93, 13), 107, 0, quad_from_rat(rat(11449, 1600))));
    add(make_step("step6", 16, open_bound_q(irr(93, 25, 16, 25, 29)), 7, 5,
                  rat(36, 5), 43, 0, quad_from_rat(rat(1849, 256))));
    add(make_step("step7", 35, closed_bound(rat(1225, 169)), 0, 13, rat(29, 4),
                  87, 1, irr(1051, 2, -35, 2, 877)));
    add(make_step("step8", 8, open_bound_q(irr(9, 2, 2, 1, 2)), 7, 2,
                  rat(15, 2), 22, 0, quad_from_rat(rat(121, 16))));
    add(make_step("step9", 6, open_bound_q(irr(4, 1, 3, 2, 7)), 1, 2,
                  Rational(8), 17, 0, quad_from_rat(rat(289, 36))));

    // Nodal cubic on its full slope range (the step-1 data extends to s > 6).
    {
        CurveModel m;
        m.name = "nodal_cubic";
        m.d = Rational(3);
        m.pieces.push_back({{quad_from_rat(Rational(6)), false},
                            closed_bound(Rational(7)), Rational(1), Rational(1)});
        m.pieces.push_back({closed_bound(Rational(7)), closed_bound(rat(64, 9)),
                            Rational(8), Rational(0)});
        add(std::move(m));
    }

    // Fibonacci unicuspidal family: (p,q,d) = (F_{2k+5}, F_{2k+1}, F_{2k+3}).
    auto fib = [](int n) {
        Integer a = 1, b = 1; // F_1, F_2
        for (int i = 2; i < n; ++i) {
            Integer c = a + b;
            a = b;
            b = c;
        }
        return (n == 1) ? Integer(1) : b;
    };
    for (int k = 1; k <= 5; ++k)
        add(unicuspidal_model(fib(2 * k + 5), fib(2 * k + 1), fib(2 * k + 3),
                              "fibonacci_k" + std::to_string(k)));

    add(unicuspidal_model(Integer(64), Integer(9), Integer(24),
                          "genus1_unicuspidal"));
    add(opshtein_model(Integer(2)));
    add(opshtein_model(Integer(3)));

    {
        CurveModel m;
        m.name = "slope10_sextic";
        m.d = Rational(6);
        m.pieces.push_back({closed_bound(Rational(10)), closed_bound(Rational(10)),
                            Rational(19), Rational(0)});
        add(std::move(m));
    }
    return reg;
}

namespace {

/* Roots of l^2 s^2 + (2kl - d^2) s + k^2 = 0; for l = 0 the equation is
 * linear with the single root k^2/d^2 (returned as an equal pair), and for
 * k = 0 the roots are 0 and d^2/l^2. */
std::pair<QuadExt, QuadExt> step_boundary_roots(const Rational& k,
                                                const Rational& l,
                                                const Rational& d) {
    Rational dd = d * d;
    if (sgn(l) == 0) {
        QuadExt r = quad_from_rat(k * k / dd);
        return {r, r};
    }
    return quad_roots(l * l, 2 * k * l - dd, k * k);
}

bool substitution_is_zero(const Rational& k, const Rational& l,
                          const Rational& d, const QuadExt& s) {
    QuadExt value =
        quad_eval_poly({l * l, 2 * k * l - d * d, k * k}, s);
    return quad_sign(value) == 0;
}

} // namespace

StepReport verify_step(const CurveModel& step) {
    require(step.pieces.size() == 2, "MalformedStep",
            "step verification requires exactly two pieces");
    const ModelPiece& p1 = step.pieces[0];
    const ModelPiece& p2 = step.pieces[1];
    StepReport rep;
    rep.name = step.name;
    rep.roots.push_back(step_boundary_roots(p1.k, p1.l, step.d));
    rep.roots.push_back(step_boundary_roots(p2.k, p2.l, step.d));

    rep.start_ok = quad_cmp(p1.lo.value, rep.roots[0].second) == 0 &&
                   substitution_is_zero(p1.k, p1.l, step.d, p1.lo.value);
    rep.end_ok = quad_cmp(p2.hi.value, rep.roots[1].first) == 0 &&
                 substitution_is_zero(p2.k, p2.l, step.d, p2.hi.value);

    // Continuity at the break: both pieces must meet and agree there.
    rep.continuity_ok = quad_cmp(p1.hi.value, p2.lo.value) == 0;
    if (rep.continuity_ok) {
        QuadExt brk = p1.hi.value;
        QuadExt left = quad_from_rat(p1.k) + quad_from_rat(p1.l) * brk;
        QuadExt right = quad_from_rat(p2.k) + quad_from_rat(p2.l) * brk;
        rep.continuity_ok = quad_cmp(left, right) == 0;
    }

    // Full filling at the start: D^2 d^2 s = (k + l s)^2 exactly.
    {
        QuadExt s = p1.lo.value;
        QuadExt kls = quad_from_rat(p1.k) + quad_from_rat(p1.l) * s;
        QuadExt lhs = quad_from_rat(step.d_squared * step.d * step.d) * s;
        rep.full_fill_at_start_ok = quad_cmp(lhs, kls * kls) == 0;
    }
    return rep;
}

std::vector<SweepItem> sweep(const CurveModel& model,
                             const std::vector<Rational>& slopes,
                             bool parallel) {
    std::vector<SweepItem> items(slopes.size());
    const int threads = parallel ? effective_threads() : 1;
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (long long n = 0; n < static_cast<long long>(slopes.size()); ++n) {
        SweepItem& item = items[n];
        item.slope = slopes[n];
        std::size_t idx = find_piece(model, item.slope);
        if (idx == model.pieces.size()) {
            item.in_domain = false;
            item.note = "slope outside model domain; skipped";
            continue;
        }
        item.in_domain = true;
        item.k = model.pieces[idx].k;
        item.l = model.pieces[idx].l;
        item.report = model_eval(model, weights_from_slope(item.slope));
    }
    return items;
}

QuadExt eie_threshold(const Integer& k, const Integer& l) {
    Rational kl = Rational(k) * Rational(l);
    Integer rad = k * k * l * l - 4 * k * l;
    return quad((kl - 2) / 2, rat(1, 2), rad);
}

SeshadriReport ellipsoid_in_ellipsoid(const Integer& k, const Integer& l,
                                      const PrimVec2& weights) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), l.get_mpz_t());
    require(g == 1, "BadWeights", "target parameters must be coprime");
    require(k >= 2 && k < l, "BadWeights", "need 2 <= k < l");
    const Rational alpha(weights.x), beta(weights.y);
    Rational slope = beta / alpha;
    require(quad_cmp(quad_from_rat(slope), eie_threshold(k, l)) > 0,
            "BelowThreshold",
            "slope " + rat_str(slope) + " is not above the exact threshold");
    Rational cd = (alpha + beta) / (alpha * beta);
    return report_from_cd(weights, cd, Rational(k) * Rational(l));
}

QuadExt eie_k1_threshold(const Integer& l, bool printed_threshold) {
    Integer rad = l * l - l;
    if (printed_threshold) return quad(Rational(0), Rational(4), rad);
    return quad(Rational(2 * l - 1), Rational(2), rad);
}

SeshadriReport ellipsoid_in_ellipsoid_k1(const Integer& l,
                                         const PrimVec2& weights,
                                         bool printed_threshold) {
    require(l >= 2, "BadWeights", "need l >= 2");
    const Rational alpha(weights.x), beta(weights.y);
    Rational slope = beta / alpha;
    require(quad_cmp(quad_from_rat(slope),
                     eie_k1_threshold(l, printed_threshold)) > 0,
            "BelowThreshold",
            "slope " + rat_str(slope) + " is not above the exact threshold");
    Rational cd = (alpha + beta) / (2 * alpha * beta);
    return report_from_cd(weights, cd, Rational(l));
}

std::vector<Rational> sqrt_convergents(const Integer& n, std::size_t count) {
    require(sgn(n) > 0, "BadParams", "n must be positive");
    Integer a0;
    mpz_sqrt(a0.get_mpz_t(), n.get_mpz_t());
    require(a0 * a0 != n, "PerfectSquare",
            n.get_str() + " is a perfect square");
    std::vector<Rational> out;
    Integer m = 0, d = 1, a = a0;
    Integer h_prev = 1, h = a0, k_prev = 0, k = 1;
    while (out.size() < count) {
        m = d * a - m;
        d = (n - m * m) / d;
        a = (a0 + m) / d;
        Integer h_next = a * h + h_prev;
        Integer k_next = a * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        if (k > 1) out.emplace_back(Rational(h) / Rational(k));
    }
    return out;
}

namespace {

SlopeBound bound_from_json(const json& piece, const std::string& key,
                           bool default_closed) {
    SlopeBound b;
    b.value = quad_parse(piece.at(key).get<std::string>());
    b.closed = piece.value(key + "_closed", default_closed);
    return b;
}

} // namespace

CurveModel model_from_json(const json& j) {
    CurveModel m;
    m.name = j.at("name").get<std::string>();
    m.d = rat_parse(j.at("d").get<std::string>());
    if (j.contains("d_squared"))
        m.d_squared = rat_parse(j.at("d_squared").get<std::string>());
    for (const json& pj : j.at("pieces")) {
        ModelPiece p;
        p.lo = bound_from_json(pj, "lo", true);
        p.hi = bound_from_json(pj, "hi", true);
        p.k = rat_parse(pj.at("k").get<std::string>());
        p.l = rat_parse(pj.at("l").get<std::string>());
        require(sgn(p.k) >= 0 && sgn(p.l) >= 0 &&
                    !(sgn(p.k) == 0 && sgn(p.l) == 0),
                "BadModel", "piece needs k, l >= 0 and (k,l) != (0,0)");
        m.pieces.push_back(std::move(p));
    }
    require(!m.pieces.empty(), "BadModel", "model has no pieces");
    return m;
}

json model_to_json(const CurveModel& m) {
    json j;
    j["name"] = m.name;
    j["d"] = rat_str(m.d);
    j["d_squared"] = rat_str(m.d_squared);
    json pieces = json::array();
    for (const ModelPiece& p : m.pieces) {
        json pj;
        pj["lo"] = quad_str(p.lo.value);
        pj["lo_closed"] = p.lo.closed;
        pj["hi"] = quad_str(p.hi.value);
        pj["hi_closed"] = p.hi.closed;
        pj["k"] = rat_str(p.k);
        pj["l"] = rat_str(p.l);
        pieces.push_back(std::move(pj));
    }
    j["pieces"] = pieces;
    return j;
}

std::string sweep_to_csv(const std::vector<SweepItem>& items) {
    std::ostringstream out;
    out << "slope,alpha,beta,k,l,cd,delta,eps_upper,eps,regime,"
           "sigma1_sup,sigma2_sup,packing,"
           "slope_float,cd_float,delta_float,eps_upper_float,eps_float,"
           "sigma1_float,sigma2_float,packing_float\n";
    for (const SweepItem& it : items) {
        if (!it.in_domain) continue;
        const SeshadriReport& r = it.report;
        out << rat_str(it.slope) << ',' << r.weights.x.get_str() << ','
            << r.weights.y.get_str() << ',' << rat_str(it.k) << ','
            << rat_str(it.l) << ',' << rat_str(r.cd) << ','
            << rat_str(r.delta) << ',' << rat_str(r.eps_upper) << ','
            << rat_str(r.eps) << ',' << regime_name(r.regime) << ','
            << rat_str(r.sigma_sup.first) << ',' << rat_str(r.sigma_sup.second)
            << ',' << rat_str(r.packing_sup) << ','
            << float_str(rat_double(it.slope)) << ','
            << float_str(rat_double(r.cd)) << ','
            << float_str(rat_double(r.delta)) << ','
            << float_str(rat_double(r.eps_upper)) << ','
            << float_str(rat_double(r.eps)) << ','
            << float_str(rat_double(r.sigma_sup.first)) << ','
            << float_str(rat_double(r.sigma_sup.second)) << ','
            << float_str(rat_double(r.packing_sup)) << '\n';
    }
    return out.str();
}

} // namespace wseshadri
