#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wseshadri/curve_models.hpp"
#include "wseshadri/potentials.hpp"
#include "wseshadri/svg.hpp"
#include "wseshadri/toricfan.hpp"

using namespace wseshadri;

namespace {

/* "a/b" is the weight pair (a, b); with as_slope it is the slope b/a. */
PrimVec2 parse_weights(const std::string& text, bool as_slope) {
    auto slash = text.find('/');
    require(slash != std::string::npos && slash > 0 &&
                slash + 1 < text.size(),
            "BadWeights", "weights must be given as 'a/b'");
    Integer x(text.substr(0, slash));
    Integer y(text.substr(slash + 1));
    if (as_slope) std::swap(x, y); // slope beta/alpha -> weights (alpha, beta)
    require(sgn(x) > 0 && sgn(y) > 0, "BadWeights",
            "weights must be positive");
    Integer g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    require(g == 1, "NonPrimitive", "weights must be coprime");
    return PrimVec2{x, y};
}

IntersectionProfile parse_profile(const std::string& text, const Rational& d,
                                  const Rational& d2) {
    IntersectionProfile prof;
    prof.d = d;
    prof.d_squared = d2;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        require(colon != std::string::npos, "BadProfile",
                "profile entries must be 'index:phi'");
        prof.entries[std::stoul(item.substr(0, colon))] =
            Integer(item.substr(colon + 1));
    }
    return prof;
}

CurveModel load_model(const std::string& name, const std::string& config) {
    if (!config.empty()) {
        std::ifstream in(config);
        require(in.good(), "BadParams", "cannot open config '" + config + "'");
        json j;
        in >> j;
        return model_from_json(j);
    }
    auto reg = builtin_models();
    auto it = reg.find(name);
    require(it != reg.end(), "BadParams", "unknown model '" + name + "'");
    return it->second;
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "BadParams", "cannot open output '" + path + "'");
    out << data;
}

json step_report_to_json(const StepReport& r) {
    json j;
    j["name"] = r.name;
    j["start_is_larger_root"] = r.start_ok;
    j["end_is_smaller_root"] = r.end_ok;
    j["continuous_at_break"] = r.continuity_ok;
    j["full_fill_at_start"] = r.full_fill_at_start_ok;
    json roots = json::array();
    for (const auto& [lo, hi] : r.roots)
        roots.push_back(json::array({quad_str(lo), quad_str(hi)}));
    j["piece_roots"] = roots;
    j["all_ok"] =
        r.start_ok && r.end_ok && r.continuity_ok && r.full_fill_at_start_ok;
    return j;
}

std::vector<Rational> slope_grid(const Rational& from, const Rational& to,
                                 std::size_t samples) {
    require(samples >= 2, "BadParams", "need at least two samples");
    require(from < to, "BadParams", "need from < to");
    std::vector<Rational> slopes;
    Rational span = to - from;
    for (std::size_t i = 0; i < samples; ++i)
        slopes.push_back(from + span * Rational(static_cast<long>(i)) /
                                    Rational(static_cast<long>(samples - 1)));
    return slopes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wses: weighted Seshadri constants of weighted blow-ups and "
                 "the ellipsoid embeddings they certify"};
    app.require_subcommand(1);
    bool error_json = false;
    app.add_flag("--error-json", error_json,
                 "emit domain errors as structured JSON on stdout");

    // resolve
    auto* c_resolve = app.add_subcommand(
        "resolve", "resolution chain of the weighted blow-up");
    std::string w_text;
    bool as_slope = false;
    c_resolve->add_option("--weights", w_text, "weight pair a/b")->required();
    c_resolve->add_flag("--as-slope", as_slope,
                        "interpret the argument as the slope b/a");

    // seshadri
    auto* c_ses = app.add_subcommand(
        "seshadri", "Seshadri report from a raw intersection profile");
    std::string ses_w, ses_profile, ses_d{"1"}, ses_d2{"1"}, ses_eps;
    bool ses_slope = false;
    c_ses->add_option("--weights", ses_w, "weight pair a/b")->required();
    c_ses->add_flag("--as-slope", ses_slope, "argument is the slope b/a");
    c_ses->add_option("--profile", ses_profile,
                      "chain intersections 'i:phi,i:phi,...'")
        ->required();
    c_ses->add_option("--d", ses_d, "normalizer d (D = A/d)");
    c_ses->add_option("--d2", ses_d2, "self-intersection D^2");
    c_ses->add_option("--eps-test", ses_eps,
                      "also emit the nef certificate at this epsilon");

    // model
    auto* c_model =
        app.add_subcommand("model", "evaluate or export a curve model");
    std::string mdl_name, mdl_config, mdl_w;
    bool mdl_slope = false, mdl_export = false, mdl_list = false;
    c_model->add_option("--name", mdl_name, "built-in model name");
    c_model->add_option("--config", mdl_config, "model config file (JSON)");
    c_model->add_option("--weights", mdl_w, "weight pair a/b");
    c_model->add_flag("--as-slope", mdl_slope, "argument is the slope b/a");
    c_model->add_flag("--export", mdl_export, "print the model as JSON");
    c_model->add_flag("--list", mdl_list, "list built-in model names");

    // table1
    auto* c_table =
        app.add_subcommand("table1", "the nine exceptional staircase steps");
    bool t_verify = false, t_literal = false;
    c_table->add_flag("--verify", t_verify, "run the exact verifications");
    c_table->add_flag("--literal-step2", t_literal,
                      "also verify the literal printed step-2 row");

    // sweep
    auto* c_sweep =
        app.add_subcommand("sweep", "evaluate a model over a slope grid");
    std::string sw_name, sw_config, sw_from, sw_to, sw_csv{"-"}, sw_svg;
    std::size_t sw_samples = 100;
    bool sw_serial = false;
    c_sweep->add_option("--name", sw_name, "built-in model name");
    c_sweep->add_option("--config", sw_config, "model config file (JSON)");
    c_sweep->add_option("--from", sw_from, "first slope p/q")->required();
    c_sweep->add_option("--to", sw_to, "last slope p/q")->required();
    c_sweep->add_option("--samples", sw_samples, "number of grid slopes");
    c_sweep->add_option("--csv", sw_csv, "CSV output path ('-' for stdout)");
    c_sweep->add_option("--svg", sw_svg,
                        "SVG output path for the (slope, packing) polyline");
    c_sweep->add_flag("--serial", sw_serial, "disable the parallel kernel");

    // farey
    auto* c_farey = app.add_subcommand(
        "farey", "path to a primitive vector in the Farey tree");
    std::string fa_target;
    c_farey->add_option("--target", fa_target, "target vector x/y")->required();

    // eie
    auto* c_eie = app.add_subcommand(
        "eie", "ellipsoid-in-ellipsoid targets E(k, l)");
    long eie_k = 0, eie_l = 0;
    std::string eie_w;
    bool eie_slope = false, eie_printed = false;
    c_eie->add_option("--k", eie_k, "target parameter k")->required();
    c_eie->add_option("--l", eie_l, "target parameter l")->required();
    c_eie->add_option("--weights", eie_w, "weight pair a/b")->required();
    c_eie->add_flag("--as-slope", eie_slope, "argument is the slope b/a");
    c_eie->add_flag("--printed-threshold", eie_printed,
                    "for k = 1, use the threshold 4 sqrt(l^2 - l)");

    // convergents
    auto* c_conv = app.add_subcommand(
        "convergents", "continued-fraction convergents of sqrt(n)");
    long conv_n = 0;
    std::size_t conv_count = 3;
    c_conv->add_option("--n", conv_n, "radicand")->required();
    c_conv->add_option("--count", conv_count, "how many convergents");

    // potentials
    auto* c_pot = app.add_subcommand(
        "potentials", "numerical checks of the toric Kahler potentials");
    double p_R0 = 1.0, p_Rbd = 12.0, p_S = 6.0, p_r1 = 2.0, p_r2 = 1.0,
           p_delta = 0.05, p_eta = 0.02;
    std::vector<double> p_a{2.0, 3.0};
    std::size_t p_grid = 50;
    double p_tol = 1e-9;
    std::string p_csv;
    bool p_serial = false;
    c_pot->add_option("--a", p_a, "weight vector");
    c_pot->add_option("--R0", p_R0, "inner radius");
    c_pot->add_option("--R-bd", p_Rbd, "outer radius");
    c_pot->add_option("--S", p_S, "target mem level (capacity S)");
    c_pot->add_option("--r1", p_r1, "scaling factor r1");
    c_pot->add_option("--r2", p_r2, "scaling factor r2");
    c_pot->add_option("--delta", p_delta, "smoothing offset delta");
    c_pot->add_option("--eta", p_eta, "smoothing half-width eta");
    c_pot->add_option("--grid", p_grid, "per-axis grid count");
    c_pot->add_option("--tolerance", p_tol, "containment tolerance");
    c_pot->add_option("--csv", p_csv, "dump the ironed image grid as CSV");
    c_pot->add_flag("--serial", p_serial, "disable the parallel kernel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_resolve) {
            ResolutionChain chain =
                chain_from_weights(parse_weights(w_text, as_slope));
            std::cout << chain_to_json(chain).dump(2) << '\n';
        } else if (*c_ses) {
            PrimVec2 w = parse_weights(ses_w, ses_slope);
            ResolutionChain chain = chain_from_weights(w);
            IntersectionProfile prof = parse_profile(
                ses_profile, rat_parse(ses_d), rat_parse(ses_d2));
            SeshadriReport rep = seshadri_eval(chain, prof);
            json j = report_to_json(rep);
            if (!ses_eps.empty()) {
                NefCertificate cert =
                    nef_certificate(rep, rat_parse(ses_eps));
                json cj;
                cj["pass"] = cert.pass;
                cj["eps_test"] = rat_str(cert.eps_test);
                cj["upsilon_dot_C"] = rat_str(cert.upsilon_dot_C);
                cj["upsilon_dot_Dtilde"] = rat_str(cert.upsilon_dot_Dtilde);
                cj["effectivity_slack"] = rat_str(cert.effectivity_slack);
                j["nef_certificate"] = cj;
            }
            std::cout << j.dump(2) << '\n';
        } else if (*c_model) {
            if (mdl_list) {
                json names = json::array();
                for (const auto& [name, model] : builtin_models())
                    names.push_back(name);
                std::cout << names.dump(2) << '\n';
                return 0;
            }
            CurveModel model = load_model(mdl_name, mdl_config);
            if (mdl_export) {
                std::cout << model_to_json(model).dump(2) << '\n';
                return 0;
            }
            require(!mdl_w.empty(), "BadParams",
                    "model evaluation needs --weights");
            SeshadriReport rep =
                model_eval(model, parse_weights(mdl_w, mdl_slope));
            std::cout << report_to_json(rep).dump(2) << '\n';
        } else if (*c_table) {
            auto reg = builtin_models();
            json rows = json::array();
            bool all_ok = true;
            for (int s = 1; s <= 9; ++s) {
                const CurveModel& step = reg.at("step" + std::to_string(s));
                if (t_verify) {
                    json row = step_report_to_json(verify_step(step));
                    all_ok = all_ok && row["all_ok"].get<bool>();
                    rows.push_back(std::move(row));
                } else {
                    rows.push_back(model_to_json(step));
                }
            }
            if (t_literal && t_verify)
                rows.push_back(
                    step_report_to_json(verify_step(reg.at("step2_literal"))));
            json out;
            out["steps"] = rows;
            out["note"] =
                "step 2 uses the corrected row: break +57/8 (not -57/8) and "
                "k2 = 121 (not 131); the literal printed row fails the "
                "continuity and end-root checks";
            if (t_verify) out["all_corrected_steps_ok"] = all_ok;
            std::cout << out.dump(2) << '\n';
        } else if (*c_sweep) {
            CurveModel model = load_model(sw_name, sw_config);
            std::vector<Rational> slopes = slope_grid(
                rat_parse(sw_from), rat_parse(sw_to), sw_samples);
            std::vector<SweepItem> items = sweep(model, slopes, !sw_serial);
            write_output(sw_csv, sweep_to_csv(items));
            if (!sw_svg.empty()) {
                std::vector<std::pair<double, double>> pts;
                for (const SweepItem& it : items)
                    if (it.in_domain)
                        pts.emplace_back(rat_double(it.slope),
                                         rat_double(it.report.packing_sup));
                SvgStyle style;
                style.title = "packing ratio vs slope: " + model.name;
                write_output(sw_svg, emit_svg(pts, style));
            }
        } else if (*c_farey) {
            PrimVec2 target = parse_weights(fa_target, false);
            FareyPath path = farey_path(target);
            json j;
            j["target"] =
                json::array({target.x.get_str(), target.y.get_str()});
            j["moves"] = path.moves;
            std::cout << j.dump(2) << '\n';
        } else if (*c_eie) {
            PrimVec2 w = parse_weights(eie_w, eie_slope);
            SeshadriReport rep =
                (eie_k == 1)
                    ? ellipsoid_in_ellipsoid_k1(Integer(eie_l), w, eie_printed)
                    : ellipsoid_in_ellipsoid(Integer(eie_k), Integer(eie_l),
                                             w);
            std::cout << report_to_json(rep).dump(2) << '\n';
        } else if (*c_conv) {
            json j = json::array();
            for (const Rational& q :
                 sqrt_convergents(Integer(conv_n), conv_count))
                j.push_back(rat_str(q));
            std::cout << j.dump(2) << '\n';
        } else if (*c_pot) {
            PotentialParams params = make_params(p_a, p_R0, p_Rbd, p_S, p_r1,
                                                 p_r2, p_delta, p_eta);
            GridSpec grid = make_grid({p_grid}, p_tol);
            if (!p_csv.empty())
                write_output(p_csv, potentials_grid_csv(params, grid));
            ContainmentReport rep =
                check_containment(params, grid, !p_serial);
            std::cout << containment_to_json(rep).dump(2) << '\n';
            if (!rep.pass) return 1;
        }
    } catch (const DomainError& e) {
        if (error_json) {
            json j;
            j["error"] = e.code();
            j["message"] = e.what();
            std::cout << j.dump(2) << '\n';
        } else {
            std::cerr << "error: " << e.what() << '\n';
        }
        return 1;
    }
    return 0;
}
