#include "germforge/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "germforge/figures.hpp"
#include "germforge/io.hpp"

namespace germforge {

namespace {

struct LoadedModulus {
    ModulusDescriptor descriptor;
    std::optional<ModulusPipelineResult> pipeline; // set when the input was a germ
};

json pipeline_summary(const ModulusPipelineResult& res) {
    return json{{"k", res.params.k},
                {"b", json::array({std::real(res.params.b), std::imag(res.params.b)})},
                {"alternating_sum_residual", res.alternating_sum_residual},
                {"seam_residual", res.seam_residual},
                {"calibration_correction", res.calibration_correction},
                {"abel_residual", res.abel_residual}};
}

LoadedModulus load_modulus_input(const std::string& path, const RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw domain_error("parse error in " + path + ": " + e.what());
    }
    LoadedModulus out;
    if (looks_like_modulus_file(j)) {
        out.descriptor = parse_modulus_json(j);
        if (out.descriptor.noise_floor <= 0.0) out.descriptor.noise_floor = cfg.zero_floor;
    } else {
        auto germ = parse_germ_json(j);
        out.pipeline = compute_modulus(germ, to_pipeline_config(cfg));
        out.descriptor = out.pipeline->descriptor;
    }
    return out;
}

void emit(const json& report, const RunConfig& cfg, std::ostream& out) {
    ensure_finite_json(report, "report");
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        if (!f) throw pipeline_error("io", "cannot write file: " + cfg.out_path);
        if (cfg.format == "json")
            f << report.dump(2) << "\n";
        else
            render_report(f, report, cfg.format);
    } else {
        render_report(out, report, cfg.format);
    }
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--order", cfg.order, "jet order used by the pipeline");
    cmd->add_option("--tol", cfg.zero_floor, "zero threshold for synthetic tables");
    cmd->add_option("--height", cfg.quad_height, "quadrature line height |Im W|");
    cmd->add_option("--samples", cfg.quad_samples, "quadrature sample count");
    cmd->add_option("--nmax", cfg.n_max, "number of Fourier harmonics");
    cmd->add_option("--delta", cfg.delta, "petal radius (0 = automatic)");
    cmd->add_option("--out", cfg.out_path, "write the report (or file output) here");
    cmd->add_option("--format", cfg.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

const char* type_sign_name(TypeSign t) {
    switch (t) {
        case TypeSign::positive: return "positive";
        case TypeSign::negative: return "negative";
        default: return "n/a";
    }
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"germforge: formal and analytic invariants of parabolic germs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a TOML/INI file (flags win)");

    RunConfig cfg;
    std::string germ_path, germ_path2, modulus_path, out_prefix;
    std::pair<double, double> z0{0.1, 0.0};
    int steps = 50;
    int root_n = 2;

    auto* analyze = app.add_subcommand("analyze", "codimension, type and formal invariant");
    analyze->add_option("germ", germ_path, "germ file")->required();
    add_common_options(analyze, cfg);

    auto* prenorm = app.add_subcommand("prenormalize", "write the prenormalized germ");
    prenorm->add_option("germ", germ_path, "germ file")->required();
    add_common_options(prenorm, cfg);

    auto* modulus = app.add_subcommand("modulus", "compute the modulus of classification");
    modulus->add_option("germ", germ_path, "germ file")->required();
    add_common_options(modulus, cfg);

    auto* decide = app.add_subcommand("decide", "coefficient-level decisions on the modulus");
    decide->require_subcommand(1);
    auto* d_embed = decide->add_subcommand("embeddable", "is the germ conjugate to its normal form");
    auto* d_real = decide->add_subcommand("real-curve", "is a real analytic curve preserved");
    auto* d_root = decide->add_subcommand("root", "antiholomorphic n-th roots");
    auto* d_cent = decide->add_subcommand("centralizer", "centralizer structure");
    for (auto* sub : {d_embed, d_real, d_root, d_cent}) {
        sub->add_option("input", modulus_path, "germ or modulus file")->required();
        add_common_options(sub, cfg);
    }
    d_root->add_option("--n", root_n, "root order")->required();

    auto* compare = app.add_subcommand("compare", "numerical conjugacy test of two germs");
    compare->add_option("germ1", germ_path, "first germ file")->required();
    compare->add_option("germ2", germ_path2, "second germ file")->required();
    add_common_options(compare, cfg);

    auto* invmod = app.add_subcommand("inverse-modulus", "modulus of the inverse germ");
    invmod->add_option("modulus", modulus_path, "modulus (or germ) file")->required();
    add_common_options(invmod, cfg);

    auto* orbit = app.add_subcommand("orbit", "trace an orbit and render petals");
    orbit->add_option("germ", germ_path, "germ file")->required();
    orbit->add_option("--z0", z0, "starting point re,im")->delimiter(',');
    orbit->add_option("--steps", steps, "number of iterates");
    orbit->add_option("--figure", out_prefix, "output prefix for .csv and .svg");
    add_common_options(orbit, cfg);

    std::vector<std::string> argv_copy = args;
    try {
        std::vector<const char*> argv;
        argv.push_back("germforge");
        for (auto& a : argv_copy) argv.push_back(a.c_str());
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::stringstream dummy;
        const int code = app.exit(e, dummy, dummy);
        (err << dummy.str()).flush();
        return code;
    }

    try {
        json report;
        report["config"] = config_to_json(cfg);

        if (*analyze) {
            auto germ = parse_germ_file(germ_path);
            if (cfg.order > germ.order()) germ = germ.truncated(cfg.order);
            auto cls = classify(germ);
            report["command"] = "analyze";
            report["input"] = germ_path;
            report["kind"] = germ.anti() ? "antiholomorphic" : "holomorphic";
            report["degenerate"] = cls.degenerate;
            if (cls.degenerate) {
                report["note"] = "conjugate to the complex conjugation at this order";
            } else {
                report["codimension"] = cls.k;
                report["type"] = type_sign_name(cls.type_sign);
                report["b"] = json::array({std::real(cls.b), std::imag(cls.b)});
            }
            emit(report, cfg, out);
            return 0;
        }

        if (*prenorm) {
            auto germ = parse_germ_file(germ_path);
            if (cfg.order > germ.order()) germ = germ.truncated(cfg.order);
            auto res = prenormalize(germ);
            report["command"] = "prenormalize";
            report["input"] = germ_path;
            report["k"] = res.params.k;
            report["b"] = json::array({std::real(res.params.b), std::imag(res.params.b)});
            report["change"] = germ_to_json(res.change);
            report["prenormalized"] = germ_to_json(res.prenormalized);
            emit(report, cfg, out);
            if (!cfg.out_path.empty()) {
                // --out already holds the report; the germ file goes next to it
                write_germ_file(cfg.out_path + ".germ.json", res.prenormalized);
            }
            return 0;
        }

        if (*modulus) {
            auto germ = parse_germ_file(germ_path);
            auto res = compute_modulus(germ, to_pipeline_config(cfg));
            report["command"] = "modulus";
            report["input"] = germ_path;
            report["pipeline"] = pipeline_summary(res);
            report["modulus"] = modulus_to_json(res.descriptor);
            emit(report, cfg, out);
            return 0;
        }

        if (*decide) {
            LoadedModulus lm = load_modulus_input(modulus_path, cfg);
            report["input"] = modulus_path;
            if (lm.pipeline) report["pipeline"] = pipeline_summary(*lm.pipeline);
            DecisionReport rep;
            if (*d_embed) {
                report["command"] = "decide embeddable";
                rep = decide_embeddable(lm.descriptor);
            } else if (*d_real) {
                report["command"] = "decide real-curve";
                rep = lm.descriptor.kind == ModulusKind::antiholomorphic
                          ? decide_real_curve_f(lm.descriptor)
                          : decide_real_curve_g(lm.descriptor);
            } else if (*d_root) {
                report["command"] = "decide root";
                if (root_n % 2 == 0) {
                    const ModulusDescriptor full =
                        lm.descriptor.kind == ModulusKind::holomorphic
                            ? lm.descriptor
                            : to_full_table(lm.descriptor);
                    auto rr = decide_antiholo_root_g(full, root_n);
                    rep = rr.base;
                    report["axes"] = rr.axes;
                    report["independent_transitions"] = rr.independent_transitions;
                } else {
                    rep = decide_antiholo_root_f(lm.descriptor, root_n);
                }
                report["n"] = root_n;
            } else {
                report["command"] = "decide centralizer";
                auto cr = centralizer(lm.descriptor);
                rep = cr.base;
                rep.case_tag = cr.case_tag;
                report["embeddable"] = cr.embeddable;
                report["max_order"] = cr.max_order;
                report["divisors"] = cr.divisor_lattice;
                report["schwarz_reflection"] = cr.schwarz_reflection;
                report["conditions"] = cr.conditions_checked;
            }
            report["decision"] = decision_to_json(rep);
            emit(report, cfg, out);
            return 0;
        }

        if (*compare) {
            auto f1 = parse_germ_file(germ_path);
            auto f2 = parse_germ_file(germ_path2);
            auto res = conjugacy_check(f1, f2, to_pipeline_config(cfg));
            report["command"] = "compare";
            report["inputs"] = json::array({germ_path, germ_path2});
            report["first"] = pipeline_summary(res.first);
            report["second"] = pipeline_summary(res.second);
            report["decision"] = decision_to_json(res.report);
            emit(report, cfg, out);
            return 0;
        }

        if (*invmod) {
            LoadedModulus lm = load_modulus_input(modulus_path, cfg);
            ModulusDescriptor full = lm.descriptor.kind == ModulusKind::holomorphic
                                         ? lm.descriptor
                                         : to_full_table(lm.descriptor);
            auto inv = modulus_of_inverse(full);
            report["command"] = "inverse-modulus";
            report["input"] = modulus_path;
            report["modulus"] = modulus_to_json(inv);
            emit(report, cfg, out);
            return 0;
        }

        if (*orbit) {
            auto germ = parse_germ_file(germ_path);
            auto cls = classify(germ);
            if (cls.degenerate)
                throw pipeline_error("orbit", "degenerate germ has no petal structure");
            VectorFieldParams p{cls.k, germ.anti() ? cplx(std::real(cls.b)) : cls.b};
            const double delta = cfg.delta > 0.0 ? cfg.delta : default_delta(p);
            auto trace = orbit_trace(germ, p, cplx(z0.first, z0.second), steps);
            report["command"] = "orbit";
            report["input"] = germ_path;
            report["k"] = p.k;
            report["steps_recorded"] = trace.steps.size();
            report["left_neighbourhood"] = trace.left_neighbourhood;
            if (!out_prefix.empty()) {
                write_text_file(out_prefix + ".csv", orbit_csv(trace));
                write_text_file(out_prefix + ".svg", petal_figure_svg(p, delta, &trace));
                report["csv"] = out_prefix + ".csv";
                report["svg"] = out_prefix + ".svg";
            } else {
                report["csv_inline"] = orbit_csv(trace);
            }
            emit(report, cfg, out);
            return 0;
        }
    } catch (const pipeline_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const germ_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand executed\n";
    return 2;
}

} // namespace germforge
