// Command-line front end: each verb loads a config, runs the matching
// pipeline, writes a deterministic data table, and prints a one-line
// key=value summary on stdout. Exit codes: 0 ok, 1 config, 2 numeric, 3 data.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "aptfwm/apt_core.hpp"
#include "aptfwm/config.hpp"
#include "aptfwm/dataset.hpp"
#include "aptfwm/detection.hpp"
#include "aptfwm/fit.hpp"
#include "aptfwm/lossy.hpp"
#include "aptfwm/physical.hpp"
#include "aptfwm/sweeps.hpp"
#include "aptfwm/table.hpp"

using namespace aptfwm;

namespace {

std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return s;
}

std::vector<std::string> table_comments(const RunConfig& cfg, const std::string& verb) {
    std::vector<std::string> lines;
    lines.push_back("aptfwm " + verb);
    for (const auto& [key, value] : cfg.echo) {
        lines.push_back(key + " = " + value);
    }
    return lines;
}

SweepSettings settings_of(const RunConfig& cfg) {
    SweepSettings s;
    s.n_p0 = cfg.n_p0;
    s.detector = cfg.detector;
    s.ep_tolerance = cfg.ep_tolerance;
    return s;
}

struct VerbOutput {
    OutputTable table;
    std::string summary;
};

VerbOutput run_eigen(const RunConfig& cfg) {
    VerbOutput out;
    if (cfg.has_sweep) {
        out.table.columns = {axis_column(cfg.axis), "lambda_re_rad_per_m",
                             "lambda_im_rad_per_m", "beta", "regime"};
        const auto grid = cfg.grid();
        int transitions = 0;
        Regime last = Regime::SymmetryBroken;
        bool first = true;
        for (const double v : grid) {
            EffectiveModel m = effective_from_physical(at_axis_value(cfg.physical, cfg.axis, v));
            m.alpha = 0.0;
            const Spectrum sp = spectrum(m, cfg.ep_tolerance);
            add_row(out.table,
                    {format_double(v), format_double(sp.lambda_plus.real()),
                     format_double(sp.lambda_plus.imag()), format_double(sp.beta),
                     to_string(sp.regime)});
            if (!first && sp.regime != last && sp.regime != Regime::ExceptionalPoint &&
                last != Regime::ExceptionalPoint) {
                ++transitions;
            }
            if (first || sp.regime != Regime::ExceptionalPoint) last = sp.regime;
            first = false;
        }
        out.summary = "points=" + format_int(static_cast<long>(grid.size())) +
                      " regime_transitions=" + format_int(transitions);
        return out;
    }
    EffectiveModel m = cfg.point_model();
    m.alpha = 0.0;
    const Spectrum sp = spectrum(m, cfg.ep_tolerance);
    out.table.columns = {"lambda_re_rad_per_m", "lambda_im_rad_per_m", "beta", "regime"};
    add_row(out.table,
            {format_double(sp.lambda_plus.real()), format_double(sp.lambda_plus.imag()),
             format_double(sp.beta), to_string(sp.regime)});
    out.summary = std::string("regime=") + to_string(sp.regime) +
                  " beta=" + format_double(sp.beta);
    return out;
}

VerbOutput run_propagate(const RunConfig& cfg) {
    const EffectiveModel m = cfg.point_model();
    const auto mean = propagate_mean(build_lossy_generator(m), m.length, MomentState());
    const GainReport g = gains(mean.effective);
    VerbOutput out;
    out.table.columns = {"a_re", "a_im", "c_re", "c_im",
                         "g_p", "g_s", "g_p_norm", "g_s_norm"};
    add_row(out.table,
            {format_double(mean.effective.a.real()), format_double(mean.effective.a.imag()),
             format_double(mean.effective.c.real()), format_double(mean.effective.c.imag()),
             format_double(g.g_p), format_double(g.g_s), format_double(g.g_p_norm),
             format_double(g.g_s_norm)});
    out.summary = "g_p=" + format_double(g.g_p) + " g_s=" + format_double(g.g_s) +
                  " g_p_norm=" + format_double(g.g_p_norm);
    return out;
}

VerbOutput run_noise(const RunConfig& cfg) {
    const EffectiveModel m = cfg.point_model();
    const MomentState state = propagate_moments(build_lossy_generator(m), m.length,
                                                vacuum_seed(cfg.n_p0));
    const VarianceReport lossy = variance_diff_photon(state, cfg.n_p0);
    const VarianceReport det = detected_squeezing(state, cfg.detector, cfg.n_p0);
    VerbOutput out;
    out.table.columns = {"mean_np_photons",       "mean_ns_photons",
                         "coherent_var_photons2", "langevin_var_photons2",
                         "total_var_photons2",    "s_lossy",
                         "s_lossy_db",            "s_detected",
                         "s_detected_db",         "bright_seed_warning"};
    add_row(out.table,
            {format_double(lossy.mean_np), format_double(lossy.mean_ns),
             format_double(lossy.coherent_term), format_double(lossy.langevin_term),
             format_double(lossy.total_var), format_double(lossy.squeezing_s),
             format_double(lossy.squeezing_db), format_double(det.squeezing_s),
             format_double(det.squeezing_db), format_bool(lossy.bright_seed_warning)});
    out.summary = "s_lossy_db=" + format_double(lossy.squeezing_db) +
                  " s_detected_db=" + format_double(det.squeezing_db);
    return out;
}

VerbOutput run_sweep(const RunConfig& cfg) {
    if (!cfg.has_sweep) throw ConfigError("sweep verb needs a [sweep] section");
    const auto records = sweep(cfg.physical, cfg.axis, cfg.grid(), settings_of(cfg));
    VerbOutput out;
    out.table.columns = {axis_column(cfg.axis),
                         "lambda_re_rad_per_m",
                         "lambda_im_rad_per_m",
                         "g_p",
                         "g_s",
                         "g_p_norm",
                         "g_s_norm",
                         "s_ideal",
                         "s_ideal_db",
                         "s_lossy",
                         "s_lossy_db",
                         "s_detected",
                         "s_detected_db",
                         "regime",
                         "status"};
    long failed = 0;
    for (const auto& rec : records) {
        add_row(out.table,
                {format_double(rec.param_value), format_double(rec.lambda_re),
                 format_double(rec.lambda_im), format_double(rec.g_p),
                 format_double(rec.g_s), format_double(rec.g_p_norm),
                 format_double(rec.g_s_norm), format_double(rec.s_ideal),
                 format_double(rec.s_ideal_db), format_double(rec.s_lossy),
                 format_double(rec.s_lossy_db), format_double(rec.s_detected),
                 format_double(rec.s_detected_db), to_string(rec.regime),
                 rec.ok ? "ok" : sanitize("failed: " + rec.error)});
        if (!rec.ok) ++failed;
    }
    out.summary = "points=" + format_int(static_cast<long>(records.size())) +
                  " failed=" + format_int(failed);
    return out;
}

VerbOutput run_ep(const RunConfig& cfg) {
    if (!cfg.has_sweep) throw ConfigError("ep verb needs a [sweep] section as bracket");
    const double ep =
        locate_ep(cfg.physical, cfg.axis, cfg.sweep_start, cfg.sweep_stop);
    VerbOutput out;
    out.table.columns = {std::string("ep_") + axis_column(cfg.axis)};
    add_row(out.table, {format_double(ep)});
    out.summary = std::string("ep_") + axis_column(cfg.axis) + "=" + format_double(ep);
    return out;
}

VerbOutput run_fit(const RunConfig& cfg, const std::string& data_path) {
    if (data_path.empty()) throw ConfigError("fit verb needs --data <gain dataset>");
    if (cfg.direct_model) {
        throw ConfigError("fit verb needs the [physical] parameterization");
    }
    const GainDataset data = read_dataset(data_path);
    const FitResult res = fit_delta_k(data, cfg.physical, cfg.fit_free, cfg.fit_options);

    VerbOutput out;
    out.table.columns = {data.axis_name, "measured_g_p", "model_g_p",
                         "measured_g_s", "model_g_s"};
    const SweepAxis axis = data.axis();
    for (size_t i = 0; i < data.param.size(); ++i) {
        const EffectiveModel m =
            effective_from_physical(at_axis_value(res.params, axis, data.param[i]));
        const auto tc = propagate_mean(build_lossy_generator(m), m.length,
                                       MomentState()).effective;
        add_row(out.table,
                {format_double(data.param[i]), format_double(data.g_p[i]),
                 format_double(std::norm(tc.a)), format_double(data.g_s[i]),
                 format_double(std::norm(tc.c))});
    }
    for (size_t i = 0; i < res.free.size(); ++i) {
        out.summary += std::string("fitted_") + to_string(res.free[i]) + "=" +
                       format_double(res.values(i)) + " ";
    }
    out.summary += "residual_norm=" + format_double(res.residual_norm) +
                   " iterations=" + format_int(res.iterations) +
                   " converged=" + format_bool(res.converged) +
                   " identifiable=" + format_bool(res.identifiable);
    return out;
}

VerbOutput run_optimum(const RunConfig& cfg) {
    if (!cfg.has_sweep) throw ConfigError("optimum verb needs a [sweep] section");
    const OptimumReport rep =
        optimal_squeezing(cfg.physical, cfg.axis, cfg.grid(), settings_of(cfg));
    VerbOutput out;
    out.table.columns = {std::string("optimum_") + axis_column(cfg.axis), "s_detected",
                         "s_detected_db", "boundary"};
    add_row(out.table, {format_double(rep.param_value), format_double(rep.s_detected),
                        format_double(rep.s_detected_db), format_bool(rep.boundary)});
    out.summary = std::string("optimum_") + axis_column(cfg.axis) + "=" +
                  format_double(rep.param_value) +
                  " s_detected=" + format_double(rep.s_detected) +
                  " s_detected_db=" + format_double(rep.s_detected_db) +
                  " boundary=" + format_bool(rep.boundary);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anti-PT four-wave-mixing model tables"};
    app.require_subcommand(1);

    std::string config_path, data_path, output_override;
    const std::vector<std::string> verbs = {"eigen", "propagate", "noise", "sweep",
                                            "ep",    "fit",       "optimum"};
    for (const auto& verb : verbs) {
        CLI::App* sub = app.add_subcommand(verb);
        sub->add_option("config", config_path, "configuration file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--output", output_override, "override [output] path");
        if (verb == "fit") {
            sub->add_option("--data", data_path, "measured gain dataset")
                ->check(CLI::ExistingFile);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    try {
        RunConfig cfg = load_config(config_path);
        if (!output_override.empty()) cfg.output_path = output_override;
        if (cfg.output_path.empty()) {
            throw ConfigError("no output path: set [output] path or pass --output");
        }

        VerbOutput out;
        if (verb == "eigen") {
            out = run_eigen(cfg);
        } else if (verb == "propagate") {
            out = run_propagate(cfg);
        } else if (verb == "noise") {
            out = run_noise(cfg);
        } else if (verb == "sweep") {
            out = run_sweep(cfg);
        } else if (verb == "ep") {
            out = run_ep(cfg);
        } else if (verb == "fit") {
            out = run_fit(cfg, data_path);
        } else {
            out = run_optimum(cfg);
        }
        out.table.comments = table_comments(cfg, verb);
        write_table(cfg.output_path, out.table);
        std::cout << out.summary << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    }
}
