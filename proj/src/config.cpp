#include "aptfwm/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "aptfwm/table.hpp"

namespace aptfwm {

std::vector<double> RunConfig::grid() const {
    if (!has_sweep) throw ConfigError("no [sweep] section configured");
    return linspace(sweep_start, sweep_stop, sweep_points);
}

EffectiveModel RunConfig::point_model() const {
    if (direct_model) return model;
    return effective_from_physical(physical);
}

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
    bool used = false;
};

using Section = std::map<std::string, RawEntry>;

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const RawEntry& e, const std::string& key) {
    size_t pos = 0;
    double v;
    try {
        v = std::stod(e.value, &pos);
    } catch (const std::exception&) {
        fail(e.line, key + ": not a number: '" + e.value + "'");
    }
    if (pos != e.value.size()) {
        fail(e.line, key + ": trailing characters in '" + e.value + "'");
    }
    return v;
}

long parse_int(const RawEntry& e, const std::string& key) {
    size_t pos = 0;
    long v;
    try {
        v = std::stol(e.value, &pos);
    } catch (const std::exception&) {
        fail(e.line, key + ": not an integer: '" + e.value + "'");
    }
    if (pos != e.value.size()) {
        fail(e.line, key + ": trailing characters in '" + e.value + "'");
    }
    return v;
}

bool parse_bool(const RawEntry& e, const std::string& key) {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    fail(e.line, key + ": expected true or false, got '" + e.value + "'");
}

// Key vocabulary per section; anything else is a typo and rejected.
const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"model",
     {"delta_k_rad_per_m", "length_m", "kappa_re_rad_per_m", "kappa_im_rad_per_m",
      "alpha_re_rad_per_m", "alpha_im_rad_per_m", "ep_beta_tolerance"}},
    {"physical",
     {"delta1_GHz", "delta_2ph_MHz", "omega_over_2pi_GHz", "omega_ref_over_2pi_GHz",
      "theta_deg", "n_density_per_cm3", "temperature_C", "g_rad2_cm3_per_s2",
      "ep_density_per_cm3", "alpha_ref_rad_per_m", "n_ref_per_cm3",
      "kappa_power_exponent", "alpha_power_exponent", "vapor_pressure_a",
      "vapor_pressure_b_K", "isotope_abundance"}},
    {"detector", {"eta_p", "eta_s", "dark_variance_photons2"}},
    {"sweep",
     {"axis", "start_per_cm3", "stop_per_cm3", "start_over_2pi_GHz",
      "stop_over_2pi_GHz", "points", "n_p0_photons"}},
    {"fit", {"free", "max_iterations", "relative_residuals", "log_residuals"}},
    {"output", {"path"}},
};

class Resolver {
  public:
    explicit Resolver(std::map<std::string, Section> sections)
        : sections_(std::move(sections)) {}

    bool has(const std::string& section, const std::string& key) {
        auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key) > 0;
    }

    const RawEntry* get(const std::string& section, const std::string& key) {
        auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.used = true;
        return &k->second;
    }

    double number(const std::string& section, const std::string& key, double fallback) {
        const RawEntry* e = get(section, key);
        return e ? parse_double(*e, key) : fallback;
    }

    double required_number(const std::string& section, const std::string& key) {
        const RawEntry* e = get(section, key);
        if (!e) {
            throw ConfigError("config: missing required key " + section + "." + key);
        }
        return parse_double(*e, key);
    }

    bool section_present(const std::string& section) const {
        auto s = sections_.find(section);
        return s != sections_.end() && !s->second.empty();
    }

    int section_line(const std::string& section) const {
        auto s = sections_.find(section);
        if (s == sections_.end() || s->second.empty()) return 0;
        int line = s->second.begin()->second.line;
        for (const auto& [k, e] : s->second) line = std::min(line, e.line);
        return line;
    }

  private:
    std::map<std::string, Section> sections_;
};

std::map<std::string, Section> parse_raw(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file: " + path);

    std::map<std::string, Section> sections;
    std::string line, section;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') fail(line_no, "malformed section header: " + t);
            section = trim(t.substr(1, t.size() - 2));
            if (kKnownKeys.find(section) == kKnownKeys.end()) {
                fail(line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value, got: " + t);
        if (section.empty()) fail(line_no, "key outside any [section]");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "empty value for key '" + key + "'");
        if (kKnownKeys.at(section).count(key) == 0) {
            fail(line_no, "unknown key '" + key + "' in [" + section + "]");
        }
        auto [it, inserted] = sections[section].emplace(key, RawEntry{value, line_no});
        if (!inserted) {
            fail(line_no, "duplicate key '" + key + "' (first at line " +
                              std::to_string(it->second.line) + ")");
        }
    }
    return sections;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    Resolver r(parse_raw(path));
    RunConfig cfg;

    const double delta_k = r.required_number("model", "delta_k_rad_per_m");
    const double length = r.required_number("model", "length_m");
    cfg.ep_tolerance = r.number("model", "ep_beta_tolerance", 1e-9);

    const bool has_kappa = r.has("model", "kappa_re_rad_per_m") ||
                           r.has("model", "kappa_im_rad_per_m");
    const bool has_alpha = r.has("model", "alpha_re_rad_per_m") ||
                           r.has("model", "alpha_im_rad_per_m");
    cfg.has_physical = r.section_present("physical");

    if (has_kappa && cfg.has_physical) {
        throw ConfigError(
            "config: conflicting parameterizations: [model] kappa and a [physical] "
            "section (lines " +
            std::to_string(r.get("model", has_kappa && r.has("model", "kappa_re_rad_per_m")
                                              ? "kappa_re_rad_per_m"
                                              : "kappa_im_rad_per_m")
                               ->line) +
            " and " + std::to_string(r.section_line("physical")) + ")");
    }
    if (!has_kappa && !cfg.has_physical) {
        throw ConfigError(
            "config: no parameterization: set [model] kappa_re_rad_per_m or add a "
            "[physical] section");
    }
    if (has_alpha && cfg.has_physical) {
        throw ConfigError(
            "config: [model] alpha conflicts with the [physical] loss stub");
    }

    cfg.direct_model = has_kappa;
    if (cfg.direct_model) {
        cfg.model.delta_k = delta_k;
        cfg.model.length = length;
        cfg.model.kappa = complexd(r.number("model", "kappa_re_rad_per_m", 0.0),
                                   r.number("model", "kappa_im_rad_per_m", 0.0));
        cfg.model.alpha = complexd(r.number("model", "alpha_re_rad_per_m", 0.0),
                                   r.number("model", "alpha_im_rad_per_m", 0.0));
        cfg.model.validate();
    } else {
        PhysicalParams& p = cfg.physical;
        p.delta_k = delta_k;
        p.length = length;
        p.delta1_GHz = r.number("physical", "delta1_GHz", p.delta1_GHz);
        p.delta_2ph_MHz = r.number("physical", "delta_2ph_MHz", p.delta_2ph_MHz);
        p.omega_GHz = r.number("physical", "omega_over_2pi_GHz", p.omega_GHz);
        p.omega_ref_GHz =
            r.number("physical", "omega_ref_over_2pi_GHz", p.omega_ref_GHz);
        p.theta_deg = r.number("physical", "theta_deg", p.theta_deg);
        p.alpha_ref = r.number("physical", "alpha_ref_rad_per_m", p.alpha_ref);
        p.n_ref = r.number("physical", "n_ref_per_cm3", p.n_ref);
        p.p_kappa = r.number("physical", "kappa_power_exponent", p.p_kappa);
        p.p_alpha = r.number("physical", "alpha_power_exponent", p.p_alpha);
        p.vapor.a = r.number("physical", "vapor_pressure_a", p.vapor.a);
        p.vapor.b_K = r.number("physical", "vapor_pressure_b_K", p.vapor.b_K);
        p.vapor.abundance = r.number("physical", "isotope_abundance", p.vapor.abundance);

        const bool has_density = r.has("physical", "n_density_per_cm3");
        const bool has_temperature = r.has("physical", "temperature_C");
        if (has_density && has_temperature) {
            fail(r.get("physical", "temperature_C")->line,
                 "n_density_per_cm3 and temperature_C are exclusive");
        }
        if (has_density) {
            p.n_density = r.required_number("physical", "n_density_per_cm3");
        } else if (has_temperature) {
            const double t = r.required_number("physical", "temperature_C");
            cfg.temperature_C = t;
            p.n_density = density_from_temperature(t, p.vapor);
        }

        const bool has_g = r.has("physical", "g_rad2_cm3_per_s2");
        const bool has_ep = r.has("physical", "ep_density_per_cm3");
        if (has_g && has_ep) {
            fail(r.get("physical", "ep_density_per_cm3")->line,
                 "g_rad2_cm3_per_s2 and ep_density_per_cm3 are exclusive");
        }
        if (has_g) {
            p.g = r.required_number("physical", "g_rad2_cm3_per_s2");
        } else if (has_ep) {
            p.g = calibrate_g_for_ep_density(
                p, r.required_number("physical", "ep_density_per_cm3"));
        }
        p.validate();
    }

    cfg.detector.eta_p = r.number("detector", "eta_p", 1.0);
    cfg.detector.eta_s = r.number("detector", "eta_s", 1.0);
    cfg.detector.dark_variance = r.number("detector", "dark_variance_photons2", 0.0);
    cfg.detector.validate();

    if (r.section_present("sweep")) {
        cfg.has_sweep = true;
        const RawEntry* axis = r.get("sweep", "axis");
        if (!axis) throw ConfigError("config: missing required key sweep.axis");
        if (axis->value == "density") {
            cfg.axis = SweepAxis::Density;
        } else if (axis->value == "rabi") {
            cfg.axis = SweepAxis::Rabi;
        } else {
            fail(axis->line, "axis must be density or rabi, got '" + axis->value + "'");
        }
        const bool density_axis = cfg.axis == SweepAxis::Density;
        const char* start_key = density_axis ? "start_per_cm3" : "start_over_2pi_GHz";
        const char* stop_key = density_axis ? "stop_per_cm3" : "stop_over_2pi_GHz";
        const char* wrong_start = density_axis ? "start_over_2pi_GHz" : "start_per_cm3";
        const char* wrong_stop = density_axis ? "stop_over_2pi_GHz" : "stop_per_cm3";
        if (r.has("sweep", wrong_start) || r.has("sweep", wrong_stop)) {
            const RawEntry* bad = r.get("sweep", r.has("sweep", wrong_start) ? wrong_start
                                                                             : wrong_stop);
            fail(bad->line, std::string("unit mismatch: ") + to_string(cfg.axis) +
                                " axis takes " + start_key + "/" + stop_key);
        }
        cfg.sweep_start = r.required_number("sweep", start_key);
        cfg.sweep_stop = r.required_number("sweep", stop_key);
        const RawEntry* pts = r.get("sweep", "points");
        if (!pts) throw ConfigError("config: missing required key sweep.points");
        const long n = parse_int(*pts, "points");
        if (n < 2 || n > 1000000) fail(pts->line, "points must be in [2, 1e6]");
        cfg.sweep_points = static_cast<int>(n);
        if (!(cfg.sweep_stop > cfg.sweep_start)) {
            fail(pts->line, "sweep stop must exceed start");
        }
        cfg.n_p0 = r.number("sweep", "n_p0_photons", 1e6);
        if (!(cfg.n_p0 > 0.0)) {
            fail(r.get("sweep", "n_p0_photons")->line, "n_p0_photons must be positive");
        }
        if (cfg.has_physical && cfg.axis == SweepAxis::Density && cfg.physical.g == 0.0) {
            throw ConfigError(
                "config: uncalibrated coupling: a density sweep needs "
                "g_rad2_cm3_per_s2 or ep_density_per_cm3");
        }
        if (cfg.direct_model) {
            throw ConfigError(
                "config: [sweep] needs the [physical] parameterization (the direct "
                "model has no sweep axes)");
        }
    }

    if (r.section_present("fit")) {
        const RawEntry* free = r.get("fit", "free");
        if (free) {
            cfg.fit_free.clear();
            std::istringstream ss(free->value);
            std::string token;
            while (std::getline(ss, token, ',')) {
                const std::string name = trim(token);
                if (name == "delta_k") {
                    cfg.fit_free.push_back(FitParameter::DeltaK);
                } else if (name == "g") {
                    cfg.fit_free.push_back(FitParameter::G);
                } else if (name == "alpha_ref") {
                    cfg.fit_free.push_back(FitParameter::AlphaRef);
                } else {
                    fail(free->line, "unknown fit parameter '" + name + "'");
                }
            }
            if (cfg.fit_free.empty()) fail(free->line, "empty fit.free list");
        }
        const RawEntry* iters = r.get("fit", "max_iterations");
        if (iters) {
            const long n = parse_int(*iters, "max_iterations");
            if (n < 1 || n > 100000) fail(iters->line, "max_iterations out of range");
            cfg.fit_options.max_iterations = static_cast<int>(n);
        }
        const RawEntry* rel = r.get("fit", "relative_residuals");
        if (rel) cfg.fit_options.relative_residuals = parse_bool(*rel, "relative_residuals");
        const RawEntry* logr = r.get("fit", "log_residuals");
        if (logr) cfg.fit_options.log_residuals = parse_bool(*logr, "log_residuals");
    }

    if (const RawEntry* out = r.get("output", "path")) {
        cfg.output_path = out->value;
    }

    // Canonical resolved echo, in a fixed order so output files are
    // byte-reproducible.
    auto put = [&cfg](const std::string& key, const std::string& value) {
        cfg.echo.emplace_back(key, value);
    };
    put("model.delta_k_rad_per_m", format_double(delta_k));
    put("model.length_m", format_double(length));
    put("model.ep_beta_tolerance", format_double(cfg.ep_tolerance));
    if (cfg.direct_model) {
        put("model.kappa_re_rad_per_m", format_double(cfg.model.kappa.real()));
        put("model.kappa_im_rad_per_m", format_double(cfg.model.kappa.imag()));
        put("model.alpha_re_rad_per_m", format_double(cfg.model.alpha.real()));
        put("model.alpha_im_rad_per_m", format_double(cfg.model.alpha.imag()));
    } else {
        const PhysicalParams& p = cfg.physical;
        put("physical.delta1_GHz", format_double(p.delta1_GHz));
        put("physical.delta2_GHz", format_double(p.delta2_GHz()));
        put("physical.delta_2ph_MHz", format_double(p.delta_2ph_MHz));
        put("physical.omega_over_2pi_GHz", format_double(p.omega_GHz));
        put("physical.omega_ref_over_2pi_GHz", format_double(p.omega_ref_GHz));
        put("physical.theta_deg", format_double(p.theta_deg));
        if (cfg.temperature_C) {
            put("physical.temperature_C", format_double(*cfg.temperature_C));
        }
        put("physical.n_density_per_cm3", format_double(p.n_density));
        put("physical.g_rad2_cm3_per_s2", format_double(p.g));
        put("physical.alpha_ref_rad_per_m", format_double(p.alpha_ref));
        put("physical.n_ref_per_cm3", format_double(p.n_ref));
        put("physical.kappa_power_exponent", format_double(p.p_kappa));
        put("physical.alpha_power_exponent", format_double(p.p_alpha));
        put("physical.vapor_pressure_a", format_double(p.vapor.a));
        put("physical.vapor_pressure_b_K", format_double(p.vapor.b_K));
        put("physical.isotope_abundance", format_double(p.vapor.abundance));
    }
    put("detector.eta_p", format_double(cfg.detector.eta_p));
    put("detector.eta_s", format_double(cfg.detector.eta_s));
    put("detector.dark_variance_photons2", format_double(cfg.detector.dark_variance));
    if (cfg.has_sweep) {
        put("sweep.axis", to_string(cfg.axis));
        put(cfg.axis == SweepAxis::Density ? "sweep.start_per_cm3"
                                           : "sweep.start_over_2pi_GHz",
            format_double(cfg.sweep_start));
        put(cfg.axis == SweepAxis::Density ? "sweep.stop_per_cm3"
                                           : "sweep.stop_over_2pi_GHz",
            format_double(cfg.sweep_stop));
        put("sweep.points", format_int(cfg.sweep_points));
        put("sweep.n_p0_photons", format_double(cfg.n_p0));
    }
    {
        std::string names;
        for (size_t i = 0; i < cfg.fit_free.size(); ++i) {
            if (i) names += ",";
            names += to_string(cfg.fit_free[i]);
        }
        put("fit.free", names);
        put("fit.max_iterations", format_int(cfg.fit_options.max_iterations));
        put("fit.relative_residuals", format_bool(cfg.fit_options.relative_residuals));
        put("fit.log_residuals", format_bool(cfg.fit_options.log_residuals));
    }
    if (!cfg.output_path.empty()) put("output.path", cfg.output_path);

    return cfg;
}

}  // namespace aptfwm
