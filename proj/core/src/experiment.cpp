#include "shadowlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "shadowlab/errors.hpp"
#include "shadowlab/histogram.hpp"
#include "shadowlab/ks.hpp"
#include "shadowlab/parallel.hpp"

namespace shadowlab::experiments {

namespace {

constexpr std::uint64_t kThermoStream = 1;
constexpr std::uint64_t kBrownianStream = 2;

std::vector<paths::FunctionalSpec> all_functionals() {
    using paths::Functional;
    return {{Functional::F1, 0.1}, {Functional::F2, 0.1}, {Functional::F3, 0.1},
            {Functional::F4, 0.1}, {Functional::F5, 0.1}};
}

double default_horizon(ExperimentId id, Preset preset) {
    switch (id) {
        case ExperimentId::exp1: return 20.0;
        case ExperimentId::exp2: return 10.0;
        case ExperimentId::exp3: return preset == Preset::paper ? 100.0 : 20.0;
        case ExperimentId::exp4: return 10.0;
        case ExperimentId::exp5: return preset == Preset::paper ? 10.0 : 5.0;
    }
    return 10.0;
}

} // namespace

ExperimentConfig default_config(ExperimentId id) { return preset_config(Preset::paper, id); }

ExperimentConfig preset_config(Preset preset, ExperimentId id) {
    ExperimentConfig cfg;
    cfg.id = id;
    cfg.functionals = all_functionals();
    cfg.horizon = default_horizon(id, preset);
    if (preset == Preset::paper) {
        cfg.n_particles = 100;
        cfg.box_side = 11.5;
        cfg.ensemble = 200;
        cfg.dt_list = {0.01, 0.005, 0.0025};
    } else {
        cfg.n_particles = 16;
        cfg.box_side = 5.75;
        cfg.ensemble = 200;
        switch (id) {
            case ExperimentId::exp1: cfg.dt_list = {0.01}; break;
            case ExperimentId::exp2: cfg.dt_list = {0.01, 0.005, 0.0025}; break;
            default: cfg.dt_list = {0.01, 0.0025}; break;
        }
    }
    if (id == ExperimentId::exp5) {
        cfg.n_particles = preset == Preset::paper ? 100 : 2;
        cfg.dt_list = {0.01};
        cfg.dt_ref = 0.001;
        cfg.shadow_paths = 64;
    }
    if (id == ExperimentId::exp1) cfg.ensemble = 3;
    return cfg;
}

namespace {

ExperimentId parse_experiment(const std::string& value) {
    if (value == "exp1") return ExperimentId::exp1;
    if (value == "exp2") return ExperimentId::exp2;
    if (value == "exp3") return ExperimentId::exp3;
    if (value == "exp4") return ExperimentId::exp4;
    if (value == "exp5") return ExperimentId::exp5;
    throw ConfigError("unknown experiment id: " + value);
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    const auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field " + key + ": cannot parse number '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field " + key + ": cannot parse integer '" + value + "'");
    }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("field " + key + ": empty list");
    return out;
}

std::vector<paths::FunctionalSpec> parse_functionals(const std::string& value, double tau) {
    std::vector<paths::FunctionalSpec> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        bool known = false;
        for (const auto& spec : all_functionals()) {
            if (item == paths::functional_name(spec.id)) {
                out.push_back({spec.id, tau});
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown functional: " + item);
    }
    if (out.empty()) throw ConfigError("functional set is empty");
    return out;
}

bool commensurate(double horizon, double dt) {
    const double steps = horizon / dt;
    return steps >= 1.0 - 1e-9 && std::abs(steps - std::round(steps)) <= 1e-9 * steps;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.n_particles < 2) throw ConfigError("n_particles must be at least 2");
    md::PotentialSpec pot;
    if (!(cfg.box_side > 2.0 * pot.r_cutoff))
        throw ConfigError("box_side must exceed twice the cutoff radius (5)");
    if (!(cfg.beta > 0.0)) throw ConfigError("beta must be positive");
    if (cfg.dt_list.empty()) throw ConfigError("dt list must not be empty");
    for (double dt : cfg.dt_list) {
        if (!(dt > 0.0)) throw ConfigError("dt values must be positive");
        if (!commensurate(cfg.horizon, dt))
            throw ConfigError("T must be a positive multiple of every dt");
    }
    if (cfg.ensemble < 1) throw ConfigError("ensemble must be at least 1");
    if (cfg.kick_index >= cfg.n_particles) throw ConfigError("kick index out of range");
    if (cfg.functionals.empty()) throw ConfigError("functional set is empty");
    for (const auto& f : cfg.functionals) {
        if (f.id == paths::Functional::F5 && cfg.horizon < 2.0 * f.tau)
            throw ConfigError("F5 needs T >= 2 tau");
    }
    if (!(cfg.gamma > 0.0)) throw ConfigError("gamma must be positive");
    if (!(cfg.langevin_dt > 0.0)) throw ConfigError("langevin_dt must be positive");
    if (cfg.burn_in_steps < 1) throw ConfigError("burn_in must be at least 1");
    if (cfg.hist_bins < 1) throw ConfigError("hist_bins must be at least 1");
    if (cfg.id == ExperimentId::exp5) {
        if (cfg.shadow_paths < 1) throw ConfigError("shadow_paths must be at least 1");
        if (!(cfg.dt_ref > 0.0) || !commensurate(cfg.horizon, cfg.dt_ref))
            throw ConfigError("T must be a positive multiple of dt_ref");
        const double ratio = cfg.dt_list[0] / cfg.dt_ref;
        if (ratio < 1.0 - 1e-9 || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
            throw ConfigError("dt must be an integer multiple of dt_ref");
        if (!cfg.epsilon_auto && !(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    }
}

} // namespace

ExperimentConfig validate_config(const std::string& raw_text) {
    return validate_config(raw_text, default_config(ExperimentId::exp3));
}

ExperimentConfig validate_config(const std::string& raw_text, const ExperimentConfig& base) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(raw_text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        kv[key] = value;
    }

    // Preset and experiment id shape the defaults; everything else overrides.
    ExperimentConfig cfg = base;
    const ExperimentId id = kv.count("experiment") ? parse_experiment(kv.at("experiment")) : base.id;
    if (kv.count("preset")) {
        const std::string p = kv.at("preset");
        if (p == "desk")
            cfg = preset_config(Preset::desk, id);
        else if (p == "paper")
            cfg = preset_config(Preset::paper, id);
        else
            throw ConfigError("unknown preset: " + p);
    } else if (id != base.id) {
        cfg = preset_config(Preset::paper, id);
    }
    cfg.id = id;

    double tau = 0.1;
    if (kv.count("tau")) tau = parse_double("tau", kv.at("tau"));
    for (auto& f : cfg.functionals) f.tau = tau;

    for (const auto& [key, value] : kv) {
        if (key == "experiment" || key == "preset" || key == "tau") continue;
        if (key == "n_particles") cfg.n_particles = parse_u64(key, value);
        else if (key == "box_side") cfg.box_side = parse_double(key, value);
        else if (key == "beta") cfg.beta = parse_double(key, value);
        else if (key == "dt_list") cfg.dt_list = parse_double_list(key, value);
        else if (key == "T") cfg.horizon = parse_double(key, value);
        else if (key == "ensemble") cfg.ensemble = parse_u64(key, value);
        else if (key == "kick_index") cfg.kick_index = parse_u64(key, value);
        else if (key == "kick_x") cfg.kick.x = parse_double(key, value);
        else if (key == "kick_y") cfg.kick.y = parse_double(key, value);
        else if (key == "functionals") cfg.functionals = parse_functionals(value, tau);
        else if (key == "seed") cfg.seed = parse_u64(key, value);
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "gamma") cfg.gamma = parse_double(key, value);
        else if (key == "langevin_dt") cfg.langevin_dt = parse_double(key, value);
        else if (key == "burn_in") cfg.burn_in_steps = parse_u64(key, value);
        else if (key == "shadow_paths") cfg.shadow_paths = parse_u64(key, value);
        else if (key == "dt_ref") cfg.dt_ref = parse_double(key, value);
        else if (key == "threads") cfg.threads = static_cast<int>(parse_u64(key, value));
        else if (key == "hist_bins") cfg.hist_bins = parse_u64(key, value);
        else if (key == "epsilon") {
            if (value == "auto") {
                cfg.epsilon_auto = true;
            } else {
                cfg.epsilon = parse_double(key, value);
                cfg.epsilon_auto = false;
            }
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }

    validate(cfg);
    return cfg;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string Manifest::to_json_string() const {
    nlohmann::json j;
    auto& arr = j["files"] = nlohmann::json::array();
    for (const auto& f : files)
        arr.push_back({{"path", f.path}, {"bytes", f.bytes}, {"fnv1a64", f.fnv1a64}});
    return j.dump(2);
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_dt(double dt) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", dt);
    return buf;
}

// Collects output files in memory so the manifest can hash exactly the bytes
// written, then flushes everything in sorted order through one writer.
class OutputSet {
  public:
    void add(const std::string& relpath, std::string content) {
        files_.emplace_back(relpath, std::move(content));
    }

    Manifest flush(const std::filesystem::path& out_dir) {
        std::sort(files_.begin(), files_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::filesystem::create_directories(out_dir);
        Manifest manifest;
        for (const auto& [rel, content] : files_) {
            std::ofstream out(out_dir / rel, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + (out_dir / rel).string());
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            char hex[17];
            std::snprintf(hex, sizeof hex, "%016llx",
                          static_cast<unsigned long long>(fnv1a64(content)));
            manifest.files.push_back({rel, content.size(), hex});
        }
        std::ofstream mout(out_dir / "manifest.json", std::ios::binary);
        mout << manifest.to_json_string() << "\n";
        return manifest;
    }

  private:
    std::vector<std::pair<std::string, std::string>> files_;
};

std::string trajectory_csv(const paths::PathPL& path) {
    std::string out = "t,qx,qy\n";
    for (std::size_t k = 0; k < path.size(); ++k) {
        const double t = static_cast<double>(k) * path.dt_grid;
        out += format_double(t) + "," + format_double(path.values[k].x) + "," +
               format_double(path.values[k].y) + "\n";
    }
    return out;
}

std::string histogram_csv(const paths::Histogram& hist) {
    std::ostringstream os;
    paths::write_histogram_csv(os, hist);
    return os.str();
}

std::size_t step_count(double horizon, double dt) {
    return static_cast<std::size_t>(std::round(horizon / dt));
}

md::SystemState member_state(const ExperimentConfig& cfg, std::size_t index) {
    md::ThermostatSpec thermo;
    thermo.beta = cfg.beta;
    thermo.gamma = cfg.gamma;
    thermo.langevin_dt = cfg.langevin_dt;
    thermo.burn_in_steps = cfg.burn_in_steps;
    thermo.seed = derive_stream(cfg.seed, kThermoStream, index);
    md::SystemState state = md::sample_canonical(cfg.box(), md::PotentialSpec{}, cfg.n_particles, thermo);
    state = md::remove_com_velocity(state);
    if (cfg.id == ExperimentId::exp4) state = md::kick_particle(state, cfg.kick_index, cfg.kick);
    return state;
}

// Fixed per-functional histogram ranges so curves for different dt values
// share bin edges. Diffusive scales grow like sqrt(T).
paths::BinSpec functional_bin_spec(const ExperimentConfig& cfg, paths::Functional id) {
    const double s = std::sqrt(cfg.horizon);
    switch (id) {
        case paths::Functional::F1: return {-5.0 * s, 5.0 * s, cfg.hist_bins};
        case paths::Functional::F2: return {-2.0 * s, 2.0 * s, cfg.hist_bins};
        case paths::Functional::F3: return {0.0, 5.0 * s, cfg.hist_bins};
        case paths::Functional::F4: return {0.0, cfg.horizon, cfg.hist_bins};
        case paths::Functional::F5: return {-1.0, 1.0, cfg.hist_bins};
    }
    return {0.0, 1.0, cfg.hist_bins};
}

Manifest run_exp1(const ExperimentConfig& cfg) {
    OutputSet out;
    const double dt = cfg.dt_list.front();
    const std::size_t steps = step_count(cfg.horizon, dt);
    std::vector<paths::PathPL> trajectories(cfg.ensemble);
    parallel_for(cfg.ensemble, cfg.threads, [&](std::size_t i) {
        const md::SystemState start = member_state(cfg, i);
        trajectories[i] = shadow::displacement_path(start, dt, steps, cfg.box(),
                                                    md::PotentialSpec{}, 0);
    });
    for (std::size_t i = 0; i < trajectories.size(); ++i)
        out.add("trajectory_" + std::to_string(i) + ".csv", trajectory_csv(trajectories[i]));
    return out.flush(cfg.out_dir);
}

Manifest run_exp2(const ExperimentConfig& cfg) {
    OutputSet out;
    const md::SystemState shared_start = member_state(cfg, 0);
    std::vector<paths::PathPL> runs(cfg.dt_list.size());
    parallel_for(cfg.dt_list.size(), cfg.threads, [&](std::size_t k) {
        const double dt = cfg.dt_list[k];
        runs[k] = shadow::displacement_path(shared_start, dt, step_count(cfg.horizon, dt),
                                            cfg.box(), md::PotentialSpec{}, 0);
    });
    for (std::size_t k = 0; k < runs.size(); ++k)
        out.add("trajectory_dt" + format_dt(cfg.dt_list[k]) + ".csv", trajectory_csv(runs[k]));
    return out.flush(cfg.out_dir);
}

Manifest run_histograms(const ExperimentConfig& cfg) {
    OutputSet out;
    const std::size_t n_dt = cfg.dt_list.size();
    const std::size_t n_f = cfg.functionals.size();

    // values[dt][functional][member]; one canonical draw per member shared by
    // every step size.
    std::vector<std::vector<std::vector<double>>> values(
        n_dt, std::vector<std::vector<double>>(n_f, std::vector<double>(cfg.ensemble)));
    parallel_for(cfg.ensemble, cfg.threads, [&](std::size_t i) {
        const md::SystemState start = member_state(cfg, i);
        for (std::size_t k = 0; k < n_dt; ++k) {
            const double dt = cfg.dt_list[k];
            const paths::PathPL path = shadow::displacement_path(
                start, dt, step_count(cfg.horizon, dt), cfg.box(), md::PotentialSpec{}, 0);
            for (std::size_t f = 0; f < n_f; ++f)
                values[k][f][i] = paths::eval_functional(cfg.functionals[f], path);
        }
    });

    std::vector<std::vector<paths::Histogram>> hists(n_dt, std::vector<paths::Histogram>(n_f));
    for (std::size_t k = 0; k < n_dt; ++k) {
        for (std::size_t f = 0; f < n_f; ++f) {
            const auto spec = functional_bin_spec(cfg, cfg.functionals[f].id);
            hists[k][f] = paths::make_histogram(values[k][f], spec);
            const std::string name = std::string("hist_") +
                                     paths::functional_name(cfg.functionals[f].id) + "_dt" +
                                     format_dt(cfg.dt_list[k]) + ".csv";
            out.add(name, histogram_csv(hists[k][f]));
        }
    }

    if (cfg.id == ExperimentId::exp3) {
        // Brownian reference matched to the empirical variance of the
        // x-endpoint at the finest step size.
        const std::size_t finest =
            static_cast<std::size_t>(std::min_element(cfg.dt_list.begin(), cfg.dt_list.end()) -
                                     cfg.dt_list.begin());
        std::size_t f1_slot = n_f;
        for (std::size_t f = 0; f < n_f; ++f)
            if (cfg.functionals[f].id == paths::Functional::F1) f1_slot = f;
        if (f1_slot < n_f && cfg.ensemble >= 2) {
            const auto& endpoint = values[finest][f1_slot];
            double mean = 0.0;
            for (double v : endpoint) mean += v;
            mean /= static_cast<double>(endpoint.size());
            double var = 0.0;
            for (double v : endpoint) var += (v - mean) * (v - mean);
            var /= static_cast<double>(endpoint.size() - 1);
            if (var > 0.0) {
                std::vector<std::vector<double>> bvalues(n_f, std::vector<double>(cfg.ensemble));
                const double dt = cfg.dt_list[finest];
                parallel_for(cfg.ensemble, cfg.threads, [&](std::size_t i) {
                    const paths::PathPL b = paths::brownian_reference(
                        var, cfg.horizon, dt, derive_stream(cfg.seed, kBrownianStream, i));
                    for (std::size_t f = 0; f < n_f; ++f)
                        bvalues[f][i] = paths::eval_functional(cfg.functionals[f], b);
                });
                for (std::size_t f = 0; f < n_f; ++f) {
                    const auto spec = functional_bin_spec(cfg, cfg.functionals[f].id);
                    const std::string name = std::string("hist_") +
                                             paths::functional_name(cfg.functionals[f].id) +
                                             "_brownian.csv";
                    out.add(name, histogram_csv(paths::make_histogram(bvalues[f], spec)));
                }
            }
        }
    }

    std::string ks_csv = "functional,dt_a,dt_b,ks\n";
    for (std::size_t f = 0; f < n_f; ++f) {
        for (std::size_t a = 0; a < n_dt; ++a) {
            for (std::size_t b = a + 1; b < n_dt; ++b) {
                const double ks = metrics::ks_distance(hists[a][f], hists[b][f]);
                ks_csv += std::string(paths::functional_name(cfg.functionals[f].id)) + "," +
                          format_dt(cfg.dt_list[a]) + "," + format_dt(cfg.dt_list[b]) + "," +
                          format_double(ks) + "\n";
            }
        }
    }
    out.add("ks_summary.csv", ks_csv);
    return out.flush(cfg.out_dir);
}

Manifest run_exp5(const ExperimentConfig& cfg) {
    shadow::PipelineConfig pipe;
    pipe.n_particles = cfg.n_particles;
    pipe.box = cfg.box();
    pipe.beta = cfg.beta;
    pipe.gamma = cfg.gamma;
    pipe.langevin_dt = cfg.langevin_dt;
    pipe.burn_in_steps = cfg.burn_in_steps;
    pipe.n_paths = cfg.shadow_paths;
    pipe.horizon = cfg.horizon;
    pipe.dt = cfg.dt_list.front();
    pipe.dt_ref = cfg.dt_ref;
    pipe.particle = 0;
    pipe.epsilon = cfg.epsilon;
    pipe.epsilon_auto = cfg.epsilon_auto;
    pipe.master_seed = cfg.seed;
    pipe.threads = cfg.threads;
    const shadow::ShadowDiagnostic diag = shadow::shadow_md_pipeline(pipe);
    OutputSet out;
    out.add("shadow_diagnostic.json", diag.to_json_string() + "\n");
    return out.flush(cfg.out_dir);
}

} // namespace

Manifest run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    switch (cfg.id) {
        case ExperimentId::exp1: return run_exp1(cfg);
        case ExperimentId::exp2: return run_exp2(cfg);
        case ExperimentId::exp3:
        case ExperimentId::exp4: return run_histograms(cfg);
        case ExperimentId::exp5: return run_exp5(cfg);
    }
    throw ConfigError("unknown experiment id");
}

} // namespace shadowlab::experiments
