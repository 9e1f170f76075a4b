#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "isacsense/acceptance.hpp"
#include "isacsense/ardcp.hpp"
#include "isacsense/cf_inversion.hpp"
#include "isacsense/cfar.hpp"
#include "isacsense/config_file.hpp"
#include "isacsense/csv.hpp"
#include "isacsense/errors.hpp"
#include "isacsense/interference.hpp"
#include "isacsense/manifest.hpp"
#include "isacsense/mc.hpp"
#include "isacsense/params.hpp"
#include "isacsense/point_field.hpp"

namespace {

using namespace isacsense;

constexpr const char* kArtifactVersion = "1.0.0";
constexpr double kPerKm2ToSi = 1e-6;

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void ensure_out_dir(const std::string& dir) {
    if (dir.empty() || dir == ".") return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw config_error("cannot create output directory '" + dir + "': " + ec.message());
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok =
            detail::trim(comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos));
        if (tok.empty()) throw config_error("--values: empty entry in '" + text + "'");
        out.push_back(detail::parse_real("--values", tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw config_error("--values: no entries");
    return out;
}

std::string join_values(const std::vector<double>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ",";
        out += format_double(vs[i]);
    }
    return out;
}

// Options shared by every computing subcommand. Densities can be given in
// either unit; both are recorded in the manifest, SI is used everywhere
// internally.
struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    double lambda_si = -1.0;
    double lambda_km2 = -1.0;
    std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--config", c.config_path, "config file (flat key=value)");
    cmd->add_option("--set", c.overrides, "override one config key, e.g. --set alpha_c=3");
    auto* si = cmd->add_option("--lambda-b", c.lambda_si, "base station density, BSs per square meter");
    auto* km =
        cmd->add_option("--lambda-b-per-km2", c.lambda_km2, "base station density, BSs per square kilometer");
    si->excludes(km);
    km->excludes(si);
    cmd->add_option("--out-dir", c.out_dir, "output directory, created if missing");
}

Config resolve_config(const CommonOpts& c) {
    Config cfg;
    if (!c.config_path.empty()) cfg = load_config(c.config_path);
    for (const std::string& kv : c.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw config_error("--set expects key=value, got '" + kv + "'");
        set_key(cfg, detail::trim(kv.substr(0, eq)), detail::trim(kv.substr(eq + 1)));
    }
    if (c.lambda_km2 >= 0.0) cfg.params.lambda_b = c.lambda_km2 * kPerKm2ToSi;
    if (c.lambda_si >= 0.0) cfg.params.lambda_b = c.lambda_si;
    ensure_valid(cfg.params);
    return cfg;
}

RunManifest base_manifest(const std::string& command, const Config& cfg) {
    RunManifest m;
    m.add("artifact.version", kArtifactVersion);
    m.add("command", command);
    m.add("lambda_B_si", format_double(cfg.params.lambda_b));
    m.add("lambda_B_per_km2", format_double(cfg.params.lambda_b / kPerKm2ToSi));
    m.add_config(cfg);
    return m;
}

// ---------------------------------------------------------------- dist --

struct DistArgs {
    std::string model = "all";
    std::string field = "coop";
    double guard_radius = -1.0;  // negative = derive from the field type
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;  // 0 = config value
    int grid_points = 60;
};

int run_dist(const Config& cfg, const DistArgs& a, const std::string& out_dir) {
    const NetworkParams& p = cfg.params;
    if (a.field != "coop" && a.field != "nc") {
        throw config_error("--field must be coop or nc, got '" + a.field + "'");
    }
    if (a.grid_points < 2) throw config_error("--grid-points must be at least 2");
    const bool coop = a.field == "coop";

    McConfig mc = cfg.mc;
    mc.seed = a.seed;
    if (a.trials > 0) mc.trials = a.trials;

    // guard radius for the model fits; the sampler gets the raw override so
    // its default (including a per-realization guard) stays in charge
    const double r_c =
        a.guard_radius >= 0.0 ? a.guard_radius : (coop ? expected_kth_distance(p.lambda_b, p.n_c + 2) : 0.0);

    std::vector<std::string> model_names;
    if (a.model == "all") {
        model_names = {"stable"};
        if (r_c > 0.0) model_names.push_back("tsd");
        model_names.push_back("sia");
    } else if (a.model == "stable" || a.model == "tsd" || a.model == "sia") {
        model_names = {a.model};
    } else {
        throw config_error("--model must be all, stable, tsd, or sia");
    }

    std::vector<InterferenceModel> models;
    for (const std::string& name : model_names) {
        if (name == "stable") {
            models.emplace_back(stable_params_noncoop(p));
        } else if (name == "tsd") {
            if (!(r_c > 0.0)) throw config_error("tsd model needs a positive guard radius");
            models.emplace_back(tsd_params_coop(p, r_c));
        } else {
            models.emplace_back(SiaParams{p.lambda_b, p.alpha_c, r_c});
        }
    }

    const std::vector<double> draws = sample_interference(p, coop, mc, a.guard_radius);
    const std::vector<double> grid = detail::quantile_grid(draws, a.grid_points);
    const std::vector<double> emp = empirical_ccdf(draws, grid);

    std::vector<std::vector<double>> curves(models.size());
    std::vector<double> ks(models.size());
    for (std::size_t m = 0; m < models.size(); ++m) {
        curves[m].resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            curves[m][i] = model_ccdf(models[m], grid[i], cfg.inversion);
        }
        ks[m] = ks_distance(grid, emp, [&](double x) { return model_ccdf(models[m], x, cfg.inversion); });
    }

    const std::string ccdf_name = "dist_ccdf.csv";
    {
        auto out = open_output(join_path(out_dir, ccdf_name));
        CsvWriter csv(out, "dist-ccdf-v1");
        std::vector<std::string> header = {"interference", "empirical_ccdf"};
        for (const std::string& name : model_names) header.push_back(name + "_ccdf");
        csv.header(header);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::vector<double> row = {grid[i], emp[i]};
            for (const auto& curve : curves) row.push_back(curve[i]);
            csv.row(row);
        }
    }

    const std::string summary_name = "dist_summary.csv";
    {
        auto out = open_output(join_path(out_dir, summary_name));
        CsvWriter csv(out, "dist-summary-v1");
        csv.header({"model", "ks_distance", "guard_radius_m", "field", "trials", "seed"});
        for (std::size_t m = 0; m < models.size(); ++m) {
            csv.row_strings({model_names[m], format_double(ks[m]), format_double(r_c), a.field,
                             std::to_string(mc.trials), std::to_string(mc.seed)});
        }
    }

    RunManifest man = base_manifest("dist", cfg);
    man.add("arg.model", a.model);
    man.add("arg.field", a.field);
    man.add("arg.guard_radius", format_double(a.guard_radius));
    man.add("arg.seed", std::to_string(a.seed));
    man.add("arg.trials", std::to_string(a.trials));
    man.add("arg.grid_points", std::to_string(a.grid_points));
    man.add("info.model_guard_radius_m", format_double(r_c));
    man.add("output.0", ccdf_name);
    man.add("output.1", summary_name);
    man.save(join_path(out_dir, "manifest.txt"));

    for (std::size_t m = 0; m < models.size(); ++m) {
        std::printf("%s: ks=%.6g\n", model_names[m].c_str(), ks[m]);
    }
    return 0;
}

// ---------------------------------------------------------------- cfar --

struct CfarArgs {
    double p_frame = 0.1;
    std::string model = "tsd";
    double guard_radius = -1.0;
    bool eta_only = false;
};

int run_cfar(const Config& cfg, const CfarArgs& a, const std::string& out_dir) {
    const NetworkParams& p = cfg.params;
    const double r_c =
        a.guard_radius >= 0.0 ? a.guard_radius : expected_kth_distance(p.lambda_b, p.n_c + 2);

    InterferenceModel model;
    if (a.model == "stable") {
        model = stable_params_noncoop(p);
    } else if (a.model == "tsd") {
        model = tsd_params_coop(p, r_c);
    } else if (a.model == "sia") {
        model = SiaParams{p.lambda_b, p.alpha_c, r_c};
    } else {
        throw config_error("--model must be stable, tsd, or sia");
    }

    const CfarResult res = resolve_cfar(a.p_frame, p, model, r_c, !a.eta_only, cfg.inversion);

    const std::string result_name = "cfar_result.csv";
    {
        auto out = open_output(join_path(out_dir, result_name));
        CsvWriter csv(out, "cfar-result-v1");
        csv.header({"model", "p_frame", "p_bin", "eta", "eta_prime", "mean_interference", "t_r"});
        csv.row_strings({a.model, format_double(res.p_frame), format_double(res.p_bin), format_double(res.eta),
                         format_double(res.eta_prime),
                         res.mean_interference ? format_double(*res.mean_interference) : "",
                         res.t_r ? format_double(*res.t_r) : ""});
    }

    RunManifest man = base_manifest("cfar", cfg);
    man.add("arg.p_frame", format_double(a.p_frame));
    man.add("arg.model", a.model);
    man.add("arg.guard_radius", format_double(a.guard_radius));
    man.add("arg.eta_only", a.eta_only ? "1" : "0");
    man.add("info.model_guard_radius_m", format_double(r_c));
    man.add("output.0", result_name);
    man.save(join_path(out_dir, "manifest.txt"));

    std::printf("p_bin=%.6g eta=%.6g eta_prime=%.6g", res.p_bin, res.eta, res.eta_prime);
    if (res.t_r) std::printf(" t_r=%.6g", *res.t_r);
    std::printf("\n");
    return 0;
}

// --------------------------------------------------------------- ardcp --

struct ArdcpArgs {
    std::string mode = "laplace";
    double t_r = 10.0;
    std::string sweep = "none";  // none | t_r | lambda_b | h_b | n_c
    std::string values;          // comma list; lambda_b values in BSs/Km^2
    bool with_mc = false;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
};

int run_ardcp(const Config& cfg, const ArdcpArgs& a, const std::string& out_dir) {
    CoverageMode mode;
    if (a.mode == "laplace") {
        mode = CoverageMode::LaplaceFunctional;
    } else if (a.mode == "kernel") {
        mode = CoverageMode::KernelOnly;
    } else {
        throw config_error("--mode must be laplace or kernel");
    }
    if (a.sweep != "none" && a.sweep != "t_r" && a.sweep != "lambda_b" && a.sweep != "h_b" && a.sweep != "n_c") {
        throw config_error("--sweep must be one of t_r, lambda_b, h_b, n_c");
    }
    if (a.sweep != "none" && a.values.empty()) throw config_error("--sweep needs --values");

    std::vector<double> values = a.sweep == "none" ? std::vector<double>{} : parse_value_list(a.values);
    const std::size_t n_points = a.sweep == "none" ? 1 : values.size();

    McConfig mc = cfg.mc;
    mc.seed = a.seed;
    if (a.trials > 0) mc.trials = a.trials;

    const std::string sweep_name = "ardcp_sweep.csv";
    auto out = open_output(join_path(out_dir, sweep_name));
    CsvWriter csv(out, "ardcp-sweep-v1");
    std::vector<std::string> header = {"t_r",      "lambda_B_si", "lambda_B_per_km2", "h_B",
                                       "N_c",      "mode",        "analytic_density"};
    if (a.with_mc) {
        header.push_back("mc_density");
        header.push_back("mc_std_error");
    }
    csv.header(header);

    for (std::size_t i = 0; i < n_points; ++i) {
        NetworkParams p = cfg.params;
        double t_r = a.t_r;
        if (a.sweep == "t_r") {
            t_r = values[i];
        } else if (a.sweep == "lambda_b") {
            p.lambda_b = values[i] * kPerKm2ToSi;
        } else if (a.sweep == "h_b") {
            p.h_b = values[i];
        } else if (a.sweep == "n_c") {
            const double v = values[i];
            if (v < 0.0 || v != std::floor(v)) throw config_error("--values: n_c entries must be non-negative integers");
            p.n_c = static_cast<int>(v);
        }
        ensure_valid(p);

        const double analytic = ardcp(t_r, p, mode);
        std::vector<std::string> row = {format_double(t_r),
                                        format_double(p.lambda_b),
                                        format_double(p.lambda_b / kPerKm2ToSi),
                                        format_double(p.h_b),
                                        std::to_string(p.n_c),
                                        a.mode,
                                        format_double(analytic)};
        if (a.with_mc) {
            McConfig point_cfg = mc;
            point_cfg.seed = mc.seed + i;
            const McEstimate est = mc_ardcp(p, t_r, point_cfg);
            row.push_back(format_double(est.value));
            row.push_back(format_double(est.std_error));
            std::printf("point %zu: analytic=%.6g mc=%.6g (se %.2g)\n", i, analytic, est.value, est.std_error);
        } else {
            std::printf("point %zu: analytic=%.6g\n", i, analytic);
        }
        csv.row_strings(row);
    }
    out.close();

    RunManifest man = base_manifest("ardcp", cfg);
    man.add("arg.mode", a.mode);
    man.add("arg.t_r", format_double(a.t_r));
    man.add("arg.sweep", a.sweep);
    man.add("arg.values", a.sweep == "none" ? "" : join_values(values));
    man.add("arg.mc", a.with_mc ? "1" : "0");
    man.add("arg.seed", std::to_string(a.seed));
    man.add("arg.trials", std::to_string(a.trials));
    man.add("output.0", sweep_name);
    man.save(join_path(out_dir, "manifest.txt"));
    return 0;
}

// ------------------------------------------------------------ validate --

struct ValidateArgs {
    std::string level = "fast";
    std::string only;
};

int run_validate(const Config& cfg, const ValidateArgs& a, const std::string& out_dir) {
    Level level;
    if (a.level == "fast") {
        level = Level::Fast;
    } else if (a.level == "full") {
        level = Level::Full;
    } else {
        throw config_error("--level must be fast or full");
    }

    std::vector<CriterionResult> results;
    if (a.only.empty()) {
        results = run_all_criteria(level);
    } else {
        results.push_back(run_criterion(a.only, level));
    }

    const std::string summary_name = "acceptance_summary.csv";
    {
        auto out = open_output(join_path(out_dir, summary_name));
        CsvWriter csv(out, "acceptance-summary-v1");
        csv.header({"criterion", "passed", "detail"});
        for (const CriterionResult& r : results) {
            csv.row_strings({r.name, r.passed ? "1" : "0", r.detail});
        }
    }

    RunManifest man = base_manifest("validate", cfg);
    man.add("arg.level", a.level);
    man.add("arg.only", a.only);
    man.add("output.0", summary_name);
    man.save(join_path(out_dir, "manifest.txt"));

    bool all_ok = true;
    for (const CriterionResult& r : results) {
        std::printf("[%s] %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        all_ok = all_ok && r.passed;
    }
    return all_ok ? 0 : 5;
}

// -------------------------------------------------------------- replay --

int run_replay(const std::string& manifest_path, const std::string& out_dir) {
    const RunManifest man = RunManifest::load(manifest_path);
    Config cfg;
    for (const auto& [k, v] : man.items()) {
        if (k.rfind("config.", 0) == 0) set_key(cfg, k.substr(7), v);
    }
    ensure_valid(cfg.params);
    const std::string command = man.require("command");
    ensure_out_dir(out_dir);

    if (command == "dist") {
        DistArgs a;
        a.model = man.require("arg.model");
        a.field = man.require("arg.field");
        a.guard_radius = detail::parse_real("arg.guard_radius", man.require("arg.guard_radius"));
        a.seed = std::stoull(man.require("arg.seed"));
        a.trials = std::stoull(man.require("arg.trials"));
        a.grid_points = static_cast<int>(std::stoll(man.require("arg.grid_points")));
        return run_dist(cfg, a, out_dir);
    }
    if (command == "cfar") {
        CfarArgs a;
        a.p_frame = detail::parse_real("arg.p_frame", man.require("arg.p_frame"));
        a.model = man.require("arg.model");
        a.guard_radius = detail::parse_real("arg.guard_radius", man.require("arg.guard_radius"));
        a.eta_only = man.require("arg.eta_only") == "1";
        return run_cfar(cfg, a, out_dir);
    }
    if (command == "ardcp") {
        ArdcpArgs a;
        a.mode = man.require("arg.mode");
        a.t_r = detail::parse_real("arg.t_r", man.require("arg.t_r"));
        a.sweep = man.require("arg.sweep");
        const std::string stored = man.require("arg.values");
        a.with_mc = man.require("arg.mc") == "1";
        a.seed = std::stoull(man.require("arg.seed"));
        a.trials = std::stoull(man.require("arg.trials"));
        if (a.sweep != "none") {
            // stored values are already in the sweep key's CLI unit
            a.values = stored;
        }
        return run_ardcp(cfg, a, out_dir);
    }
    if (command == "validate") {
        ValidateArgs a;
        a.level = man.require("arg.level");
        const std::string* only = man.find("arg.only");
        a.only = only ? *only : "";
        return run_validate(cfg, a, out_dir);
    }
    throw config_error("manifest command '" + command + "' is not replayable");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytic and Monte Carlo sensing-performance models for cooperative ISAC networks"};
    app.require_subcommand(1);

    CommonOpts dist_common, cfar_common, ardcp_common, validate_common;
    DistArgs dist_args;
    CfarArgs cfar_args;
    ArdcpArgs ardcp_args;
    ValidateArgs validate_args;
    std::string replay_manifest;
    std::string replay_out_dir = ".";

    CLI::App* dist = app.add_subcommand("dist", "compare interference distribution models against simulation");
    add_common(dist, dist_common);
    dist->add_option("--model", dist_args.model, "all, stable, tsd, or sia");
    dist->add_option("--field", dist_args.field, "coop (guarded) or nc (unguarded)");
    dist->add_option("--guard-radius", dist_args.guard_radius, "override the guard radius, meters");
    dist->add_option("--seed", dist_args.seed, "RNG seed (required: draws are simulated)")->required();
    dist->add_option("--trials", dist_args.trials, "override mc.trials");
    dist->add_option("--grid-points", dist_args.grid_points, "quantile grid size for the CCDF comparison");

    CLI::App* cfar = app.add_subcommand("cfar", "resolve the false-alarm threshold chain");
    add_common(cfar, cfar_common);
    cfar->add_option("--p-frame", cfar_args.p_frame, "frame-level false alarm probability")->required();
    cfar->add_option("--model", cfar_args.model, "stable, tsd, or sia");
    cfar->add_option("--guard-radius", cfar_args.guard_radius, "override the guard radius, meters");
    cfar->add_flag("--eta-only", cfar_args.eta_only, "stop after the interference threshold");

    CLI::App* ardcp_cmd = app.add_subcommand("ardcp", "area detection coverage density, single point or sweep");
    add_common(ardcp_cmd, ardcp_common);
    ardcp_cmd->add_option("--mode", ardcp_args.mode, "laplace or kernel");
    ardcp_cmd->add_option("--t-r", ardcp_args.t_r, "detection threshold (fixed value when sweeping other keys)");
    ardcp_cmd->add_option("--sweep", ardcp_args.sweep, "t_r, lambda_b, h_b, or n_c");
    ardcp_cmd->add_option("--values", ardcp_args.values,
                          "comma-separated sweep values (lambda_b in BSs/Km^2)");
    ardcp_cmd->add_flag("--mc", ardcp_args.with_mc, "add a Monte Carlo column");
    ardcp_cmd->add_option("--seed", ardcp_args.seed, "RNG seed (required with --mc)");
    ardcp_cmd->add_option("--trials", ardcp_args.trials, "override mc.trials");

    CLI::App* validate = app.add_subcommand("validate", "run the acceptance criteria");
    add_common(validate, validate_common);
    validate->add_option("--level", validate_args.level, "fast or full");
    validate->add_option("--only", validate_args.only, "run a single criterion by name");

    CLI::App* replay = app.add_subcommand("replay", "re-run a manifest and regenerate its outputs");
    replay->add_option("manifest", replay_manifest, "path to a manifest.txt")->required();
    replay->add_option("--out-dir", replay_out_dir, "output directory, created if missing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (dist->parsed()) {
            const Config cfg = resolve_config(dist_common);
            ensure_out_dir(dist_common.out_dir);
            return run_dist(cfg, dist_args, dist_common.out_dir);
        }
        if (cfar->parsed()) {
            const Config cfg = resolve_config(cfar_common);
            ensure_out_dir(cfar_common.out_dir);
            return run_cfar(cfg, cfar_args, cfar_common.out_dir);
        }
        if (ardcp_cmd->parsed()) {
            if (ardcp_args.with_mc && ardcp_cmd->count("--seed") == 0) {
                throw config_error("--seed is required with --mc (no silent entropy)");
            }
            const Config cfg = resolve_config(ardcp_common);
            ensure_out_dir(ardcp_common.out_dir);
            return run_ardcp(cfg, ardcp_args, ardcp_common.out_dir);
        }
        if (validate->parsed()) {
            const Config cfg = resolve_config(validate_common);
            ensure_out_dir(validate_common.out_dir);
            return run_validate(cfg, validate_args, validate_common.out_dir);
        }
        if (replay->parsed()) {
            return run_replay(replay_manifest, replay_out_dir);
        }
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const undefined_error& e) {
        std::fprintf(stderr, "undefined quantity: %s\n", e.what());
        return 3;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    }
    return 0;
}
