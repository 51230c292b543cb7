// aximhd command-line driver: simulate, verify, apcheck.
//
// Exit codes: 0 success, 1 configuration error, 2 blow-up, 3 a check failed.

#include <aximhd/apweight.hpp>
#include <aximhd/config.hpp>
#include <aximhd/diagnostics.hpp>
#include <aximhd/error.hpp>
#include <aximhd/evolve.hpp>
#include <aximhd/grid.hpp>
#include <aximhd/parallel.hpp>
#include <aximhd/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace aximhd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBlowUp = 2;
constexpr int kExitCheckFailed = 3;

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw ConfigError("not a number: '" + tok + "'");
        }
        if (tok.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("not a number: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot write '" + path.string() + "'");
    os << text;
}

std::string snapshot_name(const char* field, long step) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%06ld.axifield", field, step);
    return buf;
}

int cmd_simulate(const std::string& config_path) {
    const RunConfig cfg = load_config(config_path);
    validate(cfg);
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    std::vector<DiagnosticsRecord> records;
    auto observer = [&](const AxiState& s, long step, const DiagnosticsRecord& rec) {
        records.push_back(rec);
        if (cfg.snapshots) {
            write_snapshot_file((dir / snapshot_name("pi", step)).string(), s.pi);
            write_snapshot_file((dir / snapshot_name("omega", step)).string(), s.omega_red);
        }
    };

    nlohmann::json meta;
    meta["config"] = to_json(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    int code = kExitOk;
    try {
        const RunResult res = run(cfg, observer);
        meta["termination"] = "completed";
        meta["steps"] = res.steps;
        meta["final_time"] = res.final_state.time;
    } catch (const BlowUpError& e) {
        meta["termination"] = "blow-up";
        meta["blowup"] = {{"time", e.time()}, {"pi_linf", e.pi_linf()}, {"omega_linf", e.omega_linf()}};
        std::cerr << "aximhd simulate: blow-up: " << e.what() << '\n';
        code = kExitBlowUp;
    }
    meta["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    meta["records"] = records.size();
    meta["threads"] = max_threads();

    std::ostringstream csv;
    write_csv(csv, records);
    write_text(dir / "diagnostics.csv", csv.str());
    write_text(dir / "run_meta.json", meta.dump(2) + "\n");

    if (code == kExitOk && !records.empty()) {
        const auto& last = records.back();
        std::cout << "t = " << last.time << "  E = " << last.energy_kinetic + last.energy_magnetic
                  << "  |Pi|_inf = " << last.pi_linf << "  |Omega|_2 = " << last.omega_l2 << '\n';
    }
    return code;
}

std::vector<DiagnosticsRecord> run_records(const RunConfig& cfg, const char* label) {
    std::cerr << "running " << label << " " << cfg.grid.n_r << "x" << cfg.grid.n_z << " ...\n";
    return run(cfg).records;
}

int cmd_verify(const std::string& config_path, const std::string& check_list) {
    const RunConfig cfg = load_config(config_path);
    validate(cfg);
    const auto checks = parse_check_list(check_list);

    bool need_pair = false;
    for (const auto& c : checks) need_pair = need_pair || needs_refinement(c);

    RefinementPair pair;
    try {
        pair.fine = run_records(cfg, "fine");
        if (need_pair) pair.coarse = run_records(coarsened(cfg), "coarse");
    } catch (const BlowUpError& e) {
        std::cerr << "aximhd verify: blow-up: " << e.what() << '\n';
        return kExitBlowUp;
    }

    bool all_ok = true;
    std::cout << std::left << std::setw(15) << "check" << std::setw(9) << "status" << std::setw(14) << "value"
              << std::setw(12) << "tolerance" << "detail\n";
    for (const auto& c : checks) {
        const CheckReport rep = evaluate_check(c, cfg, pair);
        if (rep.status == CheckStatus::fail) all_ok = false;
        std::cout << std::left << std::setw(15) << rep.name << std::setw(9) << to_string(rep.status)
                  << std::setw(14) << std::setprecision(6) << rep.value << std::setw(12) << rep.tolerance
                  << rep.detail << '\n';
    }
    std::cout << "diagnostic: sup ||Omega||_2 / (1 + sqrt t) = " << std::setprecision(6)
              << omega_growth_ratio(pair.fine) << '\n';
    return all_ok ? kExitOk : kExitCheckFailed;
}

int cmd_apcheck(double p, const std::string& alpha_text, long samples, std::uint64_t seed, const std::string& out_dir) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("--p must exceed 1");
    if (samples < 1) throw ConfigError("--samples must be positive");
    const auto alphas = parse_real_list(alpha_text);
    const ApProbe defaults;
    const auto reports = ap_sweep(p, alphas, defaults.t_ratios, samples, seed);

    fs::create_directories(out_dir);
    std::ostringstream csv;
    write_ap_csv(csv, reports);
    write_text(fs::path(out_dir) / "ap_report.csv", csv.str());

    bool ok = true;
    std::cout << "p = " << p << ", window (-4, " << 4.0 * (p - 1.0) << ")\n";
    for (const auto& r : reports) {
        std::string expect = "edge";
        if (!on_window_edge(r.alpha, p)) {
            const ApClass want = inside_window(r.alpha, p) ? ApClass::bounded : ApClass::unbounded;
            expect = to_string(want);
            if (r.classification != want) ok = false;
        }
        std::cout << "alpha " << std::setw(8) << r.alpha << "  " << std::setw(12) << to_string(r.classification)
                  << " expected " << std::setw(10) << expect << " sup A = " << r.sup_estimate << "  (" << r.trigger
                  << ")\n";
    }
    return ok ? kExitOk : kExitCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Axisymmetric swirl-free MHD simulator and verifier"};
    app.require_subcommand(1);

    std::string config_path;
    auto* sim = app.add_subcommand("simulate", "Run a configuration and write diagnostics");
    sim->add_option("config", config_path, "JSON configuration")->required();

    std::string check_list;
    auto* ver = app.add_subcommand("verify", "Run a configuration and evaluate checks");
    ver->add_option("config", config_path, "JSON configuration")->required();
    ver->add_option("--checks", check_list, "Comma-separated checks")->required();

    double p = 2.0;
    std::string alpha_text;
    long samples = 100000;
    std::uint64_t seed = 12345;
    std::string out_dir = ".";
    auto* ap = app.add_subcommand("apcheck", "Monte-Carlo A_p sweep for w = r^alpha on R^5");
    ap->add_option("--p", p, "Exponent p > 1")->required();
    ap->add_option("--alpha", alpha_text, "Comma-separated alpha values")->required();
    ap->add_option("--samples", samples, "Samples per cell");
    ap->add_option("--seed", seed, "RNG seed");
    ap->add_option("--out", out_dir, "Directory for ap_report.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        apply_thread_env();
        if (*sim) return cmd_simulate(config_path);
        if (*ver) return cmd_verify(config_path, check_list);
        return cmd_apcheck(p, alpha_text, samples, seed, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "aximhd: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "aximhd: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const BlowUpError& e) {
        std::cerr << "aximhd: blow-up: " << e.what() << '\n';
        return kExitBlowUp;
    } catch (const std::exception& e) {
        std::cerr << "aximhd: error: " << e.what() << '\n';
        return kExitConfig;
    }
}
