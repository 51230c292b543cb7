#include <aximhd/error.hpp>
#include <aximhd/verify.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace aximhd {

const char* const kCheckNames[7] = {"energy-law", "max-principle", "pi-l2", "cz-ratio",
                                    "ineq31",     "ineq2",         "curl-identity"};

std::vector<std::string> parse_check_list(const std::string& list) {
    std::vector<std::string> out;
    std::istringstream is(list);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (tok.empty()) continue;
        if (std::find(std::begin(kCheckNames), std::end(kCheckNames), tok) == std::end(kCheckNames)) {
            throw ConfigError("unknown check '" + tok + "'");
        }
        if (std::find(out.begin(), out.end(), tok) == out.end()) out.push_back(tok);
    }
    if (out.empty()) throw ConfigError("no checks requested");
    return out;
}

bool needs_refinement(const std::string& check) {
    return check == "energy-law" || check == "pi-l2" || check == "cz-ratio" || check == "ineq31" ||
           check == "ineq2";
}

RunConfig coarsened(const RunConfig& cfg) {
    RunConfig c = cfg;
    c.grid.n_r = std::max(8, cfg.grid.n_r / 2);
    c.grid.n_z = std::max(8, cfg.grid.n_z / 2);
    return c;
}

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_pos(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

void require_pair(const RefinementPair& pair, const std::string& check) {
    if (pair.coarse.size() < 2 || pair.fine.size() < 2) {
        throw std::invalid_argument(check + ": needs coarse and fine runs with at least 2 records");
    }
}

} // namespace

CheckReport evaluate_check(const std::string& check, const RunConfig& cfg, const RefinementPair& pair) {
    const auto& fine = pair.fine;
    if (check == "max-principle") return check_max_principle(fine);
    if (check == "curl-identity") return check_curl_identity(fine, 0.05);
    if (check == "pi-l2" && cfg.mode == Mode::ideal) return check_pi_l2_monotone(fine, cfg.mode, 0.0);
    require_pair(pair, check);

    if (check == "energy-law") {
        if (cfg.mode == Mode::ideal) {
            auto rep = compare_shrink(check, max_abs(energy_residuals(pair.coarse)), max_abs(energy_residuals(fine)), 1.8);
            rep.detail = "max |dE/dt + ||grad u||^2|: " + rep.detail;
            return rep;
        }
        auto rep = compare_shrink(check, max_pos(energy_residuals(pair.coarse)), max_pos(energy_residuals(fine)), 2.0);
        rep.detail = "positive part of dE/dt + ||grad u||^2: " + rep.detail;
        return rep;
    }
    if (check == "pi-l2") {
        auto mono = check_pi_l2_monotone(fine, cfg.mode, std::numeric_limits<double>::infinity());
        if (mono.status == CheckStatus::skipped) return mono;
        auto rep = compare_shrink(check, max_pos(pi_l2_residuals(pair.coarse)), max_pos(pi_l2_residuals(fine)), 2.0);
        if (mono.status == CheckStatus::fail) {
            rep.status = CheckStatus::fail;
            rep.detail = mono.detail + "; " + rep.detail;
        } else {
            rep.detail = "||Pi||_2 nonincreasing; positive residual " + rep.detail;
        }
        return rep;
    }
    if (check == "cz-ratio") {
        auto rep = compare_stable(check, check_cz_ratio(pair.coarse).value, check_cz_ratio(fine).value, 0.15);
        rep.detail = "sup ||u^r/r||_inf / (||Omega||^1/2 ||d_z Omega||^1/2): " + rep.detail;
        return rep;
    }
    if (check == "ineq31") {
        auto rep = compare_shrink(check, check_ineq31(pair.coarse, 0.0).value, check_ineq31(fine, 0.0).value, 2.0);
        rep.detail = "positive residual " + rep.detail;
        return rep;
    }
    if (check == "ineq2") {
        auto rep = compare_shrink(check, check_ineq2(pair.coarse, 0.0).value, check_ineq2(fine, 0.0).value, 2.0);
        rep.detail = "positive residual " + rep.detail;
        return rep;
    }
    throw ConfigError("unknown check '" + check + "'");
}

double omega_growth_ratio(std::span<const DiagnosticsRecord> recs) {
    double m = 0.0;
    for (const auto& r : recs) m = std::max(m, r.omega_l2 / (1.0 + std::sqrt(r.time)));
    return m;
}

} // namespace aximhd
