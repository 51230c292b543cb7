// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <aximhd/apweight.hpp>
#include <aximhd/diagnostics.hpp>
#include <aximhd/evolve.hpp>
#include <aximhd/initial.hpp>
#include <aximhd/parallel.hpp>
#include <aximhd/poisson5d.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace aximhd;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("%s  %2d %-22s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

RunConfig ring(int n, Mode mode) {
    RunConfig cfg;
    cfg.grid = {n, n, 4.0, 4.0};
    cfg.mode = mode;
    cfg.pi_scheme = PiScheme::upwind1;
    cfg.t_end = 1.0;
    cfg.output_every = 16;
    cfg.initial_name = "gaussian-ring";
    cfg.initial_params = {{"amplitude", 1.0}, {"r0", 1.5}, {"z0", 2.0}, {"sigma", 0.35}};
    return cfg;
}

struct TimedRun {
    std::vector<DiagnosticsRecord> recs;
    double seconds = 0.0;
    long steps = 0;
};

TimedRun timed_run(const RunConfig& cfg) {
    const auto t0 = Clock::now();
    RunResult r = run(cfg);
    return {std::move(r.records), seconds_since(t0), r.steps};
}

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
double max_signed(const std::vector<double>& v) {
    double m = -INFINITY;
    for (double x : v) m = std::max(m, x);
    return m;
}

std::string shrink_text(double coarse, double fine) {
    if (coarse <= 0.0 && fine <= 0.0) return "no positive part at 64^2 or 128^2";
    return fmt("positive part 64^2 %.3e, 128^2 %.3e, shrink %.2f", coarse, fine, fine > 0 ? coarse / fine : INFINITY);
}

// ---------------------------------------------------------------- criteria

void max_principle(const TimedRun& ideal128) {
    const auto rep = check_max_principle(ideal128.recs);
    report(1, "max-principle", rep.status == CheckStatus::pass && ideal128.seconds < 60.0,
           fmt("sup|Pi| %.15f <= %.15f over %zu records; 128^2 run %.1f s (%ld steps)", rep.value, rep.tolerance,
               ideal128.recs.size(), ideal128.seconds, ideal128.steps));
}

void resistive_pi(const TimedRun& res64, const TimedRun& res128) {
    bool monotone = true;
    double worst = -INFINITY;
    for (std::size_t k = 1; k < res128.recs.size(); ++k) {
        const double rel = (res128.recs[k].pi_l2 - res128.recs[k - 1].pi_l2) / res128.recs[k - 1].pi_l2;
        worst = std::max(worst, rel);
        if (rel > 1e-10) monotone = false;
    }
    const double c = max_pos(pi_l2_residuals(res64.recs));
    const double f = max_pos(pi_l2_residuals(res128.recs));
    const auto shrink = compare_shrink("pi-l2", c, f, 2.0);
    report(2, "resistive-pi-l2", monotone && shrink.status == CheckStatus::pass,
           fmt("max relative step in ||Pi||_2 %.3e; max signed residual 64^2 %.3e, 128^2 %.3e; ", worst,
               max_signed(pi_l2_residuals(res64.recs)), max_signed(pi_l2_residuals(res128.recs))) +
               shrink_text(c, f));
}

void energy_law(const TimedRun& ideal64, const TimedRun& ideal128) {
    const double c = max_abs(energy_residuals(ideal64.recs));
    const double f = max_abs(energy_residuals(ideal128.recs));
    report(3, "energy-law", c / f >= 1.8,
           fmt("max |dE/dt + ||grad u||^2| 64^2 %.4e, 128^2 %.4e, shrink %.3f, observed order %.2f", c, f, c / f,
               std::log2(c / f)));
}

double manufactured_error(int n) {
    const double R = 2.0, L = 2.0, k = 2.0 * std::numbers::pi / L;
    const Grid g = make_grid(n, n, R, L);
    ScalarField rhs(g), exact(g);
    exact.fill([&](double r, double z) { return std::exp(-r * r) * (1.0 - r * r / (R * R)) * std::cos(k * z); });
    rhs.fill([&](double r, double z) {
        const double b = std::exp(-r * r), c = 1.0 - r * r / (R * R);
        return -b * ((4.0 * r * r - 8.0) * c - 8.0 / (R * R) + 8.0 * r * r / (R * R) - k * k * c) * std::cos(k * z);
    });
    rhs.enforce_boundary();
    return norm_lp(solve_stream5d(rhs, g).psi_over_r - exact, INFINITY);
}

void poisson() {
    const auto t0 = Clock::now();
    const double e64 = manufactured_error(64), e128 = manufactured_error(128);
    const double ratio = e64 / e128;
    report(4, "poisson-convergence", ratio >= 3.2 && ratio <= 4.8,
           fmt("max error 64^2 %.4e, 128^2 %.4e, ratio %.3f (%.2f s)", e64, e128, ratio, seconds_since(t0)));
}

void curl_identity() {
    double gap[2];
    const int sizes[2] = {128, 256};
    for (int s = 0; s < 2; ++s) {
        const Grid g = make_grid(sizes[s], sizes[s], 4.0, 4.0);
        const AxiState st = make_state(ScalarField(g), gaussian_ring(g, 1.0, 1.5, 2.0, 0.35), Mode::ideal);
        const double lhs = curl_gradient_sq_cartesian(st.velocity);
        const double rhs = curl_gradient_sq_identity(st.omega_red);
        gap[s] = std::abs(lhs - rhs) / rhs;
    }
    report(5, "curl-identity", gap[0] <= 0.05 && gap[1] <= 0.02,
           fmt("ring vorticity: relative gap 128^2 %.3e (tol 5e-2), 256^2 %.3e (tol 2e-2)", gap[0], gap[1]));
}

void inequalities(const TimedRun& ideal64, const TimedRun& ideal128, const TimedRun& res64, const TimedRun& res128) {
    const double c31 = max_pos(ineq31_residuals(ideal64.recs)), f31 = max_pos(ineq31_residuals(ideal128.recs));
    const double c2 = max_pos(ineq2_residuals(res64.recs)), f2 = max_pos(ineq2_residuals(res128.recs));
    const bool ok31 = compare_shrink("ineq31", c31, f31, 2.0).status == CheckStatus::pass;
    const bool ok2 = compare_shrink("ineq2", c2, f2, 2.0).status == CheckStatus::pass;
    report(6, "omega-inequalities", ok31 && ok2,
           fmt("ideal: max signed %.3e / %.3e, ", max_signed(ineq31_residuals(ideal64.recs)),
               max_signed(ineq31_residuals(ideal128.recs))) +
               shrink_text(c31, f31) +
               fmt("; resistive: max signed %.3e / %.3e, ", max_signed(ineq2_residuals(res64.recs)),
                   max_signed(ineq2_residuals(res128.recs))) +
               shrink_text(c2, f2));
}

void cz_constant(const TimedRun& ideal64, const TimedRun& ideal128) {
    const double c = check_cz_ratio(ideal64.recs).value, f = check_cz_ratio(ideal128.recs).value;
    const auto rep = compare_stable("cz-ratio", c, f, 0.15);
    report(7, "cz-constant", rep.status == CheckStatus::pass && c > 0.0,
           fmt("sup ratio 64^2 %.5f, 128^2 %.5f, relative gap %.4f (tol 0.15)", c, f, rep.value));
}

void ap_sweep_check() {
    const auto t0 = Clock::now();
    const long samples = 100000;
    const ApProbe defaults;
    struct Case {
        double p;
        std::vector<double> alphas;
        ApClass want;
    };
    const std::vector<Case> cases = {{2.0, {-3.0, -2.0, 0.0, 2.0, 3.0}, ApClass::bounded},
                                     {2.0, {-4.5, 4.5}, ApClass::unbounded},
                                     {3.0, {6.0}, ApClass::bounded},
                                     {3.0, {9.0}, ApClass::unbounded}};
    bool classes_ok = true, jensen_ok = true, scale_ok = true;
    int finite_cells = 0;
    std::ostringstream wrong;
    for (const auto& c : cases) {
        const auto reports = ap_sweep(c.p, c.alphas, defaults.t_ratios, samples, 12345);
        for (const auto& r : reports) {
            if (r.classification != c.want) {
                classes_ok = false;
                wrong << " alpha=" << r.alpha << ":" << to_string(r.classification);
            }
            for (const auto& cell : r.cells) {
                if (cell.divergent) continue;
                ++finite_cells;
                if (cell.estimate < 1.0 - 3.0 * cell.stderr_) jensen_ok = false;
                ApProbe big;
                big.alpha = r.alpha;
                big.p = c.p;
                big.mc_samples = samples;
                big.rng_seed = 777;
                big.radius = 2.0;
                const ApEstimate e = ap_constant(big, cell.t);
                if (std::abs(e.estimate - cell.estimate) > 3.0 * std::hypot(e.stderr_, cell.stderr_)) scale_ok = false;
            }
        }
    }
    const double secs = seconds_since(t0);
    report(8, "ap-sweep", classes_ok && jensen_ok && scale_ok && secs < 60.0,
           fmt("classes %s, Jensen %s and scale invariance %s over %d finite cells, %ld samples/cell, %.1f s",
               classes_ok ? "as expected" : ("wrong:" + wrong.str()).c_str(), jensen_ok ? "ok" : "violated",
               scale_ok ? "ok" : "violated", finite_cells, samples, secs));
}

double smooth_cutoff(double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / (1.0 - x)), b = std::exp(-1.0 / x);
    return a / (a + b);
}

void stationary() {
    const Grid g = make_grid(128, 32, 4.0, 4.0);
    double dev[2] = {0.0, 0.0};
    for (int m = 0; m < 2; ++m) {
        const Mode mode = m == 0 ? Mode::ideal : Mode::resistive;
        RunConfig cfg;
        cfg.mode = mode;
        ScalarField pi(g);
        pi.fill([](double r, double) { return 0.6 * smooth_cutoff((r - 2.0) / 1.5); });
        AxiState s = make_state(pi, ScalarField(g), mode);
        const ScalarField pi0 = s.pi;
        Integrator integ(g);
        for (int n = 0; n < 100; ++n) integ.step(s, cfg, cfl_dt(s, cfg));
        // Resistive: plateau interior r <= 1; the layer at 2 < r < 3.5 diffuses.
        const int last = mode == Mode::ideal ? g.n_r : 32;
        for (int i = 0; i <= last; ++i)
            for (int j = 0; j < g.n_z; ++j) dev[m] = std::max(dev[m], std::abs(s.pi(i, j) - pi0(i, j)));
        dev[m] = std::max(dev[m], norm_lp(s.omega_red, INFINITY));
    }
    report(9, "stationary-plateau", dev[0] <= 1e-12 && dev[1] <= 1e-12,
           fmt("100 steps: max deviation ideal %.2e (whole field), resistive %.2e (r <= 1)", dev[0], dev[1]));
}

void determinism() {
    RunConfig cfg = ring(48, Mode::resistive);
    cfg.t_end = 0.1;
    cfg.pi_scheme = PiScheme::muscl_minmod;
    std::string csv[3];
    const int threads[3] = {0, 1, 3};
    for (int k = 0; k < 3; ++k) {
        set_thread_limit(threads[k]);
        std::ostringstream os;
        write_csv(os, run(cfg).records);
        csv[k] = os.str();
    }
    set_thread_limit(0);
    const bool same = csv[0] == csv[1] && csv[1] == csv[2];
    report(10, "determinism", same && !csv[0].empty(),
           fmt("diagnostics.csv of 3 runs (threads auto, 1, 3): %s, %zu bytes", same ? "byte-identical" : "differ",
               csv[0].size()));
}

} // namespace

int main() {
    apply_thread_env();
    std::printf("acceptance suite (threads: %d)\n", max_threads());

    poisson();
    curl_identity();
    stationary();
    determinism();
    ap_sweep_check();

    const TimedRun ideal128 = timed_run(ring(128, Mode::ideal));
    const TimedRun ideal64 = timed_run(ring(64, Mode::ideal));
    const TimedRun res128 = timed_run(ring(128, Mode::resistive));
    const TimedRun res64 = timed_run(ring(64, Mode::resistive));

    max_principle(ideal128);
    resistive_pi(res64, res128);
    energy_law(ideal64, ideal128);
    inequalities(ideal64, ideal128, res64, res128);
    cz_constant(ideal64, ideal128);

    std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
