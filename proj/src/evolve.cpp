#include "aximhd/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aximhd/diagnostics.hpp"
#include "aximhd/error.hpp"
#include "aximhd/kernels.hpp"

namespace aximhd {

const char* to_string(Mode m) { return m == Mode::ideal ? "ideal" : "resistive"; }
const char* to_string(PiScheme s) { return s == PiScheme::upwind1 ? "upwind1" : "muscl-minmod"; }
const char* to_string(OmegaScheme) { return "centered2"; }

void validate(const RunConfig& cfg) {
    (void)make_grid(cfg.grid.n_r, cfg.grid.n_z, cfg.grid.r_max, cfg.grid.z_len);
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) throw ConfigError("time.t_end must be >= 0");
    if (!(cfg.cfl_adv > 0.0 && cfg.cfl_adv < 1.0)) throw ConfigError("time.cfl_adv must lie in (0, 1)");
    if (!(cfg.cfl_diff > 0.0 && cfg.cfl_diff < 1.0)) throw ConfigError("time.cfl_diff must lie in (0, 1)");
    if (!(cfg.dt_max > 0.0) || !std::isfinite(cfg.dt_max)) throw ConfigError("time.dt_max must be positive");
    if (cfg.output_every < 1) throw ConfigError("time.output_every must be >= 1");
}

void refresh_velocity(AxiState& state) {
    state.psi_over_r = solve_stream5d(state.omega_red, state.grid()).psi_over_r;
    state.velocity = velocity_from_stream(state.psi_over_r);
}

AxiState make_state(ScalarField pi, ScalarField omega, Mode mode, double time) {
    if (!(pi.grid() == omega.grid())) throw FieldError("make_state: Pi and Omega grids differ");
    AxiState s;
    s.time = time;
    s.mode = mode;
    s.pi = std::move(pi);
    s.omega_red = std::move(omega);
    s.pi.enforce_boundary();
    s.omega_red.enforce_boundary();
    refresh_velocity(s);
    return s;
}

AxiState initial_state(const RunConfig& cfg) {
    const Grid g = make_grid(cfg.grid.n_r, cfg.grid.n_z, cfg.grid.r_max, cfg.grid.z_len);
    InitialFields init = make_initial(g, cfg.initial_name, cfg.initial_params);
    return make_state(std::move(init.pi), std::move(init.omega), cfg.mode, 0.0);
}

namespace {

void zero_wall(ScalarField& f) {
    for (double& v : f.row(f.grid().n_r)) v = 0.0;
}

// -(u.grad)Omega + Delta_5 Omega - d_z(Pi^2), written into out.
void omega_rhs_into(const AxiState& s, const kernels::RadialStencil& st, ScalarField& out, ScalarField& scratch) {
    const Grid& g = s.grid();
    kernels::parallel::advect_centered(g, s.velocity.u_r.values(), s.velocity.u_z.values(), s.omega_red.values(),
                                       out.values());
    kernels::parallel::laplace5d(g, st, s.omega_red.values(), scratch.values());
    out += scratch;
    const int nz = g.n_z;
    for (int i = 0; i < g.n_r; ++i) {
        const auto p = s.pi.row(i);
        auto o = out.row(i);
        for (int j = 0; j < nz; ++j) {
            const double a = p[j + 1 == nz ? 0 : j + 1];
            const double b = p[j == 0 ? nz - 1 : j - 1];
            o[j] -= (a * a - b * b) / (2.0 * g.h_z);
        }
    }
    zero_wall(out);
}

void pi_rhs_into(const AxiState& s, PiScheme scheme, const kernels::RadialStencil& st, ScalarField& out,
                 ScalarField& scratch) {
    const Grid& g = s.grid();
    const auto ur = s.velocity.u_r.values();
    const auto uz = s.velocity.u_z.values();
    if (scheme == PiScheme::upwind1)
        kernels::parallel::advect_upwind1(g, ur, uz, s.pi.values(), out.values());
    else
        kernels::parallel::advect_muscl(g, ur, uz, s.pi.values(), out.values());
    if (s.mode == Mode::resistive) {
        kernels::parallel::laplace5d(g, st, s.pi.values(), scratch.values());
        out += scratch;
    }
    zero_wall(out);
}

} // namespace

ScalarField rhs_omega(const AxiState& state, OmegaScheme) {
    const Grid& g = state.grid();
    ScalarField out(g), scratch(g);
    omega_rhs_into(state, kernels::make_radial_stencil(g), out, scratch);
    return out;
}

ScalarField rhs_pi(const AxiState& state, PiScheme scheme) {
    const Grid& g = state.grid();
    ScalarField out(g), scratch(g);
    pi_rhs_into(state, scheme, kernels::make_radial_stencil(g), out, scratch);
    return out;
}

double advective_speed(const VelocityField& u) {
    const auto ur = u.u_r.values();
    const auto uz = u.u_z.values();
    double m = 0.0;
    for (std::size_t k = 0; k < ur.size(); ++k) m = std::max(m, std::abs(ur[k]) + std::abs(uz[k]));
    return m;
}

double cfl_dt(const AxiState& state, const RunConfig& cfg) {
    const Grid& g = state.grid();
    const double h = std::min(g.h_r, g.h_z);
    const double speed = std::max(advective_speed(state.velocity), 1e-12);
    // Viscosity (and resistivity) 1, times the axis factor 4 of the 5D radial operator.
    constexpr double diffusivity = 4.0;
    const double dt_adv = cfg.cfl_adv * h / speed;
    const double dt_diff = cfg.cfl_diff * h * h / diffusivity;
    return std::min({cfg.dt_max, dt_adv, dt_diff});
}

Integrator::Integrator(const Grid& grid) : solver_(grid), stencil_(kernels::make_radial_stencil(grid)) {}

void Integrator::derive(AxiState& s) {
    if (!s.omega_red.all_finite() || !s.pi.all_finite()) {
        throw BlowUpError("non-finite field at t = " + std::to_string(s.time), s.time,
                          kernels::parallel::max_abs(s.pi.values()),
                          kernels::parallel::max_abs(s.omega_red.values()));
    }
    s.psi_over_r = solver_.solve_field(s.omega_red);
    s.velocity = velocity_from_stream(s.psi_over_r);
}

void Integrator::step(AxiState& state, const RunConfig& cfg, double dt) {
    const Grid& g = state.grid();
    if (!(g == solver_.grid())) throw FieldError("Integrator: state grid does not match");
    const kernels::RadialStencil& st = stencil_;

    ScalarField k_pi(g), k_om(g), scratch(g);
    pi_rhs_into(state, cfg.pi_scheme, st, k_pi, scratch);
    omega_rhs_into(state, st, k_om, scratch);

    // Euler predictor
    AxiState mid;
    mid.time = state.time + dt;
    mid.mode = state.mode;
    mid.pi = state.pi;
    mid.omega_red = state.omega_red;
    {
        auto p = mid.pi.values();
        auto o = mid.omega_red.values();
        const auto kp = k_pi.values();
        const auto ko = k_om.values();
        for (std::size_t m = 0; m < p.size(); ++m) {
            p[m] += dt * kp[m];
            o[m] += dt * ko[m];
        }
    }
    mid.pi.enforce_boundary();
    mid.omega_red.enforce_boundary();
    derive(mid);

    // Corrector: average of the start state and a second Euler step from mid.
    pi_rhs_into(mid, cfg.pi_scheme, st, k_pi, scratch);
    omega_rhs_into(mid, st, k_om, scratch);
    {
        auto p = state.pi.values();
        auto o = state.omega_red.values();
        const auto mp = mid.pi.values();
        const auto mo = mid.omega_red.values();
        const auto kp = k_pi.values();
        const auto ko = k_om.values();
        for (std::size_t m = 0; m < p.size(); ++m) {
            p[m] = 0.5 * p[m] + 0.5 * (mp[m] + dt * kp[m]);
            o[m] = 0.5 * o[m] + 0.5 * (mo[m] + dt * ko[m]);
        }
    }
    state.pi.enforce_boundary();
    state.omega_red.enforce_boundary();
    state.time = mid.time;
    derive(state);
}

AxiState step(const AxiState& state, const RunConfig& cfg) {
    thread_local std::unique_ptr<Integrator> cached;
    thread_local Grid cached_grid;
    if (!cached || !(cached_grid == state.grid())) {
        cached = std::make_unique<Integrator>(state.grid());
        cached_grid = state.grid();
    }
    AxiState next = state;
    cached->step(next, cfg, cfl_dt(state, cfg));
    return next;
}

RunResult run(const RunConfig& cfg, const RunObserver& observer) {
    validate(cfg);
    RunResult result;
    result.final_state = initial_state(cfg);
    AxiState& s = result.final_state;
    Integrator integrator(s.grid());

    auto emit = [&](double dt) {
        DiagnosticsRecord rec = record(s, dt);
        result.records.push_back(rec);
        const double res = last_interval_residual(result.records, cfg.mode);
        result.records.back().ineq31_residual = std::max(0.0, res);
        if (observer) observer(s, result.steps, result.records.back());
    };

    emit(cfl_dt(s, cfg));
    long since_output = 0;
    double last_dt = 0.0;
    while (s.time < cfg.t_end) {
        double dt = cfl_dt(s, cfg);
        bool last = false;
        // Land exactly on t_end; avoid a sliver step.
        if (s.time + dt >= cfg.t_end * (1.0 - 1e-12) || s.time + 1.5 * dt > cfg.t_end) {
            if (s.time + dt >= cfg.t_end * (1.0 - 1e-12)) {
                dt = cfg.t_end - s.time;
                last = true;
            } else {
                dt = 0.5 * (cfg.t_end - s.time);
            }
        }
        integrator.step(s, cfg, dt);
        if (last) s.time = cfg.t_end;
        ++result.steps;
        ++since_output;
        last_dt = dt;
        if (since_output >= cfg.output_every || last) {
            emit(last_dt);
            since_output = 0;
        }
    }
    return result;
}

} // namespace aximhd
