#pragma once

// Time integration of the reduced swirl-free MHD system in (Pi, Omega):
//
//   d_t Pi    + u . grad Pi    = [resistive] Delta_5 Pi
//   d_t Omega + u . grad Omega = Delta_5 Omega - d_z (Pi^2)
//
// with u recovered from Omega through the 5D stream-function solve at every
// Runge-Kutta stage. Viscosity and (when enabled) resistivity are 1.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "aximhd/grid.hpp"
#include "aximhd/initial.hpp"
#include "aximhd/kernels.hpp"
#include "aximhd/poisson5d.hpp"

namespace aximhd {

enum class Mode { ideal, resistive };
enum class PiScheme { upwind1, muscl_minmod };
enum class OmegaScheme { centered2 };

const char* to_string(Mode m);
const char* to_string(PiScheme s);
const char* to_string(OmegaScheme s);

struct GridSpec {
    int n_r = 64;
    int n_z = 64;
    double r_max = 4.0;
    double z_len = 4.0;

    bool operator==(const GridSpec&) const = default;
};

struct RunConfig {
    GridSpec grid;
    Mode mode = Mode::ideal;
    PiScheme pi_scheme = PiScheme::upwind1;
    OmegaScheme omega_scheme = OmegaScheme::centered2;
    double t_end = 1.0;
    double cfl_adv = 0.4;
    double cfl_diff = 0.2;
    double dt_max = 1e-2;
    int output_every = 10;
    std::string initial_name = "zero";
    InitialParams initial_params;
    std::string output_dir = ".";
    bool snapshots = false;

    bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError when a field is out of range.
void validate(const RunConfig& cfg);

struct AxiState {
    double time = 0.0;
    ScalarField pi;
    ScalarField omega_red;
    ScalarField psi_over_r;
    VelocityField velocity;
    Mode mode = Mode::ideal;

    const Grid& grid() const { return pi.grid(); }
};

/// Builds the state at t = 0 from the configured catalog entry.
AxiState initial_state(const RunConfig& cfg);
/// Recomputes psi/r and the velocity from omega_red.
void refresh_velocity(AxiState& state);
/// Builds a state from explicit fields and derives the velocity.
AxiState make_state(ScalarField pi, ScalarField omega, Mode mode, double time = 0.0);

/// Right-hand side of the Omega equation (wall row zero).
ScalarField rhs_omega(const AxiState& state, OmegaScheme scheme = OmegaScheme::centered2);
/// Right-hand side of the Pi equation (wall row zero).
ScalarField rhs_pi(const AxiState& state, PiScheme scheme = PiScheme::upwind1);

/// Pointwise max of |u_r| + |u_z|, the velocity scale used by the CFL bound.
double advective_speed(const VelocityField& u);

/// min(dt_max, cfl_adv h_min / speed, cfl_diff h_min^2 / 4).
double cfl_dt(const AxiState& state, const RunConfig& cfg);

/// Reusable Heun (RK2) stepper owning a stream solver for one grid.
class Integrator {
public:
    explicit Integrator(const Grid& grid);

    /// Advances state by dt in place. Throws BlowUpError on non-finite fields.
    void step(AxiState& state, const RunConfig& cfg, double dt);

private:
    void derive(AxiState& s);

    StreamSolver solver_;
    kernels::RadialStencil stencil_;
};

/// One RK2 step with dt = cfl_dt(state, cfg).
AxiState step(const AxiState& state, const RunConfig& cfg);

struct DiagnosticsRecord;

/// Called after each emitted record with the current state and step index.
using RunObserver = std::function<void(const AxiState&, long step, const DiagnosticsRecord&)>;

struct RunResult {
    AxiState final_state;
    std::vector<DiagnosticsRecord> records;
    long steps = 0;
};

/// Integrates to t_end emitting a record every output_every steps (and at the
/// first and last step). Deterministic for a fixed config.
RunResult run(const RunConfig& cfg, const RunObserver& observer = {});

} // namespace aximhd
