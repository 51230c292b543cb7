#pragma once

// Stream-function solve for -Delta_5 (psi/r) = Omega on the truncated cylinder,
// Delta_5 = d_r^2 + (3/r) d_r + d_z^2, with even parity at the axis and
// psi/r = 0 at r = r_max. A real DFT in z decouples the axial modes; each mode
// is one tridiagonal radial system solved directly.

#include <complex>
#include <memory>
#include <vector>

#include "aximhd/grid.hpp"
#include "aximhd/kernels.hpp"

namespace aximhd {

struct StreamSolution {
    ScalarField psi_over_r;
    /// 3D-measure L^2 norm of -Delta_5(psi/r) - Omega over rows i < n_r.
    double residual_norm = 0.0;
};

/// Reusable solver for one grid. Owns FFT plans and scratch buffers, so a
/// single instance must not be shared between threads.
class StreamSolver {
public:
    explicit StreamSolver(const Grid& grid);
    ~StreamSolver();
    StreamSolver(const StreamSolver&) = delete;
    StreamSolver& operator=(const StreamSolver&) = delete;

    const Grid& grid() const { return grid_; }

    /// Solution only, no residual evaluation.
    ScalarField solve_field(const ScalarField& omega);
    StreamSolution solve(const ScalarField& omega);

private:
    struct Plans;

    Grid grid_;
    kernels::RadialStencil stencil_;
    int n_modes_;
    // Per-mode Thomas factors, mode-major: [k * n_r + i].
    std::vector<double> sweep_;
    std::vector<double> inv_pivot_;
    std::unique_ptr<Plans> plans_;
};

/// Throws FieldError on odd parity, grid mismatch or non-finite input.
StreamSolution solve_stream5d(const ScalarField& omega, const Grid& grid);

/// u_r = -r d_z q, u_z = 2 q + r d_r q with q = psi/r.
VelocityField velocity_from_stream(const StreamSolution& sol);
VelocityField velocity_from_stream(const ScalarField& psi_over_r);

/// Discrete axisymmetric divergence d_r u_r + u_r / r + d_z u_z (axis: 2 d_r u_r + d_z u_z).
ScalarField divergence(const VelocityField& u);

/// |Hessian(psi/r)|^2 = q_rr^2 + (q_r / r)^2 + 2 q_rz^2 + q_zz^2 (axis: q_r / r -> q_rr).
ScalarField hessian_sq(const ScalarField& psi_over_r);

/// ||Hessian(psi/r)||_2 / ||Omega||_2, 0 when Omega = 0.
double cz_operator_ratio(const ScalarField& omega);

} // namespace aximhd
