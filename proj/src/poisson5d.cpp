#include "aximhd/poisson5d.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "aximhd/error.hpp"

namespace aximhd {

namespace {
// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

struct StreamSolver::Plans {
    double* real = nullptr;
    fftw_complex* spectrum = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    ~Plans() {
        std::lock_guard lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
        fftw_free(real);
        fftw_free(spectrum);
    }
};

StreamSolver::StreamSolver(const Grid& grid)
    : grid_(grid), stencil_(kernels::make_radial_stencil(grid)), n_modes_(grid.n_z / 2 + 1),
      plans_(std::make_unique<Plans>()) {
    const int nr = grid_.n_r;
    const int nz = grid_.n_z;

    // Thomas factorization of (-L_r + mu_k) for every axial mode k.
    sweep_.assign(static_cast<std::size_t>(n_modes_) * nr, 0.0);
    inv_pivot_.assign(static_cast<std::size_t>(n_modes_) * nr, 0.0);
    for (int k = 0; k < n_modes_; ++k) {
        const double s = std::sin(std::numbers::pi * k / nz);
        const double mu = 4.0 * s * s / (grid_.h_z * grid_.h_z);
        double* cp = sweep_.data() + static_cast<std::size_t>(k) * nr;
        double* ip = inv_pivot_.data() + static_cast<std::size_t>(k) * nr;
        for (int i = 0; i < nr; ++i) {
            const double diag = stencil_.plus[i] + stencil_.minus[i] + mu;
            const double lower = -stencil_.minus[i];
            const double upper = i + 1 < nr ? -stencil_.plus[i] : 0.0;
            const double pivot = i > 0 ? diag - lower * cp[i - 1] : diag;
            ip[i] = 1.0 / pivot;
            cp[i] = upper * ip[i];
        }
    }

    std::lock_guard lock(planner_mutex());
    plans_->real = fftw_alloc_real(static_cast<std::size_t>(nr) * nz);
    plans_->spectrum = fftw_alloc_complex(static_cast<std::size_t>(nr) * n_modes_);
    int n[] = {nz};
    plans_->forward = fftw_plan_many_dft_r2c(1, n, nr, plans_->real, nullptr, 1, nz, plans_->spectrum, nullptr, 1,
                                             n_modes_, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_many_dft_c2r(1, n, nr, plans_->spectrum, nullptr, 1, n_modes_, plans_->real, nullptr,
                                              1, nz, FFTW_ESTIMATE);
    if (!plans_->forward || !plans_->backward) throw std::runtime_error("FFTW plan creation failed");
}

StreamSolver::~StreamSolver() = default;

ScalarField StreamSolver::solve_field(const ScalarField& omega) {
    if (!(omega.grid() == grid_)) throw FieldError("solve_stream5d: field grid does not match solver grid");
    if (omega.parity() != Parity::even) throw FieldError("solve_stream5d: Omega must have even parity");
    if (!omega.all_finite()) throw FieldError("solve_stream5d: Omega has non-finite values");

    const int nr = grid_.n_r;
    const int nz = grid_.n_z;
    const auto src = omega.values();
    std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(nr) * nz, plans_->real);
    fftw_execute(plans_->forward);

    fftw_complex* spectrum = plans_->spectrum;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n_modes_; ++k) {
        const double* cp = sweep_.data() + static_cast<std::size_t>(k) * nr;
        const double* ip = inv_pivot_.data() + static_cast<std::size_t>(k) * nr;
        // forward elimination, in place
        double pr = 0.0, pi = 0.0;
        for (int i = 0; i < nr; ++i) {
            fftw_complex& v = spectrum[static_cast<std::size_t>(i) * n_modes_ + k];
            const double lower = -stencil_.minus[i];
            pr = (v[0] - lower * pr) * ip[i];
            pi = (v[1] - lower * pi) * ip[i];
            v[0] = pr;
            v[1] = pi;
        }
        for (int i = nr - 2; i >= 0; --i) {
            fftw_complex& v = spectrum[static_cast<std::size_t>(i) * n_modes_ + k];
            const fftw_complex& w = spectrum[static_cast<std::size_t>(i + 1) * n_modes_ + k];
            v[0] -= cp[i] * w[0];
            v[1] -= cp[i] * w[1];
        }
    }

    fftw_execute(plans_->backward);
    ScalarField q(grid_, Parity::even, Boundary::dirichlet_zero);
    auto dst = q.values();
    const double scale = 1.0 / nz;
    for (std::size_t m = 0; m < static_cast<std::size_t>(nr) * nz; ++m) dst[m] = plans_->real[m] * scale;
    return q;
}

StreamSolution StreamSolver::solve(const ScalarField& omega) {
    StreamSolution sol{solve_field(omega), 0.0};
    ScalarField lap = laplace5d_apply(sol.psi_over_r);
    // residual of -Delta_5 q - Omega on rows below the wall
    ScalarField res(grid_);
    for (int i = 0; i < grid_.n_r; ++i)
        for (int j = 0; j < grid_.n_z; ++j) res(i, j) = -lap(i, j) - omega(i, j);
    sol.residual_norm = norm_lp(res, 2.0);
    return sol;
}

StreamSolution solve_stream5d(const ScalarField& omega, const Grid& grid) {
    thread_local std::unique_ptr<StreamSolver> cached;
    if (!cached || !(cached->grid() == grid)) cached = std::make_unique<StreamSolver>(grid);
    return cached->solve(omega);
}

VelocityField velocity_from_stream(const StreamSolution& sol) { return velocity_from_stream(sol.psi_over_r); }

VelocityField velocity_from_stream(const ScalarField& q) {
    const Grid& g = q.grid();
    const ScalarField qz = ddz(q);
    const ScalarField qr = ddr(q);
    VelocityField u{ScalarField(g, Parity::odd, Boundary::dirichlet_zero),
                    ScalarField(g, Parity::even, Boundary::neumann_zero)};
    for (int i = 0; i <= g.n_r; ++i) {
        const double r = g.r(i);
        for (int j = 0; j < g.n_z; ++j) {
            u.u_r(i, j) = -r * qz(i, j);
            u.u_z(i, j) = 2.0 * q(i, j) + r * qr(i, j);
        }
    }
    u.u_r.enforce_boundary();
    return u;
}

ScalarField divergence(const VelocityField& u) {
    const Grid& g = u.u_r.grid();
    const ScalarField dr = ddr(u.u_r);
    const ScalarField dz = ddz(u.u_z);
    ScalarField div(g, Parity::even, Boundary::neumann_zero);
    for (int i = 0; i <= g.n_r; ++i) {
        for (int j = 0; j < g.n_z; ++j) {
            const double over_r = i == 0 ? dr(0, j) : u.u_r(i, j) / g.r(i);
            div(i, j) = dr(i, j) + over_r + dz(i, j);
        }
    }
    return div;
}

ScalarField hessian_sq(const ScalarField& q) {
    const Grid& g = q.grid();
    const ScalarField qrr = d2dr2(q);
    const ScalarField qr = ddr(q);
    const ScalarField qzz = d2dz2(q);
    const ScalarField qrz = d2drdz(q);
    ScalarField h(g, Parity::even, Boundary::neumann_zero);
    for (int i = 0; i <= g.n_r; ++i) {
        for (int j = 0; j < g.n_z; ++j) {
            const double over_r = i == 0 ? qrr(0, j) : qr(i, j) / g.r(i);
            h(i, j) = qrr(i, j) * qrr(i, j) + over_r * over_r + 2.0 * qrz(i, j) * qrz(i, j) + qzz(i, j) * qzz(i, j);
        }
    }
    return h;
}

double cz_operator_ratio(const ScalarField& omega) {
    const double denom = norm_lp(omega, 2.0);
    if (denom == 0.0) return 0.0;
    const StreamSolution sol = solve_stream5d(omega, omega.grid());
    return std::sqrt(norm_lp(hessian_sq(sol.psi_over_r), 1.0)) / denom;
}

} // namespace aximhd
