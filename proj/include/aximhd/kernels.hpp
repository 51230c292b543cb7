#pragma once

// Hot loops of the solver: the 5D Laplacian stencil, the three advection
// operators and the norm reductions.
//
// Every kernel exists twice. `serial` is the reference implementation kept
// for testing; `parallel` distributes radial rows over OpenMP threads. Both
// write identical results: rows are independent and reductions are summed
// per row first, then over rows in fixed order.
//
// Arrays are radial-major (n_r + 1) x n_z, z periodic, axis at row 0.

#include <span>
#include <vector>

#include "aximhd/grid.hpp"

namespace aximhd::kernels {

/// Coefficients of the conservative radial 5D operator at interior rows:
/// (Lf)_i = plus[i] (f_{i+1} - f_i) + minus[i] (f_{i-1} - f_i).
struct RadialStencil {
    std::vector<double> plus;
    std::vector<double> minus;
};
RadialStencil make_radial_stencil(const Grid& g);

namespace serial {

/// out = Delta_5 f (even input assumed; wall row one-sided).
void laplace5d(const Grid& g, const RadialStencil& st, std::span<const double> f, std::span<double> out);
/// out = -(u_r d_r f + u_z d_z f), first-order upwind.
void advect_upwind1(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                    std::span<const double> f, std::span<double> out);
/// out = -(u_r d_r f + u_z d_z f), MUSCL reconstruction with minmod slopes.
void advect_muscl(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                  std::span<const double> f, std::span<double> out);
/// out = -(u_r d_r f + u_z d_z f), second-order centered.
void advect_centered(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                     std::span<const double> f, std::span<double> out);
/// Integral of |f|^p with weight 2 pi r (trapezoid in r, rectangle in z).
double weighted_power_sum(const Grid& g, std::span<const double> f, double p);
double max_abs(std::span<const double> f);

} // namespace serial

namespace parallel {

void laplace5d(const Grid& g, const RadialStencil& st, std::span<const double> f, std::span<double> out);
void advect_upwind1(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                    std::span<const double> f, std::span<double> out);
void advect_muscl(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                  std::span<const double> f, std::span<double> out);
void advect_centered(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                     std::span<const double> f, std::span<double> out);
double weighted_power_sum(const Grid& g, std::span<const double> f, double p);
double max_abs(std::span<const double> f);

} // namespace parallel

} // namespace aximhd::kernels
