#pragma once

// Axisymmetric (r, z) grid and sampled scalar fields.
//
// Nodes: r_i = i*h_r for i = 0..n_r (axis at i = 0, outer wall at i = n_r),
//        z_j = j*h_z for j = 0..n_z-1 (periodic in z).
// Storage is radial-major: value(i, j) lives at i*n_z + j.
// All L^p norms use the 3D measure dx = 2*pi*r dr dz.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace aximhd {

struct Grid {
    int n_r = 0;
    int n_z = 0;
    double r_max = 0.0;
    double z_len = 0.0;
    double h_r = 0.0;
    double h_z = 0.0;

    double r(int i) const { return i * h_r; }
    double z(int j) const { return j * h_z; }
    int radial_nodes() const { return n_r + 1; }
    std::size_t size() const { return static_cast<std::size_t>(n_r + 1) * n_z; }

    bool operator==(const Grid&) const = default;
};

/// Throws ConfigError unless n_r, n_z >= 8 and both extents are positive.
Grid make_grid(int n_r, int n_z, double r_max, double z_len);

/// Behaviour under reflection r -> -r.
enum class Parity { even, odd };
/// Condition at r = r_max.
enum class Boundary { dirichlet_zero, neumann_zero };

const char* to_string(Parity p);
Parity parse_parity(const std::string& s);

class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid& grid, Parity parity = Parity::even,
                         Boundary boundary = Boundary::dirichlet_zero);

    const Grid& grid() const { return grid_; }
    Parity parity() const { return parity_; }
    Boundary boundary() const { return boundary_; }

    double& operator()(int i, int j) { return values_[index(i, j)]; }
    double operator()(int i, int j) const { return values_[index(i, j)]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    std::span<double> row(int i) { return {values_.data() + index(i, 0), static_cast<std::size_t>(grid_.n_z)}; }
    std::span<const double> row(int i) const {
        return {values_.data() + index(i, 0), static_cast<std::size_t>(grid_.n_z)};
    }

    /// Samples f(r, z) at every node.
    template <class F> void fill(F&& f) {
        for (int i = 0; i <= grid_.n_r; ++i)
            for (int j = 0; j < grid_.n_z; ++j)
                (*this)(i, j) = f(grid_.r(i), grid_.z(j));
    }

    bool all_finite() const;
    /// Zeroes the axis row for odd fields and the wall row for Dirichlet fields.
    void enforce_boundary();

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double c);

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * grid_.n_z + j; }

    Grid grid_{};
    std::vector<double> values_;
    Parity parity_ = Parity::even;
    Boundary boundary_ = Boundary::dirichlet_zero;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);

/// u_r is odd in r (vanishes on the axis), u_z is even.
struct VelocityField {
    ScalarField u_r;
    ScalarField u_z;
};

/// 3D-measure L^p norm (trapezoid in r, rectangle in z). p = infinity gives max |f|.
double norm_lp(const ScalarField& f, double p);
/// Squared L^2 norm, same quadrature as norm_lp(f, 2)^2.
double norm_l2_sq(const ScalarField& f);
/// Integral of f with the 3D measure.
double integrate(const ScalarField& f);

/// Second-order centered first derivatives. Axis row uses the parity mirror,
/// the wall row a one-sided 3-point stencil. Output parity flips for ddr.
ScalarField ddr(const ScalarField& f);
ScalarField ddz(const ScalarField& f);
/// Periodic second difference in z.
ScalarField d2dz2(const ScalarField& f);
/// Second radial derivative (axis row via even mirror: 2(f1 - f0)/h^2).
ScalarField d2dr2(const ScalarField& f);
/// Mixed derivative d_r d_z (centered in both directions).
ScalarField d2drdz(const ScalarField& f);

/// d_r^2 + (3/r) d_r + d_z^2 acting on an even field. Throws FieldError for odd input.
ScalarField laplace5d_apply(const ScalarField& f);

/// Inner product with the discrete 5D radial measure (cell volumes of r^3 dr)
/// over rows i < n_r. The interior Delta_5 stencil is symmetric under it.
double inner_product_5d(const ScalarField& f, const ScalarField& g);

/// Radial cell volume W_i = (r_{i+1/2}^4 - r_{i-1/2}^4) / (4 h_r) for i < n_r.
double radial_cell_volume(const Grid& g, int i);

/// Field snapshot ("AXIFIELD v1 n_r n_z r_max z_len parity" + one z-row per line).
void write_snapshot(std::ostream& os, const ScalarField& f);
ScalarField read_snapshot(std::istream& is);
void write_snapshot_file(const std::string& path, const ScalarField& f);
ScalarField read_snapshot_file(const std::string& path);

} // namespace aximhd
