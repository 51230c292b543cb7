#include "aximhd/grid.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "aximhd/error.hpp"
#include "aximhd/kernels.hpp"

namespace aximhd {

Grid make_grid(int n_r, int n_z, double r_max, double z_len) {
    if (n_r < 8 || n_z < 8) {
        throw ConfigError("grid: n_r and n_z must be >= 8 (got " + std::to_string(n_r) + ", " +
                          std::to_string(n_z) + ")");
    }
    if (!(r_max > 0.0) || !(z_len > 0.0) || !std::isfinite(r_max) || !std::isfinite(z_len)) {
        throw ConfigError("grid: r_max and z_len must be positive and finite");
    }
    Grid g;
    g.n_r = n_r;
    g.n_z = n_z;
    g.r_max = r_max;
    g.z_len = z_len;
    g.h_r = r_max / n_r;
    g.h_z = z_len / n_z;
    return g;
}

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parse_parity(const std::string& s) {
    if (s == "even") return Parity::even;
    if (s == "odd") return Parity::odd;
    throw ConfigError("unknown parity '" + s + "'");
}

ScalarField::ScalarField(const Grid& grid, Parity parity, Boundary boundary)
    : grid_(grid), values_(grid.size(), 0.0), parity_(parity), boundary_(boundary) {}

bool ScalarField::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

void ScalarField::enforce_boundary() {
    if (parity_ == Parity::odd)
        for (double& v : row(0)) v = 0.0;
    if (boundary_ == Boundary::dirichlet_zero)
        for (double& v : row(grid_.n_r)) v = 0.0;
}

namespace {
void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) throw FieldError("fields live on different grids");
}
} // namespace

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    require_same_grid(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    require_same_grid(*this, o);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double c, ScalarField a) { return a *= c; }

double norm_lp(const ScalarField& f, double p) {
    if (std::isinf(p) && p > 0) return kernels::parallel::max_abs(f.values());
    if (!(p >= 1.0)) throw FieldError("norm_lp: p must be >= 1");
    const double s = kernels::parallel::weighted_power_sum(f.grid(), f.values(), p);
    if (p == 2.0) return std::sqrt(s);
    if (p == 1.0) return s;
    return std::pow(s, 1.0 / p);
}

double norm_l2_sq(const ScalarField& f) { return kernels::parallel::weighted_power_sum(f.grid(), f.values(), 2.0); }

double integrate(const ScalarField& f) {
    const Grid& g = f.grid();
    double total = 0.0;
    for (int i = 0; i <= g.n_r; ++i) {
        double row = 0.0;
        for (double v : f.row(i)) row += v;
        double w = 2.0 * std::numbers::pi * g.r(i) * g.h_r * g.h_z;
        if (i == g.n_r) w *= 0.5;
        total += w * row;
    }
    return total;
}

namespace {

// Value below the axis under the field's parity.
double mirror(const ScalarField& f, int i, int j) {
    if (i >= 0) return f(i, j);
    return f.parity() == Parity::even ? f(-i, j) : -f(-i, j);
}

int wrap(int j, int n) { return j < 0 ? j + n : (j >= n ? j - n : j); }

Parity flipped(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

} // namespace

ScalarField ddr(const ScalarField& f) {
    const Grid& g = f.grid();
    ScalarField out(g, flipped(f.parity()), Boundary::neumann_zero);
    const int n = g.n_r;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j < g.n_z; ++j) {
            if (i < n) {
                out(i, j) = (f(i + 1, j) - mirror(f, i - 1, j)) / (2.0 * g.h_r);
            } else {
                out(i, j) = (3.0 * f(n, j) - 4.0 * f(n - 1, j) + f(n - 2, j)) / (2.0 * g.h_r);
            }
        }
    }
    return out;
}

ScalarField ddz(const ScalarField& f) {
    const Grid& g = f.grid();
    ScalarField out(g, f.parity(), f.boundary());
    for (int i = 0; i <= g.n_r; ++i)
        for (int j = 0; j < g.n_z; ++j)
            out(i, j) = (f(i, wrap(j + 1, g.n_z)) - f(i, wrap(j - 1, g.n_z))) / (2.0 * g.h_z);
    return out;
}

ScalarField d2dz2(const ScalarField& f) {
    const Grid& g = f.grid();
    ScalarField out(g, f.parity(), f.boundary());
    const double hz2 = g.h_z * g.h_z;
    for (int i = 0; i <= g.n_r; ++i)
        for (int j = 0; j < g.n_z; ++j)
            out(i, j) = (f(i, wrap(j + 1, g.n_z)) - 2.0 * f(i, j) + f(i, wrap(j - 1, g.n_z))) / hz2;
    return out;
}

ScalarField d2dr2(const ScalarField& f) {
    const Grid& g = f.grid();
    ScalarField out(g, f.parity(), Boundary::neumann_zero);
    const double hr2 = g.h_r * g.h_r;
    const int n = g.n_r;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j < g.n_z; ++j) {
            if (i < n) {
                out(i, j) = (f(i + 1, j) - 2.0 * f(i, j) + mirror(f, i - 1, j)) / hr2;
            } else {
                out(i, j) = (2.0 * f(n, j) - 5.0 * f(n - 1, j) + 4.0 * f(n - 2, j) - f(n - 3, j)) / hr2;
            }
        }
    }
    return out;
}

ScalarField d2drdz(const ScalarField& f) { return ddz(ddr(f)); }

ScalarField laplace5d_apply(const ScalarField& f) {
    if (f.parity() != Parity::even) throw FieldError("laplace5d_apply: input must have even parity");
    const Grid& g = f.grid();
    ScalarField out(g, Parity::even, f.boundary());
    kernels::parallel::laplace5d(g, kernels::make_radial_stencil(g), f.values(), out.values());
    return out;
}

double radial_cell_volume(const Grid& g, int i) {
    const double hi = (i + 0.5) * g.h_r;
    const double lo = i > 0 ? (i - 0.5) * g.h_r : 0.0;
    return (hi * hi * hi * hi - lo * lo * lo * lo) / (4.0 * g.h_r);
}

double inner_product_5d(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f, g);
    const Grid& gr = f.grid();
    double total = 0.0;
    for (int i = 0; i < gr.n_r; ++i) {
        double row = 0.0;
        for (int j = 0; j < gr.n_z; ++j) row += f(i, j) * g(i, j);
        total += radial_cell_volume(gr, i) * gr.h_r * gr.h_z * row;
    }
    return total;
}

void write_snapshot(std::ostream& os, const ScalarField& f) {
    const Grid& g = f.grid();
    os << std::setprecision(17);
    os << "AXIFIELD v1 " << g.n_r << ' ' << g.n_z << ' ' << g.r_max << ' ' << g.z_len << ' '
       << to_string(f.parity()) << '\n';
    for (int i = 0; i <= g.n_r; ++i) {
        const auto row = f.row(i);
        for (int j = 0; j < g.n_z; ++j) {
            if (j) os << ' ';
            os << row[j];
        }
        os << '\n';
    }
}

ScalarField read_snapshot(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("snapshot: empty input");
    std::istringstream hs(line);
    std::string magic, version, parity;
    int n_r = 0, n_z = 0;
    double r_max = 0, z_len = 0;
    if (!(hs >> magic >> version >> n_r >> n_z >> r_max >> z_len >> parity) || magic != "AXIFIELD" ||
        version != "v1") {
        throw ConfigError("snapshot: bad header '" + line + "'");
    }
    ScalarField f(make_grid(n_r, n_z, r_max, z_len), parse_parity(parity));
    for (int i = 0; i <= n_r; ++i) {
        if (!std::getline(is, line)) throw ConfigError("snapshot: truncated at row " + std::to_string(i));
        std::istringstream rs(line);
        for (int j = 0; j < n_z; ++j) {
            std::string tok;
            if (!(rs >> tok)) throw ConfigError("snapshot: short row " + std::to_string(i));
            f(i, j) = std::stod(tok);
        }
    }
    if (!f.all_finite()) throw ConfigError("snapshot: non-finite value");
    return f;
}

void write_snapshot_file(const std::string& path, const ScalarField& f) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot write " + path);
    write_snapshot(os, f);
}

ScalarField read_snapshot_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read " + path);
    return read_snapshot(is);
}

} // namespace aximhd
