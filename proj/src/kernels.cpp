#include "aximhd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aximhd::kernels {

RadialStencil make_radial_stencil(const Grid& g) {
    RadialStencil st;
    st.plus.assign(g.n_r, 0.0);
    st.minus.assign(g.n_r, 0.0);
    const double h2 = g.h_r * g.h_r;
    for (int i = 0; i < g.n_r; ++i) {
        const double vol = radial_cell_volume(g, i);
        const double rp = (i + 0.5) * g.h_r;
        st.plus[i] = rp * rp * rp / (h2 * vol);
        if (i > 0) {
            const double rm = (i - 0.5) * g.h_r;
            st.minus[i] = rm * rm * rm / (h2 * vol);
        }
    }
    return st;
}

namespace {

double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

// Ghost-aware accessor for the serial reference: even mirror below the axis,
// constant extension beyond the wall, periodic in z.
struct Accessor {
    const Grid& g;
    std::span<const double> f;
    double operator()(int i, int j) const {
        if (i < 0) i = -i;
        if (i > g.n_r) i = g.n_r;
        j %= g.n_z;
        if (j < 0) j += g.n_z;
        return f[static_cast<std::size_t>(i) * g.n_z + j];
    }
};

double row_weight(const Grid& g, int i) {
    double w = 2.0 * std::numbers::pi * g.r(i) * g.h_r * g.h_z;
    if (i == g.n_r) w *= 0.5;
    return w;
}

double power_term(double v, double p) {
    const double a = std::abs(v);
    if (p == 2.0) return a * a;
    if (p == 1.0) return a;
    return std::pow(a, p);
}

// MUSCL upwind difference along one line; f(k) returns the value at offset k.
template <class F> double muscl_difference(double a, F&& f, double h) {
    if (a > 0.0) {
        const double s0 = minmod(f(0) - f(-1), f(1) - f(0));
        const double sm = minmod(f(-1) - f(-2), f(0) - f(-1));
        return ((f(0) + 0.5 * s0) - (f(-1) + 0.5 * sm)) / h;
    }
    if (a < 0.0) {
        const double s0 = minmod(f(0) - f(-1), f(1) - f(0));
        const double sp = minmod(f(1) - f(0), f(2) - f(1));
        return ((f(1) - 0.5 * sp) - (f(0) - 0.5 * s0)) / h;
    }
    return 0.0;
}

} // namespace

namespace serial {

void laplace5d(const Grid& g, const RadialStencil& st, std::span<const double> f, std::span<double> out) {
    const Accessor at{g, f};
    const double hz2 = g.h_z * g.h_z;
    const double hr2 = g.h_r * g.h_r;
    const int n = g.n_r;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j < g.n_z; ++j) {
            const double c = at(i, j);
            const double zz = (at(i, j + 1) - 2.0 * c + at(i, j - 1)) / hz2;
            double rr;
            if (i < n) {
                rr = st.plus[i] * (at(i + 1, j) - c) + st.minus[i] * (at(i - 1, j) - c);
            } else {
                const double d2 = (2.0 * c - 5.0 * at(n - 1, j) + 4.0 * at(n - 2, j) - at(n - 3, j)) / hr2;
                const double d1 = (3.0 * c - 4.0 * at(n - 1, j) + at(n - 2, j)) / (2.0 * g.h_r);
                rr = d2 + 3.0 * d1 / g.r(n);
            }
            out[static_cast<std::size_t>(i) * g.n_z + j] = rr + zz;
        }
    }
}

void advect_upwind1(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                    std::span<const double> f, std::span<double> out) {
    const Accessor at{g, f};
    for (int i = 0; i <= g.n_r; ++i) {
        for (int j = 0; j < g.n_z; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * g.n_z + j;
            const double a = u_r[k];
            const double b = u_z[k];
            const double c = at(i, j);
            const double dr = a > 0.0 ? (c - at(i - 1, j)) / g.h_r : (at(i + 1, j) - c) / g.h_r;
            const double dz = b > 0.0 ? (c - at(i, j - 1)) / g.h_z : (at(i, j + 1) - c) / g.h_z;
            out[k] = -(a * dr + b * dz);
        }
    }
}

void advect_muscl(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                  std::span<const double> f, std::span<double> out) {
    const Accessor at{g, f};
    for (int i = 0; i <= g.n_r; ++i) {
        for (int j = 0; j < g.n_z; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * g.n_z + j;
            const double a = u_r[k];
            const double b = u_z[k];
            const double dr = muscl_difference(a, [&](int o) { return at(i + o, j); }, g.h_r);
            const double dz = muscl_difference(b, [&](int o) { return at(i, j + o); }, g.h_z);
            out[k] = -(a * dr + b * dz);
        }
    }
}

void advect_centered(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                     std::span<const double> f, std::span<double> out) {
    const Accessor at{g, f};
    const int n = g.n_r;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j < g.n_z; ++j) {
            const std::size_t k = static_cast<std::size_t>(i) * g.n_z + j;
            const double dr = i < n ? (at(i + 1, j) - at(i - 1, j)) / (2.0 * g.h_r)
                                    : (3.0 * at(n, j) - 4.0 * at(n - 1, j) + at(n - 2, j)) / (2.0 * g.h_r);
            const double dz = (at(i, j + 1) - at(i, j - 1)) / (2.0 * g.h_z);
            out[k] = -(u_r[k] * dr + u_z[k] * dz);
        }
    }
}

double weighted_power_sum(const Grid& g, std::span<const double> f, double p) {
    double total = 0.0;
    for (int i = 0; i <= g.n_r; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.n_z; ++j) row += power_term(f[static_cast<std::size_t>(i) * g.n_z + j], p);
        total += row_weight(g, i) * row;
    }
    return total;
}

double max_abs(std::span<const double> f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

} // namespace serial

namespace parallel {

void laplace5d(const Grid& g, const RadialStencil& st, std::span<const double> f, std::span<double> out) {
    const int nz = g.n_z;
    const int n = g.n_r;
    const double hz2 = g.h_z * g.h_z;
    const double hr2 = g.h_r * g.h_r;
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= n; ++i) {
        const double* c = f.data() + static_cast<std::size_t>(i) * nz;
        double* o = out.data() + static_cast<std::size_t>(i) * nz;
        if (i < n) {
            // even mirror: row -1 is row 1
            const double* up = c + nz;
            const double* dn = i > 0 ? c - nz : c + nz;
            const double cp = st.plus[i];
            const double cm = st.minus[i];
            for (int j = 0; j < nz; ++j) {
                const int jp = j + 1 == nz ? 0 : j + 1;
                const int jm = j == 0 ? nz - 1 : j - 1;
                const double zz = (c[jp] - 2.0 * c[j] + c[jm]) / hz2;
                const double rr = cp * (up[j] - c[j]) + cm * (dn[j] - c[j]);
                o[j] = rr + zz;
            }
        } else {
            const double* m1 = c - nz;
            const double* m2 = c - 2 * nz;
            const double* m3 = c - 3 * nz;
            const double rn = g.r(n);
            for (int j = 0; j < nz; ++j) {
                const int jp = j + 1 == nz ? 0 : j + 1;
                const int jm = j == 0 ? nz - 1 : j - 1;
                const double zz = (c[jp] - 2.0 * c[j] + c[jm]) / hz2;
                const double d2 = (2.0 * c[j] - 5.0 * m1[j] + 4.0 * m2[j] - m3[j]) / hr2;
                const double d1 = (3.0 * c[j] - 4.0 * m1[j] + m2[j]) / (2.0 * g.h_r);
                o[j] = d2 + 3.0 * d1 / rn + zz;
            }
        }
    }
}

void advect_upwind1(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                    std::span<const double> f, std::span<double> out) {
    const int nz = g.n_z;
    const int n = g.n_r;
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= n; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * nz;
        const double* c = f.data() + base;
        const double* up = i < n ? c + nz : c;
        const double* dn = i > 0 ? c - nz : c + nz;
        for (int j = 0; j < nz; ++j) {
            const int jp = j + 1 == nz ? 0 : j + 1;
            const int jm = j == 0 ? nz - 1 : j - 1;
            const double a = u_r[base + j];
            const double b = u_z[base + j];
            const double dr = a > 0.0 ? (c[j] - dn[j]) / g.h_r : (up[j] - c[j]) / g.h_r;
            const double dz = b > 0.0 ? (c[j] - c[jm]) / g.h_z : (c[jp] - c[j]) / g.h_z;
            out[base + j] = -(a * dr + b * dz);
        }
    }
}

void advect_muscl(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                  std::span<const double> f, std::span<double> out) {
    const int nz = g.n_z;
    const int n = g.n_r;
    auto row_ptr = [&](int i) {
        if (i < 0) i = -i;
        if (i > n) i = n;
        return f.data() + static_cast<std::size_t>(i) * nz;
    };
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= n; ++i) {
        const double* rows[5] = {row_ptr(i - 2), row_ptr(i - 1), row_ptr(i), row_ptr(i + 1), row_ptr(i + 2)};
        const std::size_t base = static_cast<std::size_t>(i) * nz;
        const double* c = rows[2];
        for (int j = 0; j < nz; ++j) {
            const double a = u_r[base + j];
            const double b = u_z[base + j];
            const double dr = muscl_difference(a, [&](int o) { return rows[2 + o][j]; }, g.h_r);
            const double dz = muscl_difference(
                b,
                [&](int o) {
                    int jj = j + o;
                    if (jj < 0) jj += nz;
                    if (jj >= nz) jj -= nz;
                    return c[jj];
                },
                g.h_z);
            out[base + j] = -(a * dr + b * dz);
        }
    }
}

void advect_centered(const Grid& g, std::span<const double> u_r, std::span<const double> u_z,
                     std::span<const double> f, std::span<double> out) {
    const int nz = g.n_z;
    const int n = g.n_r;
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= n; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * nz;
        const double* c = f.data() + base;
        for (int j = 0; j < nz; ++j) {
            const int jp = j + 1 == nz ? 0 : j + 1;
            const int jm = j == 0 ? nz - 1 : j - 1;
            double dr;
            if (i < n) {
                const double* dn = i > 0 ? c - nz : c + nz;
                dr = (c[nz + j] - dn[j]) / (2.0 * g.h_r);
            } else {
                dr = (3.0 * c[j] - 4.0 * c[j - nz] + c[j - 2 * nz]) / (2.0 * g.h_r);
            }
            const double dz = (c[jp] - c[jm]) / (2.0 * g.h_z);
            out[base + j] = -(u_r[base + j] * dr + u_z[base + j] * dz);
        }
    }
}

double weighted_power_sum(const Grid& g, std::span<const double> f, double p) {
    const int nz = g.n_z;
    std::vector<double> rows(g.n_r + 1, 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= g.n_r; ++i) {
        const double* c = f.data() + static_cast<std::size_t>(i) * nz;
        double row = 0.0;
        for (int j = 0; j < nz; ++j) row += power_term(c[j], p);
        rows[i] = row;
    }
    double total = 0.0;
    for (int i = 0; i <= g.n_r; ++i) total += row_weight(g, i) * rows[i];
    return total;
}

double max_abs(std::span<const double> f) {
    double m = 0.0;
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, std::abs(f[k]));
    return m;
}

} // namespace parallel

} // namespace aximhd::kernels
