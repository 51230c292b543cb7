#include "aximhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "aximhd/error.hpp"

namespace aximhd {

const char* const kCsvColumns[17] = {
    "time",           "dt",          "energy_kinetic", "energy_magnetic",   "grad_u_sq",
    "pi_linf",        "pi_l2",       "grad_pi_l2",     "omega_l2",          "grad_omega_l2",
    "omega_theta_l2", "cz_lhs",      "cz_rhs",         "curl_identity_lhs", "curl_identity_rhs",
    "ineq31_residual", "boundary_leak"};

ScalarField ur_over_r(const VelocityField& u) {
    const Grid& g = u.u_r.grid();
    const ScalarField dr = ddr(u.u_r);
    ScalarField out(g, Parity::even, Boundary::neumann_zero);
    for (int i = 0; i <= g.n_r; ++i)
        for (int j = 0; j < g.n_z; ++j) out(i, j) = i == 0 ? dr(0, j) : u.u_r(i, j) / g.r(i);
    return out;
}

namespace {

ScalarField times_r(const ScalarField& f, Parity parity) {
    const Grid& g = f.grid();
    ScalarField out(g, parity, f.boundary());
    for (int i = 0; i <= g.n_r; ++i)
        for (int j = 0; j < g.n_z; ++j) out(i, j) = g.r(i) * f(i, j);
    return out;
}

ScalarField square_sum(std::initializer_list<const ScalarField*> parts) {
    ScalarField out((*parts.begin())->grid());
    auto o = out.values();
    for (const ScalarField* p : parts) {
        const auto v = p->values();
        for (std::size_t k = 0; k < o.size(); ++k) o[k] += v[k] * v[k];
    }
    return out;
}

// Cubic Lagrange interpolation of an odd-in-r field along row j at radius rho.
double interp_odd(const ScalarField& f, double rho, int j) {
    const Grid& g = f.grid();
    auto at = [&](int i) { return i < 0 ? -f(-i, j) : f(i, j); };
    int i0 = static_cast<int>(std::floor(rho / g.h_r)) - 1;
    i0 = std::min(i0, g.n_r - 3);
    const double x = rho / g.h_r - i0;
    double sum = 0.0;
    for (int a = 0; a < 4; ++a) {
        double w = 1.0;
        for (int b = 0; b < 4; ++b)
            if (b != a) w *= (x - b) / static_cast<double>(a - b);
        sum += w * at(i0 + a);
    }
    return sum;
}

double max_row_abs(const ScalarField& f, int i) {
    double m = 0.0;
    for (double v : f.row(i)) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

double curl_gradient_sq_cartesian(const VelocityField& u) {
    const Grid& g = u.u_r.grid();
    // omega^theta from the velocity, odd in r.
    ScalarField w = ddz(u.u_r) - ddr(u.u_z);
    ScalarField wodd(g, Parity::odd, Boundary::neumann_zero);
    for (int i = 0; i <= g.n_r; ++i)
        for (int j = 0; j < g.n_z; ++j) wodd(i, j) = i == 0 ? 0.0 : w(i, j);

    // Cartesian components of omega^theta e_theta at (x1, x2, z_j).
    struct Vec3 {
        double x, y, z;
    };
    auto curl_at = [&](double x1, double x2, int j) -> Vec3 {
        const double rho = std::hypot(x1, x2);
        if (rho == 0.0) return {0.0, 0.0, 0.0};
        const double wt = interp_odd(wodd, rho, (j % g.n_z + g.n_z) % g.n_z);
        return {-wt * x2 / rho, wt * x1 / rho, 0.0};
    };

    ScalarField density(g);
    const double hx = g.h_r;
    for (int i = 0; i <= g.n_r; ++i) {
        const double r = g.r(i);
        for (int j = 0; j < g.n_z; ++j) {
            const Vec3 xp = curl_at(r + hx, 0.0, j), xm = curl_at(r - hx, 0.0, j);
            const Vec3 yp = curl_at(r, hx, j), ym = curl_at(r, -hx, j);
            const Vec3 zp = curl_at(r, 0.0, j + 1), zm = curl_at(r, 0.0, j - 1);
            double s = 0.0;
            auto add = [&](const Vec3& p, const Vec3& m, double h) {
                const double dx = (p.x - m.x) / (2.0 * h), dy = (p.y - m.y) / (2.0 * h), dz = (p.z - m.z) / (2.0 * h);
                s += dx * dx + dy * dy + dz * dz;
            };
            add(xp, xm, hx);
            add(yp, ym, hx);
            add(zp, zm, g.h_z);
            density(i, j) = s;
        }
    }
    return integrate(density);
}

double curl_gradient_sq_identity(const ScalarField& omega) {
    const ScalarField wt = times_r(omega, Parity::odd);
    const ScalarField wr = ddr(wt);
    const ScalarField wz = ddz(wt);
    return integrate(square_sum({&wr, &wz, &omega}));
}

DiagnosticsRecord record(const AxiState& s, double dt) {
    const Grid& g = s.grid();
    DiagnosticsRecord rec;
    rec.time = s.time;
    rec.dt = dt;

    const VelocityField& u = s.velocity;
    rec.energy_kinetic = 0.5 * (norm_l2_sq(u.u_r) + norm_l2_sq(u.u_z));
    rec.energy_magnetic = 0.5 * norm_l2_sq(times_r(s.pi, Parity::odd));

    const ScalarField urr = ddr(u.u_r), urz = ddz(u.u_r), uzr = ddr(u.u_z), uzz = ddz(u.u_z);
    const ScalarField over_r = ur_over_r(u);
    rec.grad_u_sq = norm_l2_sq(urr) + norm_l2_sq(over_r) + norm_l2_sq(urz) + norm_l2_sq(uzr) + norm_l2_sq(uzz);

    rec.pi_linf = norm_lp(s.pi, INFINITY);
    rec.pi_l2 = norm_lp(s.pi, 2.0);
    rec.grad_pi_l2 = std::sqrt(norm_l2_sq(ddr(s.pi)) + norm_l2_sq(ddz(s.pi)));

    const ScalarField om_z = ddz(s.omega_red);
    rec.omega_l2 = norm_lp(s.omega_red, 2.0);
    rec.grad_omega_l2 = std::sqrt(norm_l2_sq(ddr(s.omega_red)) + norm_l2_sq(om_z));
    rec.omega_theta_l2 = norm_lp(times_r(s.omega_red, Parity::odd), 2.0);

    rec.cz_lhs = norm_lp(over_r, INFINITY);
    rec.cz_rhs = std::sqrt(rec.omega_l2 * norm_lp(om_z, 2.0));

    rec.curl_identity_lhs = curl_gradient_sq_cartesian(u);
    rec.curl_identity_rhs = curl_gradient_sq_identity(s.omega_red);

    rec.boundary_leak = std::max(max_row_abs(s.pi, g.n_r - 1), max_row_abs(s.omega_red, g.n_r - 1));
    return rec;
}

// ---------------------------------------------------------------- residuals

namespace {

template <class Rate, class Dissipation>
std::vector<double> interval_series(std::span<const DiagnosticsRecord> recs, Rate rate, Dissipation diss) {
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
        const DiagnosticsRecord& a = recs[k];
        const DiagnosticsRecord& b = recs[k + 1];
        const double span = b.time - a.time;
        if (!(span > 0.0)) continue;
        out.push_back((rate(b) - rate(a)) / span + 0.5 * (diss(a) + diss(b)));
    }
    return out;
}

double ineq2_bound(const DiagnosticsRecord& r) {
    return std::pow(r.pi_linf, 2.0 / 3.0) * std::pow(r.pi_l2, 4.0 / 3.0) * r.grad_pi_l2 * r.grad_pi_l2;
}

double max_positive(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

} // namespace

std::vector<double> energy_residuals(std::span<const DiagnosticsRecord> recs) {
    return interval_series(
        recs, [](const DiagnosticsRecord& r) { return r.energy_kinetic + r.energy_magnetic; },
        [](const DiagnosticsRecord& r) { return r.grad_u_sq; });
}

std::vector<double> pi_l2_residuals(std::span<const DiagnosticsRecord> recs) {
    return interval_series(
        recs, [](const DiagnosticsRecord& r) { return r.pi_l2 * r.pi_l2; },
        [](const DiagnosticsRecord& r) { return r.grad_pi_l2 * r.grad_pi_l2; });
}

std::vector<double> ineq31_residuals(std::span<const DiagnosticsRecord> recs) {
    return interval_series(
        recs, [](const DiagnosticsRecord& r) { return r.omega_l2 * r.omega_l2; },
        [](const DiagnosticsRecord& r) {
            return r.grad_omega_l2 * r.grad_omega_l2 - r.pi_l2 * r.pi_l2 * r.pi_linf * r.pi_linf;
        });
}

std::vector<double> ineq2_residuals(std::span<const DiagnosticsRecord> recs) {
    return interval_series(
        recs, [](const DiagnosticsRecord& r) { return r.omega_l2 * r.omega_l2; },
        [](const DiagnosticsRecord& r) { return r.grad_omega_l2 * r.grad_omega_l2 - ineq2_bound(r); });
}

double last_interval_residual(std::span<const DiagnosticsRecord> recs, Mode mode) {
    if (recs.size() < 2) return 0.0;
    const auto tail = recs.subspan(recs.size() - 2);
    const auto v = mode == Mode::ideal ? ineq31_residuals(tail) : ineq2_residuals(tail);
    return v.empty() ? 0.0 : v.front();
}

// ------------------------------------------------------------------- checks

const char* to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "SKIPPED";
    }
    return "?";
}

namespace {
CheckStatus verdict(bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; }

void require_records(std::span<const DiagnosticsRecord> recs, std::size_t n, const char* who) {
    if (recs.size() < n) {
        throw std::invalid_argument(std::string(who) + ": needs at least " + std::to_string(n) + " records");
    }
}
} // namespace

CheckReport check_energy_law(std::span<const DiagnosticsRecord> recs, Mode mode, double tol) {
    require_records(recs, 3, "check_energy_law");
    const auto res = energy_residuals(recs);
    CheckReport rep{"energy-law", CheckStatus::pass, 0.0, tol, ""};
    if (mode == Mode::ideal) {
        for (double x : res) rep.value = std::max(rep.value, std::abs(x));
        rep.detail = "max |dE/dt + ||grad u||^2| (upwind Pi transport makes the defect O(h))";
    } else {
        rep.value = max_positive(res);
        rep.detail = "max positive part of dE/dt + ||grad u||^2 (resistive: inequality form)";
    }
    rep.status = verdict(rep.value <= tol);
    return rep;
}

CheckReport check_max_principle(std::span<const DiagnosticsRecord> recs) {
    CheckReport rep{"max-principle", CheckStatus::pass, 0.0, 0.0, ""};
    if (recs.empty()) return rep;
    const double bound = recs.front().pi_linf * (1.0 + 1e-10) + 1e-12;
    double worst = 0.0;
    for (const auto& r : recs) worst = std::max(worst, r.pi_linf);
    rep.value = worst;
    rep.tolerance = bound;
    rep.status = verdict(worst <= bound);
    rep.detail = "sup_t ||Pi(t)||_inf vs ||Pi(0)||_inf (1 + 1e-10) + 1e-12";
    return rep;
}

CheckReport check_pi_l2_monotone(std::span<const DiagnosticsRecord> recs, Mode mode, double tol) {
    CheckReport rep{"pi-l2", CheckStatus::skipped, 0.0, tol, ""};
    if (mode == Mode::ideal) {
        if (!recs.empty() && recs.front().pi_l2 > 0.0) {
            rep.value = (recs.back().pi_l2 - recs.front().pi_l2) / recs.front().pi_l2;
        }
        std::ostringstream os;
        os << "ideal run: resistive-only check; relative ||Pi||_2 drift " << std::setprecision(3) << rep.value;
        rep.detail = os.str();
        return rep;
    }
    bool monotone = true;
    for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
        if (recs[k + 1].pi_l2 > recs[k].pi_l2 * (1.0 + 1e-10)) monotone = false;
    }
    rep.value = max_positive(pi_l2_residuals(recs));
    rep.status = verdict(monotone && rep.value <= tol);
    rep.detail = monotone ? "||Pi||_2 nonincreasing; value = max positive residual"
                          : "||Pi||_2 increased over an interval";
    return rep;
}

CheckReport check_cz_ratio(std::span<const DiagnosticsRecord> recs) {
    CheckReport rep{"cz-ratio", CheckStatus::pass, 0.0, 0.0, "sup_t ||u^r/r||_inf / (||Omega||^1/2 ||d_z Omega||^1/2)"};
    for (const auto& r : recs) {
        if (r.cz_rhs > 0.0) rep.value = std::max(rep.value, r.cz_lhs / r.cz_rhs);
    }
    return rep;
}

CheckReport check_ineq31(std::span<const DiagnosticsRecord> recs, double tol) {
    CheckReport rep{"ineq31", CheckStatus::pass, max_positive(ineq31_residuals(recs)), tol,
                    "max positive part of d||Omega||^2/dt + ||grad Omega||^2 - ||Pi||_2^2 ||Pi||_inf^2"};
    rep.status = verdict(rep.value <= tol);
    return rep;
}

CheckReport check_ineq2(std::span<const DiagnosticsRecord> recs, double tol) {
    CheckReport rep{"ineq2", CheckStatus::pass, max_positive(ineq2_residuals(recs)), tol,
                    "max positive part of d||Omega||^2/dt + ||grad Omega||^2 - ||Pi||_inf^2/3 ||Pi||_2^4/3 ||grad Pi||^2"};
    rep.status = verdict(rep.value <= tol);
    return rep;
}

CheckReport check_curl_identity(std::span<const DiagnosticsRecord> recs, double rel_tol) {
    CheckReport rep{"curl-identity", CheckStatus::pass, 0.0, rel_tol,
                    "max |lhs - rhs| / rhs, lhs from Cartesian curl gradient, rhs = |grad omega|^2 + Omega^2"};
    for (const auto& r : recs) {
        if (r.curl_identity_rhs > 0.0) {
            rep.value = std::max(rep.value, std::abs(r.curl_identity_lhs - r.curl_identity_rhs) / r.curl_identity_rhs);
        }
    }
    rep.status = verdict(rep.value <= rel_tol);
    return rep;
}

CheckReport compare_shrink(const std::string& name, double coarse, double fine, double factor) {
    CheckReport rep{name, CheckStatus::pass, 0.0, factor, ""};
    std::ostringstream os;
    os << std::setprecision(4) << "coarse " << coarse << ", fine " << fine;
    if (coarse <= 0.0 && fine <= 0.0) {
        rep.value = INFINITY;
        os << "; no violation at either resolution";
        rep.status = CheckStatus::pass;
    } else {
        rep.value = fine > 0.0 ? coarse / fine : INFINITY;
        os << "; shrink " << rep.value << " (observed order " << std::log2(rep.value) << ")";
        rep.status = verdict(rep.value >= factor);
    }
    rep.detail = os.str();
    return rep;
}

CheckReport compare_stable(const std::string& name, double coarse, double fine, double rel_tol) {
    CheckReport rep{name, CheckStatus::pass, 0.0, rel_tol, ""};
    const double scale = std::max(std::abs(coarse), std::abs(fine));
    rep.value = scale > 0.0 ? std::abs(coarse - fine) / scale : 0.0;
    std::ostringstream os;
    os << std::setprecision(4) << "coarse " << coarse << ", fine " << fine << ", relative gap " << rep.value;
    rep.detail = os.str();
    rep.status = verdict(rep.value <= rel_tol);
    return rep;
}

// ---------------------------------------------------------------------- CSV

namespace {
double* field_ptr(DiagnosticsRecord& r, int c) {
    double* fields[17] = {&r.time,        &r.dt,          &r.energy_kinetic,  &r.energy_magnetic, &r.grad_u_sq,
                          &r.pi_linf,     &r.pi_l2,       &r.grad_pi_l2,      &r.omega_l2,        &r.grad_omega_l2,
                          &r.omega_theta_l2, &r.cz_lhs,   &r.cz_rhs,          &r.curl_identity_lhs,
                          &r.curl_identity_rhs, &r.ineq31_residual, &r.boundary_leak};
    return fields[c];
}
} // namespace

void write_csv(std::ostream& os, std::span<const DiagnosticsRecord> recs) {
    for (int c = 0; c < 17; ++c) os << (c ? "," : "") << kCsvColumns[c];
    os << '\n' << std::setprecision(17);
    for (DiagnosticsRecord r : recs) {
        for (int c = 0; c < 17; ++c) os << (c ? "," : "") << *field_ptr(r, c);
        os << '\n';
    }
}

std::vector<DiagnosticsRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("diagnostics csv: empty");
    std::vector<DiagnosticsRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        DiagnosticsRecord r;
        std::string tok;
        for (int c = 0; c < 17; ++c) {
            if (!std::getline(ls, tok, ',')) throw ConfigError("diagnostics csv: short row");
            *field_ptr(r, c) = std::stod(tok);
        }
        out.push_back(r);
    }
    return out;
}

} // namespace aximhd
