#pragma once

// Per-record norms of a run and the checks built on them. All norms use the
// 3D measure 2 pi r dr dz. Checks are pure functions of a record sequence.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aximhd/evolve.hpp"

namespace aximhd {

struct DiagnosticsRecord {
    double time = 0.0;
    double dt = 0.0;
    double energy_kinetic = 0.0;  ///< 1/2 ||u||^2
    double energy_magnetic = 0.0; ///< 1/2 ||B^theta||^2 = 1/2 ||r Pi||^2
    double grad_u_sq = 0.0;       ///< ||grad u||^2
    double pi_linf = 0.0;
    double pi_l2 = 0.0;
    double grad_pi_l2 = 0.0;
    double omega_l2 = 0.0;
    double grad_omega_l2 = 0.0;
    double omega_theta_l2 = 0.0;  ///< ||r Omega||
    double cz_lhs = 0.0;          ///< ||u^r / r||_inf
    double cz_rhs = 0.0;          ///< ||Omega||^(1/2) ||d_z Omega||^(1/2)
    double curl_identity_lhs = 0.0;
    double curl_identity_rhs = 0.0;
    double ineq31_residual = 0.0; ///< positive part over the interval ending here (0 for the first record)
    double boundary_leak = 0.0;   ///< max |Pi|, |Omega| on the row next to the wall

    bool operator==(const DiagnosticsRecord&) const = default;
};

DiagnosticsRecord record(const AxiState& state, double dt);

/// u^r / r with the odd-parity limit d_r u^r on the axis.
ScalarField ur_over_r(const VelocityField& u);

/// integral |grad(curl u)|^2 by finite differences of the Cartesian components
/// of omega^theta e_theta, with omega^theta = d_z u^r - d_r u^z.
double curl_gradient_sq_cartesian(const VelocityField& u);
/// integral (|grad omega^theta|^2 + Omega^2) with omega^theta = r Omega.
double curl_gradient_sq_identity(const ScalarField& omega);

// Interval residuals between consecutive records (size = records - 1).
// Time derivatives are forward differences, dissipation and bound terms are
// trapezoid averages of the two endpoints.

/// dE/dt + ||grad u||^2 (signed).
std::vector<double> energy_residuals(std::span<const DiagnosticsRecord> recs);
/// d||Pi||^2/dt + ||grad Pi||^2 (signed).
std::vector<double> pi_l2_residuals(std::span<const DiagnosticsRecord> recs);
/// d||Omega||^2/dt + ||grad Omega||^2 - ||Pi||_2^2 ||Pi||_inf^2 (signed).
std::vector<double> ineq31_residuals(std::span<const DiagnosticsRecord> recs);
/// d||Omega||^2/dt + ||grad Omega||^2 - ||Pi||_inf^(2/3) ||Pi||_2^(4/3) ||grad Pi||^2 (signed).
std::vector<double> ineq2_residuals(std::span<const DiagnosticsRecord> recs);

enum class CheckStatus { pass, fail, skipped };
const char* to_string(CheckStatus s);

struct CheckReport {
    std::string name;
    CheckStatus status = CheckStatus::skipped;
    double value = 0.0;     ///< the measured quantity
    double tolerance = 0.0; ///< threshold it was compared against
    std::string detail;
};

/// Ideal: max |residual| <= tol. Resistive: max positive part <= tol.
CheckReport check_energy_law(std::span<const DiagnosticsRecord> recs, Mode mode, double tol);
/// pi_linf(t) <= pi_linf(0) (1 + 1e-10) + 1e-12 at every record.
CheckReport check_max_principle(std::span<const DiagnosticsRecord> recs);
/// Resistive only: ||Pi||_2 nonincreasing (1e-10 relative) and positive residual <= tol.
CheckReport check_pi_l2_monotone(std::span<const DiagnosticsRecord> recs, Mode mode, double tol);
/// sup over records of cz_lhs / cz_rhs (0/0 -> 0).
CheckReport check_cz_ratio(std::span<const DiagnosticsRecord> recs);
/// Max positive part of the interval residual.
CheckReport check_ineq31(std::span<const DiagnosticsRecord> recs, double tol);
CheckReport check_ineq2(std::span<const DiagnosticsRecord> recs, double tol);
/// Max relative gap |lhs - rhs| / rhs over records with rhs > 0.
CheckReport check_curl_identity(std::span<const DiagnosticsRecord> recs, double rel_tol);

/// Positive-part violation shrink under refinement: PASS when fine <= coarse / factor,
/// or when neither resolution shows a violation.
CheckReport compare_shrink(const std::string& name, double coarse, double fine, double factor);
/// PASS when |a - b| / max(a, b) <= rel_tol.
CheckReport compare_stable(const std::string& name, double coarse, double fine, double rel_tol);

/// Signed interval residual of the Omega inequality matching the run mode.
double last_interval_residual(std::span<const DiagnosticsRecord> recs, Mode mode);

/// Header + one row per record, 17 significant digits.
void write_csv(std::ostream& os, std::span<const DiagnosticsRecord> recs);
std::vector<DiagnosticsRecord> read_csv(std::istream& is);
extern const char* const kCsvColumns[17];

} // namespace aximhd
