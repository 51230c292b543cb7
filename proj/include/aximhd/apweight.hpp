#pragma once

// Monte-Carlo probe of the Muckenhoupt A_p condition for w(y) = r^alpha on R^5,
// r = |(y1, y2, y3, y4)|. For a ball B of radius R whose centre sits at radial
// coordinate t R,
//
//     A(t) = (avg_B w) (avg_B w^(-1/(p-1)))^(p-1),
//
// which is scale and z-translation invariant, so the sup over balls reduces to
// a sup over t. A(t) >= 1 for any positive weight (Hoelder).

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace aximhd {

struct ApProbe {
    double alpha = 0.0;
    double p = 2.0;
    std::vector<double> t_ratios = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
    long mc_samples = 100000;
    std::uint64_t rng_seed = 12345;
    double radius = 1.0;
    double z_center = 0.0;

    double q() const { return p / (p - 1.0); }
};

struct ApEstimate {
    double t = 0.0;
    double estimate = 0.0;
    double stderr_ = 0.0;
    bool divergent = false; ///< analytically infinite: the ball meets the axis and a power is not integrable
};

enum class ApClass { bounded, unbounded, inconclusive };
const char* to_string(ApClass c);

struct ApReport {
    double alpha = 0.0;
    double p = 2.0;
    std::vector<ApEstimate> cells;
    double sup_estimate = 0.0;
    ApClass classification = ApClass::inconclusive;
    std::string trigger; ///< which rule decided the classification
};

/// True when r^exponent is not integrable over a 5D ball at ratio t.
/// t < 1: the ball contains axis points (needs exponent > -4);
/// t = 1: it touches the axis tangentially (needs exponent > -9/2).
bool power_diverges(double exponent, double t);

/// Throws std::invalid_argument for p <= 1, t < 0 or samples < 1.
ApEstimate ap_constant(const ApProbe& probe, double t);

/// One report per alpha; cells follow probe.t_ratios.
std::vector<ApReport> ap_sweep(double p, std::span<const double> alphas, const std::vector<double>& t_grid,
                               long samples, std::uint64_t seed);
ApReport classify(const ApProbe& probe);

/// Open window (-4, 4(p - 1)) of exponents giving an A_p weight.
bool inside_window(double alpha, double p);
bool on_window_edge(double alpha, double p);

/// Columns alpha,p,t,estimate,stderr,classification.
void write_ap_csv(std::ostream& os, std::span<const ApReport> reports);

} // namespace aximhd
