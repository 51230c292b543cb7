#include "aximhd/apweight.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace aximhd {

const char* to_string(ApClass c) {
    switch (c) {
    case ApClass::bounded: return "bounded";
    case ApClass::unbounded: return "unbounded";
    case ApClass::inconclusive: return "inconclusive";
    }
    return "?";
}

bool power_diverges(double exponent, double t) {
    if (t < 1.0) return exponent <= -4.0;
    if (t == 1.0) return exponent <= -4.5;
    return false;
}

bool inside_window(double alpha, double p) { return alpha > -4.0 && alpha < 4.0 * (p - 1.0); }

bool on_window_edge(double alpha, double p) {
    const double eps = 1e-12;
    return std::abs(alpha + 4.0) <= eps || std::abs(alpha - 4.0 * (p - 1.0)) <= eps;
}

namespace {

constexpr double kBallVolume5 = 8.0 * std::numbers::pi * std::numbers::pi / 15.0;

struct Mean {
    double mean = 0.0;
    double var = 0.0; ///< variance of the mean
};

// Average of r^e over the ball by hit-or-miss sampling in (rho, theta, z)
// with rho drawn from density ~ rho^(3+e) on [0, rho_max]. Each hit carries the
// same weight, so the variance stays finite for every integrable exponent.
Mean radial_importance_mean(double e, double t, double R, long n, std::mt19937_64& rng) {
    const double c = t * R;
    const double rho_max = c + R;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    long hits = 0;
    for (long k = 0; k < n; ++k) {
        const double rho = rho_max * std::pow(1.0 - unif(rng), 1.0 / (4.0 + e));
        double g[4];
        double norm2 = 0.0;
        for (double& x : g) {
            x = gauss(rng);
            norm2 += x * x;
        }
        const double cos_phi = g[0] / std::sqrt(norm2);
        const double s = R * (2.0 * unif(rng) - 1.0);
        if (rho * rho - 2.0 * rho * c * cos_phi + c * c + s * s <= R * R) ++hits;
    }
    // integral of rho^e over the sampling box (S^3 area 2 pi^2, z-length 2R)
    const double box = 2.0 * std::numbers::pi * std::numbers::pi * 2.0 * R * std::pow(rho_max, 4.0 + e) / (4.0 + e);
    const double scale = box / (kBallVolume5 * std::pow(R, 5.0));
    const double frac = static_cast<double>(hits) / n;
    return {scale * frac, scale * scale * frac * (1.0 - frac) / n};
}

} // namespace

ApEstimate ap_constant(const ApProbe& probe, double t) {
    if (!(probe.p > 1.0)) throw std::invalid_argument("ap_constant: p must exceed 1");
    if (!(t >= 0.0)) throw std::invalid_argument("ap_constant: t must be >= 0");
    if (probe.mc_samples < 1) throw std::invalid_argument("ap_constant: mc_samples must be positive");
    if (!(probe.radius > 0.0)) throw std::invalid_argument("ap_constant: radius must be positive");

    ApEstimate est;
    est.t = t;
    const double dual = -probe.alpha / (probe.p - 1.0); // exponent of w^(-q/p)
    if (power_diverges(probe.alpha, t) || power_diverges(dual, t)) {
        est.divergent = true;
        est.estimate = INFINITY;
        est.stderr_ = 0.0;
        return est;
    }
    if (probe.alpha == 0.0) {
        est.estimate = 1.0;
        return est;
    }

    std::seed_seq seq{static_cast<std::uint32_t>(probe.rng_seed), static_cast<std::uint32_t>(probe.rng_seed >> 32),
                      static_cast<std::uint32_t>(std::llround(t * 1e6)),
                      static_cast<std::uint32_t>(std::llround((probe.alpha + 1000.0) * 1e6))};
    std::mt19937_64 rng(seq);
    const long n = probe.mc_samples;
    const double R = probe.radius;
    const double pm1 = probe.p - 1.0;

    if (t <= 2.0) {
        const Mean m1 = radial_importance_mean(probe.alpha, t, R, n, rng);
        const Mean m2 = radial_importance_mean(dual, t, R, n, rng);
        est.estimate = m1.mean * std::pow(m2.mean, pm1);
        const double rel2 = m1.var / (m1.mean * m1.mean) + pm1 * pm1 * m2.var / (m2.mean * m2.mean);
        est.stderr_ = est.estimate * std::sqrt(rel2);
        return est;
    }

    // Away from the axis r stays in [(t-1)R, (t+1)R]: uniform ball sampling,
    // both averages from the same points (covariance kept in the error).
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
    for (long k = 0; k < n; ++k) {
        double g[5];
        double norm2 = 0.0;
        for (double& x : g) {
            x = gauss(rng);
            norm2 += x * x;
        }
        const double rad = R * std::pow(unif(rng), 0.2) / std::sqrt(norm2);
        const double y1 = t * R + rad * g[0];
        const double r = std::sqrt(y1 * y1 + rad * rad * (g[1] * g[1] + g[2] * g[2] + g[3] * g[3]));
        const double a = std::pow(r, probe.alpha);
        const double b = std::pow(r, dual);
        s1 += a;
        s2 += b;
        s11 += a * a;
        s22 += b * b;
        s12 += a * b;
    }
    const double m1 = s1 / n, m2 = s2 / n;
    const double v1 = (s11 / n - m1 * m1) / n;
    const double v2 = (s22 / n - m2 * m2) / n;
    const double c12 = (s12 / n - m1 * m2) / n;
    est.estimate = m1 * std::pow(m2, pm1);
    const double rel2 = v1 / (m1 * m1) + pm1 * pm1 * v2 / (m2 * m2) + 2.0 * pm1 * c12 / (m1 * m2);
    est.stderr_ = est.estimate * std::sqrt(std::max(rel2, 0.0));
    return est;
}

ApReport classify(const ApProbe& probe) {
    ApReport rep;
    rep.alpha = probe.alpha;
    rep.p = probe.p;
    for (double t : probe.t_ratios) rep.cells.push_back(ap_constant(probe, t));

    bool any_divergent = false;
    for (const auto& c : rep.cells) {
        any_divergent = any_divergent || c.divergent;
        rep.sup_estimate = std::max(rep.sup_estimate, c.estimate);
    }

    if (on_window_edge(probe.alpha, probe.p)) {
        rep.classification = ApClass::inconclusive;
        rep.trigger = "window endpoint";
        return rep;
    }
    if (any_divergent) {
        rep.classification = ApClass::unbounded;
        rep.trigger = "integrability threshold";
        return rep;
    }

    std::vector<ApEstimate> sorted = rep.cells;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    // Near-axis probes: consecutive growth towards the axis.
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
        if (sorted[k + 1].t <= 2.0 && sorted[k].estimate > 10.0 * sorted[k + 1].estimate) {
            rep.classification = ApClass::unbounded;
            rep.trigger = "empirical growth > 10x towards the axis";
            return rep;
        }
    }
    // Far-from-axis probes must level off.
    std::vector<ApEstimate> far;
    for (const auto& c : sorted)
        if (c.t > 2.0) far.push_back(c);
    if (far.size() >= 2) {
        const ApEstimate& a = far[far.size() - 2];
        const ApEstimate& b = far.back();
        const double slack = 0.1 * a.estimate + 3.0 * std::hypot(a.stderr_, b.stderr_);
        if (b.estimate > a.estimate + slack) {
            rep.classification = ApClass::inconclusive;
            rep.trigger = "no plateau for t > 2";
            return rep;
        }
    }
    rep.classification = ApClass::bounded;
    rep.trigger = far.size() >= 2 ? "finite, plateau for t > 2" : "finite";
    return rep;
}

std::vector<ApReport> ap_sweep(double p, std::span<const double> alphas, const std::vector<double>& t_grid,
                               long samples, std::uint64_t seed) {
    std::vector<ApReport> out(alphas.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        ApProbe probe;
        probe.alpha = alphas[k];
        probe.p = p;
        probe.t_ratios = t_grid;
        probe.mc_samples = samples;
        probe.rng_seed = seed;
        out[k] = classify(probe);
    }
    return out;
}

void write_ap_csv(std::ostream& os, std::span<const ApReport> reports) {
    os << "alpha,p,t,estimate,stderr,classification\n" << std::setprecision(17);
    for (const auto& rep : reports) {
        for (const auto& c : rep.cells) {
            os << rep.alpha << ',' << rep.p << ',' << c.t << ',';
            if (c.divergent)
                os << "inf";
            else
                os << c.estimate;
            os << ',' << c.stderr_ << ',' << to_string(rep.classification) << '\n';
        }
    }
}

} // namespace aximhd
