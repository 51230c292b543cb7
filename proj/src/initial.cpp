#include "aximhd/initial.hpp"

#include <cmath>

#include "aximhd/error.hpp"

namespace aximhd {

namespace {

double param(const InitialParams& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void check_keys(const InitialParams& p, std::initializer_list<const char*> allowed, const std::string& name) {
    for (const auto& [key, value] : p) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError("initial '" + name + "': unknown parameter '" + key + "'");
        if (!std::isfinite(value)) throw ConfigError("initial '" + name + "': parameter '" + key + "' not finite");
    }
}

} // namespace

ScalarField gaussian_ring(const Grid& g, double amplitude, double r0, double z0, double sigma) {
    if (!(sigma > 0.0)) throw ConfigError("gaussian-ring: sigma must be positive");
    if (r0 < 0.0) throw ConfigError("gaussian-ring: r0 must be >= 0");
    auto bump = [sigma](double x) { return std::exp(-(x * x) / (sigma * sigma)); };
    const double radial_at_wall = bump(g.r_max - r0) + bump(g.r_max + r0);
    if (std::abs(amplitude) * radial_at_wall > 1e-14 * std::abs(amplitude)) {
        throw ConfigError("gaussian-ring: support overlaps r_max (profile at wall " +
                          std::to_string(radial_at_wall) + ")");
    }
    ScalarField f(g, Parity::even, Boundary::dirichlet_zero);
    f.fill([&](double r, double z) {
        const double radial = bump(r - r0) + bump(r + r0);
        double axial = 0.0;
        for (int k = -1; k <= 1; ++k) axial += bump(z - z0 + k * g.z_len);
        return amplitude * radial * axial;
    });
    f.enforce_boundary();
    return f;
}

InitialFields make_initial(const Grid& g, const std::string& name, const InitialParams& params) {
    InitialFields out{ScalarField(g), ScalarField(g)};
    if (name == "zero") {
        check_keys(params, {}, name);
        return out;
    }
    if (name == "gaussian-ring") {
        check_keys(params, {"amplitude", "r0", "z0", "sigma"}, name);
        out.pi = gaussian_ring(g, param(params, "amplitude", 1.0), param(params, "r0", 1.0),
                               param(params, "z0", 0.5 * g.z_len), param(params, "sigma", 0.25));
        return out;
    }
    if (name == "opposing-pair") {
        check_keys(params, {"amplitude", "r0", "z0", "sigma", "separation"}, name);
        const double a = param(params, "amplitude", 1.0);
        const double r0 = param(params, "r0", 1.0);
        const double z0 = param(params, "z0", 0.5 * g.z_len);
        const double sigma = param(params, "sigma", 0.25);
        const double sep = param(params, "separation", 4.0 * sigma);
        out.omega = gaussian_ring(g, a, r0, z0 - 0.5 * sep, sigma) - gaussian_ring(g, a, r0, z0 + 0.5 * sep, sigma);
        return out;
    }
    throw ConfigError("unknown initial condition '" + name + "' (expected zero, gaussian-ring, opposing-pair)");
}

} // namespace aximhd
