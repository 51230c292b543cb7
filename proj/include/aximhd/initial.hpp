#pragma once

#include <map>
#include <string>
#include <utility>

#include "aximhd/grid.hpp"

namespace aximhd {

/// Named numeric parameters of a catalog entry: amplitude, r0, z0, sigma, separation.
using InitialParams = std::map<std::string, double>;

struct InitialFields {
    ScalarField pi;
    ScalarField omega;
};

/// A * [g(r - r0) + g(r + r0)] * sum_k g(z - z0 + k z_len),  g(x) = exp(-x^2 / sigma^2).
/// Even in r, periodic in z, wall row set to zero. Throws ConfigError when the
/// profile at r_max exceeds 1e-14 |A|.
ScalarField gaussian_ring(const Grid& g, double amplitude, double r0, double z0, double sigma);

/// Catalog: "zero", "gaussian-ring" (Pi only), "opposing-pair" (Omega only,
/// two rings of opposite sign at z0 -+ separation/2).
InitialFields make_initial(const Grid& g, const std::string& name, const InitialParams& params);

} // namespace aximhd
