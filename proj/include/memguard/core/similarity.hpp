#pragma once

#include <span>
#include <vector>

namespace memguard {

inline constexpr double kUnitNormTolerance = 1e-6;

double l2_norm(std::span<const double> v);

/// Divides by the L2 norm. Throws non-unit-embedding if the norm is
/// numerically zero.
std::vector<double> l2_normalize(std::vector<double> v);

bool is_unit_vector(std::span<const double> v, double tolerance = kUnitNormTolerance);

/// Inner product of two unit vectors. Checks dimensions and that both
/// inputs are unit-length within 1e-6.
double cosine_sim(std::span<const double> u, std::span<const double> v);

}  // namespace memguard
