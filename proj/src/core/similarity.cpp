#include "memguard/core/similarity.hpp"

#include <cmath>

#include "memguard/errors.hpp"

namespace memguard {

double l2_norm(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

std::vector<double> l2_normalize(std::vector<double> v) {
    double norm = l2_norm(v);
    if (norm < 1e-12) {
        throw Error(ErrorCode::non_unit_embedding, "cannot normalize a zero vector");
    }
    for (double& x : v) x /= norm;
    return v;
}

bool is_unit_vector(std::span<const double> v, double tolerance) {
    if (v.empty()) return false;
    return std::abs(l2_norm(v) - 1.0) <= tolerance;
}

double cosine_sim(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "cosine_sim: " + std::to_string(u.size()) + " vs " + std::to_string(v.size()));
    }
    if (!is_unit_vector(u) || !is_unit_vector(v)) {
        throw Error(ErrorCode::non_unit_embedding, "cosine_sim requires unit-length inputs");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
    return dot;
}

}  // namespace memguard
