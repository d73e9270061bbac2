#pragma once

#include <cmath>

namespace m2m {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dist2(Vec2 a, Vec2 b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// |v|^-alpha evaluated from the squared distance, with fast paths for the
// exponents used throughout the experiments.
inline double pathloss_from_d2(double d2, double alpha) noexcept {
    if (alpha == 4.0) return 1.0 / (d2 * d2);
    if (alpha == 3.0) return 1.0 / (d2 * std::sqrt(d2));
    return std::pow(d2, -0.5 * alpha);
}

}  // namespace m2m
