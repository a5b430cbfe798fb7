#pragma once

#include <algorithm>
#include <cmath>

#include "qnd/entropy.hpp"
#include "qnd/noise_disturbance.hpp"
#include "qnd/qubit.hpp"

namespace qnd {

/// c_AB = -log2 max |<a|b>|^2 over eigenstate pairs; |<a|b>|^2 = (1 + a.b) / 2.
inline double incompatibility_constant(const Observable& a, const Observable& b) {
    double best = 0.0;
    for (Outcome oa : kOutcomes) {
        for (Outcome ob : kOutcomes) {
            const double overlap = 0.5 * (1.0 + a.axis().dot(b.axis()) * sign(oa) * sign(ob));
            best = std::max(best, overlap);
        }
    }
    return std::max(0.0, -std::log2(std::min(best, 1.0)));
}

/// g[N]^2 + g[D]^2. Values <= 1 are allowed; equality is the optimal boundary.
inline double tight_value(double noise, double disturbance) {
    const double gn = inverse_binary_entropy(noise);
    const double gd = inverse_binary_entropy(disturbance);
    return gn * gn + gd * gd;
}

struct BoundReport {
    double c_ab = 0.0;
    double sum_nd = 0.0;
    double tight_value = 0.0;
    bool satisfies_general = false;
    bool satisfies_tight = false;
    /// 1 - tight_value: zero on the boundary, negative inside the prohibited region.
    double saturation_gap = 0.0;
    /// sum_nd - c_ab.
    double general_slack = 0.0;
};

inline constexpr double kAnalyticTolerance = 1e-9;

/// Evaluates N + D >= c_AB and g[N]^2 + g[D]^2 <= 1 for one point.
/// Use kAnalyticTolerance for exact inputs and a larger slack for sampled ones.
/// The tight relation is the sigma_z / sigma_y one; it is evaluated regardless
/// of A and B, which only enter through c_AB.
inline BoundReport check_bounds(const NDPoint& point, const Observable& a, const Observable& b,
                                double tol = kAnalyticTolerance) {
    BoundReport r;
    r.c_ab = incompatibility_constant(a, b);
    r.sum_nd = point.noise + point.disturbance;
    r.general_slack = r.sum_nd - r.c_ab;
    r.tight_value = tight_value(point.noise, point.disturbance);
    r.saturation_gap = 1.0 - r.tight_value;
    r.satisfies_general = r.sum_nd >= r.c_ab - tol;
    r.satisfies_tight = r.tight_value <= 1.0 + tol;
    return r;
}

}  // namespace qnd
