#pragma once

// Disturbance-minimizing re-preparation after a sharp measurement, and the
// brute-force (vartheta, phi) lattice search over rotated output states.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "qnd/noise_disturbance.hpp"
#include "qnd/qubit.hpp"

namespace qnd {

/// |mu m> -> |mu b> if b.m >= 0, |mu m> -> |-mu b> otherwise.
/// The tie b.m = 0 takes the first branch.
inline CorrectionMap optimal_correction(const BlochVector& m_axis, const Observable& b_obs) {
    const bool aligned = b_obs.axis().dot(m_axis) >= 0.0;
    const PureState plus = b_obs.eigenstate(aligned ? Outcome::plus : Outcome::minus);
    return {plus, plus.orthogonal()};
}

inline CorrectionMap optimal_correction(const Observable& m_obs, const Observable& b_obs) {
    return optimal_correction(m_obs.axis(), b_obs);
}

/// Closed inclusive 1-D lattice lo, lo + step, ..., <= hi (radians).
struct AngleRange {
    double lo = 0.0;
    double hi = std::numbers::pi;
    double step = std::numbers::pi / 8.0;

    std::vector<double> points() const {
        if (!(step > 0.0) || hi < lo) throw ValidationError("AngleRange: need step > 0 and hi >= lo");
        const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
        return v;
    }
};

struct CorrectionGrid {
    AngleRange vartheta;
    AngleRange phi;
};

struct SurfacePoint {
    double vartheta;
    double phi;
    double disturbance;
};

struct GridSearchResult {
    double best_vartheta = 0.0;
    double best_phi = 0.0;
    double min_disturbance = std::numeric_limits<double>::infinity();
    std::vector<SurfacePoint> surface;  // row-major: vartheta outer, phi inner
};

/// Evaluates D for every CorrectionMap::rotated(vartheta, phi) on the lattice,
/// with M = yz_plane(theta_m). Ties keep the first point in row-major order.
inline GridSearchResult correction_grid_search(double theta_m, const Observable& b_obs, const CorrectionGrid& grid) {
    const std::vector<double> vts = grid.vartheta.points();
    const std::vector<double> phs = grid.phi.points();
    const ProjectiveInstrument inst(Observable::yz_plane(theta_m));

    GridSearchResult res;
    res.surface.reserve(vts.size() * phs.size());
    for (double vt : vts) {
        for (double ph : phs) {
            const double d = disturbance(inst, CorrectionMap::rotated(vt, ph), b_obs);
            res.surface.push_back({vt, ph, d});
            if (d < res.min_disturbance) {
                res.min_disturbance = d;
                res.best_vartheta = vt;
                res.best_phi = ph;
            }
        }
    }
    return res;
}

}  // namespace qnd
