#pragma once

// The optimal sigma_z / sigma_y noise-disturbance boundary
//   C* = {(h(cos t), h(sin t)) : t in [0, pi/2]},
// its Lagrange-multiplier characterization, and a brute-force oracle over
// random qubit ensembles that checks no ensemble point falls below it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "qnd/bounds.hpp"
#include "qnd/entropy.hpp"
#include "qnd/qubit.hpp"
#include "qnd/rng.hpp"

namespace qnd {

namespace detail {

// atanh(x)/x, even in x, with the x -> 0 limit 1.
inline double atanh_ratio(double x) {
    const double a = std::abs(x);
    if (a < 1e-8) return 1.0 + a * a / 3.0;
    return std::atanh(a) / a;
}

}  // namespace detail

/// f(t) = (h'(sin t)/sin t) / (h'(cos t)/cos t), defined on the open interval (0, pi/2).
inline double variational_f(double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi / 2.0)) {
        throw DomainError("variational_f: theta must lie in (0, pi/2), got " + std::to_string(theta));
    }
    // h'(x)/x = -atanh(x)/(x ln 2); the ln 2 factors cancel.
    return detail::atanh_ratio(std::sin(theta)) / detail::atanh_ratio(std::cos(theta));
}

/// f extended to any angle that is not a multiple of pi/2, using its
/// symmetry about t = 0 and t = pi/2.
inline double variational_f_extended(double theta) {
    const double s = std::abs(std::sin(theta));
    const double c = std::abs(std::cos(theta));
    if (s >= 1.0 || c >= 1.0) {
        throw DomainError("variational_f_extended: theta on a singular point, got " + std::to_string(theta));
    }
    return detail::atanh_ratio(s) / detail::atanh_ratio(c);
}

struct BoundaryPoint {
    double theta;  // radians in [0, pi/2]
    double noise;
    double disturbance;
};

/// `samples` equally spaced points of C*, endpoints included.
inline std::vector<BoundaryPoint> boundary_curve(std::size_t samples) {
    if (samples < 2) throw ValidationError("boundary_curve: need at least 2 samples");
    std::vector<BoundaryPoint> pts(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = (std::numbers::pi / 2.0) * static_cast<double>(k) / static_cast<double>(samples - 1);
        pts[k] = {t, binary_entropy(std::cos(t)), binary_entropy(std::sin(t))};
    }
    return pts;
}

/// Smallest noise compatible with disturbance d: the N of the C* point at height d.
inline double boundary_noise_at(double d) {
    const double gd = inverse_binary_entropy(d);
    return binary_entropy(std::sqrt(std::max(0.0, 1.0 - gd * gd)));
}

/// Stationary point of the constrained variational problem at a given
/// disturbance: every retained ensemble angle theta_m solves f(theta_m) = kappa
/// and h(sin theta_m) + kappa h(cos theta_m) = -lambda.
/// Bloch vectors are parametrized as (0, cos theta_m, sin theta_m).
struct BoundarySolverState {
    double theta = 0.0;  // C* parameter
    double kappa = 0.0;
    double lambda = 0.0;
    std::vector<double> theta_m;
    double j_min = 0.0;  // = h(cos theta)
};

inline BoundarySolverState solve_boundary_point(double target_disturbance) {
    if (!(target_disturbance > 0.0 && target_disturbance < 1.0)) {
        throw DomainError("solve_boundary_point: disturbance must lie in (0, 1)");
    }
    BoundarySolverState st;
    st.theta = std::asin(inverse_binary_entropy(target_disturbance));
    const double half_pi = std::numbers::pi / 2.0;
    st.kappa = variational_f(half_pi - st.theta);
    st.lambda = -binary_entropy(std::cos(st.theta)) - st.kappa * binary_entropy(std::sin(st.theta));
    st.theta_m = {half_pi - st.theta, -(half_pi - st.theta), half_pi + st.theta, -half_pi - st.theta};
    st.j_min = binary_entropy(std::cos(st.theta));
    return st;
}

/// Largest relative residual of both stationarity conditions over the retained angles.
inline double stationarity_residual(const BoundarySolverState& st) {
    double worst = 0.0;
    for (double tm : st.theta_m) {
        const double kappa_res = std::abs(variational_f_extended(tm) - st.kappa) / std::max(1.0, std::abs(st.kappa));
        const double lambda_res = std::abs(binary_entropy(std::sin(tm)) + st.kappa * binary_entropy(std::cos(tm)) + st.lambda) /
                                  std::max(1.0, std::abs(st.lambda));
        worst = std::max({worst, kappa_res, lambda_res});
    }
    return worst;
}

struct EnsembleMember {
    double weight;
    BlochVector state;
};

using Ensemble = std::vector<EnsembleMember>;

struct EnsemblePoint {
    double noise;        // sum p_m H(sigma_z | rho_m)
    double disturbance;  // sum p_m H(sigma_y | rho_m)
};

inline constexpr double kWeightTolerance = 1e-9;

/// Weighted entropies of sigma_z and sigma_y, H(sigma|rho) = h(r . axis).
inline EnsemblePoint ensemble_point(const Ensemble& ensemble) {
    if (ensemble.empty()) throw ValidationError("ensemble_point: empty ensemble");
    double total = 0.0;
    EnsemblePoint pt{0.0, 0.0};
    for (const auto& m : ensemble) {
        if (!(m.weight >= 0.0 && m.weight <= 1.0)) throw ValidationError("ensemble_point: weight outside [0, 1]");
        if (!m.state.is_physical()) throw ValidationError("ensemble_point: Bloch vector outside the unit ball " + m.state.str());
        total += m.weight;
        pt.noise += m.weight * binary_entropy(std::clamp(m.state.z, -1.0, 1.0));
        pt.disturbance += m.weight * binary_entropy(std::clamp(m.state.y, -1.0, 1.0));
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
        throw ValidationError("ensemble_point: weights sum to " + std::to_string(total));
    }
    return pt;
}

/// Pure state in the y-z plane with the same y component, no x component, and
/// +z (r.z >= 0) or -z (r.z < 0) filling the remaining length.
inline BlochVector project_to_pure_yz(const BlochVector& r) {
    const double y = std::clamp(r.y, -1.0, 1.0);
    const double zlen = std::sqrt(std::max(0.0, 1.0 - y * y));
    return {0.0, y, r.z >= 0.0 ? zlen : -zlen};
}

inline Ensemble project_to_pure_yz(const Ensemble& ensemble) {
    Ensemble out = ensemble;
    for (auto& m : out) m.state = project_to_pure_yz(m.state);
    return out;
}

enum class EnsembleSampling {
    uniform_ball,  // Bloch vectors uniform in the unit ball (mixed states)
    pure_yz,       // pure states on the y-z great circle, uniform angle
};

/// Random ensemble: member count uniform in [1, max_members], weights from the
/// flat Dirichlet distribution.
inline Ensemble random_ensemble(Engine& eng, std::size_t max_members, EnsembleSampling sampling) {
    const std::size_t n = 1 + static_cast<std::size_t>(uniform01(eng) * static_cast<double>(max_members));
    Ensemble e(std::min(n, max_members));
    double total = 0.0;
    for (auto& m : e) {
        m.weight = -std::log1p(-uniform01(eng));
        total += m.weight;
        if (sampling == EnsembleSampling::uniform_ball) {
            const double cz = 2.0 * uniform01(eng) - 1.0;
            const double az = 2.0 * std::numbers::pi * uniform01(eng);
            const double radius = std::cbrt(uniform01(eng));
            const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
            m.state = BlochVector{sz * std::cos(az), sz * std::sin(az), cz} * radius;
        } else {
            const double t = 2.0 * std::numbers::pi * uniform01(eng);
            m.state = {0.0, std::sin(t), std::cos(t)};
        }
    }
    if (total <= 0.0) {
        for (auto& m : e) m.weight = 1.0 / static_cast<double>(e.size());
    } else {
        for (auto& m : e) m.weight /= total;
    }
    return e;
}

struct OracleReport {
    std::size_t trials = 0;
    /// max over trials of g[N*]^2 + g[D*]^2 - 1; positive means below C*.
    double max_tight_excess = -1.0;
    /// max over trials of N_C*(D*) - N*; positive means below C*.
    double max_noise_deficit = -1.0;
    std::size_t worst_trial = 0;
    /// Trials where projecting to pure y-z states raised N or changed D.
    std::size_t projection_failures = 0;
    double max_projection_noise_increase = 0.0;
    double max_projection_disturbance_change = 0.0;
    double max_projected_tight_excess = -1.0;
};

struct OracleOptions {
    std::size_t trials = 100000;
    std::size_t max_members = 4;
    std::uint64_t seed = 0;
    EnsembleSampling sampling = EnsembleSampling::uniform_ball;
    unsigned workers = 1;
    double projection_tolerance = 1e-12;
};

namespace detail {

inline void oracle_trial(std::size_t trial, const OracleOptions& opt, OracleReport& acc) {
    Engine eng = make_stream(opt.seed, {0x0E5E'3B1Eull, trial});
    const Ensemble ens = random_ensemble(eng, opt.max_members, opt.sampling);
    const EnsemblePoint pt = ensemble_point(ens);
    const double excess = tight_value(pt.noise, pt.disturbance) - 1.0;
    const double deficit = boundary_noise_at(pt.disturbance) - pt.noise;
    if (excess > acc.max_tight_excess) {
        acc.max_tight_excess = excess;
        acc.worst_trial = trial;
    }
    acc.max_noise_deficit = std::max(acc.max_noise_deficit, deficit);

    const EnsemblePoint proj = ensemble_point(project_to_pure_yz(ens));
    const double n_increase = proj.noise - pt.noise;
    const double d_change = std::abs(proj.disturbance - pt.disturbance);
    acc.max_projection_noise_increase = std::max(acc.max_projection_noise_increase, n_increase);
    acc.max_projection_disturbance_change = std::max(acc.max_projection_disturbance_change, d_change);
    if (n_increase > opt.projection_tolerance || d_change > opt.projection_tolerance) ++acc.projection_failures;
    acc.max_projected_tight_excess = std::max(acc.max_projected_tight_excess, tight_value(proj.noise, proj.disturbance) - 1.0);
}

inline void merge(OracleReport& into, const OracleReport& part) {
    if (part.max_tight_excess > into.max_tight_excess ||
        (part.max_tight_excess == into.max_tight_excess && part.worst_trial < into.worst_trial)) {
        into.max_tight_excess = part.max_tight_excess;
        into.worst_trial = part.worst_trial;
    }
    into.max_noise_deficit = std::max(into.max_noise_deficit, part.max_noise_deficit);
    into.projection_failures += part.projection_failures;
    into.max_projection_noise_increase = std::max(into.max_projection_noise_increase, part.max_projection_noise_increase);
    into.max_projection_disturbance_change =
        std::max(into.max_projection_disturbance_change, part.max_projection_disturbance_change);
    into.max_projected_tight_excess = std::max(into.max_projected_tight_excess, part.max_projected_tight_excess);
}

}  // namespace detail

/// Brute-force check that random ensembles never land below C*, together with
/// the pure-state reduction (N never increases, D unchanged). Each trial has its
/// own RNG stream, so the report is independent of `workers`.
inline OracleReport ensemble_boundary_oracle(const OracleOptions& opt) {
    if (opt.max_members == 0) throw ValidationError("ensemble_boundary_oracle: max_members must be >= 1");
    OracleReport total;
    total.trials = opt.trials;
    if (opt.trials == 0) return total;

    const unsigned workers = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(opt.trials)));
    std::vector<OracleReport> parts(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                OracleReport& acc = parts[w];
                acc.worst_trial = opt.trials;
                for (std::size_t t = w; t < opt.trials; t += workers) detail::oracle_trial(t, opt, acc);
            });
        }
    }
    total.worst_trial = opt.trials;
    for (const auto& p : parts) detail::merge(total, p);
    return total;
}

inline OracleReport ensemble_boundary_oracle(std::size_t trials, std::size_t max_members, std::uint64_t seed) {
    OracleOptions opt;
    opt.trials = trials;
    opt.max_members = max_members;
    opt.seed = seed;
    return ensemble_boundary_oracle(opt);
}

struct MaassenUffinkReport {
    /// min over y-z-plane pure states of H(sigma_y) + H(sigma_z).
    double min_entropy_sum = 0.0;
    double theta_at_min = 0.0;
    /// Every sample within 1e-12 of the minimum is a sigma_y or sigma_z eigenstate.
    bool minimum_only_at_eigenstates = false;
    /// min of N + D along C*.
    double boundary_min_sum = 0.0;
    /// min of N + D - 1 on C* over interior parameters.
    double min_interior_gap = 0.0;
    /// Largest |(N, D)_state - (N, D)_C*| between the two routes at equal parameter.
    double max_route_discrepancy = 0.0;
};

/// Sweeps pure states (0, sin t, cos t), t in [0, pi/2] with `samples` points;
/// by the symmetries of h the rest of the circle repeats these values.
inline MaassenUffinkReport maassen_uffink_compare(std::size_t samples) {
    const std::vector<BoundaryPoint> curve = boundary_curve(samples);
    MaassenUffinkReport rep;
    rep.min_entropy_sum = std::numeric_limits<double>::infinity();
    rep.boundary_min_sum = std::numeric_limits<double>::infinity();
    rep.min_interior_gap = std::numeric_limits<double>::infinity();

    std::vector<double> sums(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = curve[k].theta;
        const EnsemblePoint st = ensemble_point({{1.0, yz_axis(t)}});
        sums[k] = st.noise + st.disturbance;
        if (sums[k] < rep.min_entropy_sum) {
            rep.min_entropy_sum = sums[k];
            rep.theta_at_min = t;
        }
        const double cs = curve[k].noise + curve[k].disturbance;
        rep.boundary_min_sum = std::min(rep.boundary_min_sum, cs);
        if (k > 0 && k + 1 < samples) rep.min_interior_gap = std::min(rep.min_interior_gap, cs - 1.0);
        rep.max_route_discrepancy = std::max(
            {rep.max_route_discrepancy, std::abs(st.noise - curve[k].noise), std::abs(st.disturbance - curve[k].disturbance)});
    }
    rep.minimum_only_at_eigenstates = true;
    for (std::size_t k = 0; k < samples; ++k) {
        if (sums[k] <= rep.min_entropy_sum + 1e-12 && k != 0 && k + 1 != samples) rep.minimum_only_at_eigenstates = false;
    }
    return rep;
}

}  // namespace qnd
