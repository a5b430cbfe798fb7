#pragma once

// Counting-statistics model of the two-stage polarimeter: eigenstates of A
// (or B) enter, M is measured, the system is re-prepared by a CorrectionMap,
// and B is measured sharply. Each input yields four intensities I_{in, mu, beta'}.
// Probabilities are recovered from the intensities by marginalization and
// Bayes' theorem and fed to the conditional entropies.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

#include "qnd/entropy.hpp"
#include "qnd/errors.hpp"
#include "qnd/noise_disturbance.hpp"
#include "qnd/qubit.hpp"
#include "qnd/rng.hpp"

namespace qnd {

/// Which observable's eigenstates are sent: A (noise data) or B (disturbance data).
enum class InputFamily { a, b };

enum class CountingMode {
    exact,        // expected counts shots * p, as reals
    multinomial,  // fixed number of shots per input state
    poisson,      // each cell independently Poisson(shots * p)
};

inline std::string_view to_string(InputFamily f) noexcept { return f == InputFamily::a ? "A" : "B"; }

inline std::string_view to_string(CountingMode m) noexcept {
    switch (m) {
        case CountingMode::exact: return "exact";
        case CountingMode::multinomial: return "multinomial";
        case CountingMode::poisson: return "poisson";
    }
    return "?";
}

inline InputFamily parse_family(std::string_view s) {
    if (s == "A" || s == "a") return InputFamily::a;
    if (s == "B" || s == "b") return InputFamily::b;
    throw ValidationError("unknown input family '" + std::string(s) + "'");
}

inline CountingMode parse_counting_mode(std::string_view s) {
    if (s == "exact" || s == "analytic") return CountingMode::exact;
    if (s == "multinomial") return CountingMode::multinomial;
    if (s == "poisson") return CountingMode::poisson;
    throw ValidationError("unknown counting mode '" + std::string(s) + "'");
}

/// The observables whose eigenstates are prepared (A, B) and which is measured last (B).
struct MeasurementSetup {
    Observable a = Observable::sigma_z();
    Observable b = Observable::sigma_y();
};

struct CountingOptions {
    std::int64_t shots = 1000;  // per input state
    std::uint64_t seed = 0;
    CountingMode mode = CountingMode::multinomial;
    /// Uniform detector efficiency in (0, 1]; every cell is thinned by it.
    double efficiency = 1.0;
};

struct IntensityTable {
    InputFamily family = InputFamily::a;
    /// Indexed [input][mu][beta'] through slot(): plus -> 0, minus -> 1.
    std::array<double, 8> counts{};
    std::int64_t shots_per_input = 0;
    std::uint64_t seed = 0;
    CountingMode mode = CountingMode::exact;
    /// Polar angle of the measured axis from +z (radians); export metadata.
    double theta = std::numeric_limits<double>::quiet_NaN();

    static constexpr std::size_t index(Outcome in, Outcome mu, Outcome beta_out) noexcept {
        return slot(in) * 4 + slot(mu) * 2 + slot(beta_out);
    }
    double& at(Outcome in, Outcome mu, Outcome beta_out) noexcept { return counts[index(in, mu, beta_out)]; }
    double at(Outcome in, Outcome mu, Outcome beta_out) const noexcept { return counts[index(in, mu, beta_out)]; }

    double input_total(Outcome in) const noexcept {
        double s = 0.0;
        for (Outcome mu : kOutcomes) {
            for (Outcome bo : kOutcomes) s += at(in, mu, bo);
        }
        return s;
    }
    double total() const noexcept { return input_total(Outcome::plus) + input_total(Outcome::minus); }
};

/// Exact probabilities p(mu, beta' | input) of one arm of the apparatus.
inline std::array<double, 4> cell_probabilities(const PureState& input, const Observable& m, const CorrectionMap& correction,
                                                const Observable& b) {
    std::array<double, 4> p{};
    for (Outcome mu : kOutcomes) {
        const double pm = born_probability(input, m, mu);
        for (Outcome bo : kOutcomes) p[slot(mu) * 2 + slot(bo)] = pm * born_probability(correction.target(mu), b, bo);
    }
    return p;
}

namespace detail {

inline std::int64_t sample_binomial(Engine& eng, std::int64_t n, double p) {
    if (n <= 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    return boost::random::binomial_distribution<std::int64_t, double>(n, p)(eng);
}

inline std::int64_t sample_poisson(Engine& eng, double mean) {
    if (mean <= 0.0) return 0;
    return boost::random::poisson_distribution<std::int64_t, double>(mean)(eng);
}

}  // namespace detail

/// Counts for both eigenstates of the family's observable, sent with equal weight.
///
/// Every (family, input) arm draws from its own stream keyed by the seed, the
/// family, the input label, the measured axis and both correction targets,
/// so a table never depends on what else was simulated.
inline IntensityTable simulate_intensities(const Observable& m, const CorrectionMap& correction, InputFamily family,
                                           const CountingOptions& opt, const MeasurementSetup& setup = {}) {
    if (opt.shots <= 0) throw ValidationError("simulate_intensities: shots must be >= 1");
    if (!(opt.efficiency > 0.0 && opt.efficiency <= 1.0)) {
        throw ValidationError("simulate_intensities: efficiency must lie in (0, 1]");
    }
    IntensityTable t;
    t.family = family;
    t.shots_per_input = opt.shots;
    t.seed = opt.seed;
    t.mode = opt.mode;
    t.theta = std::acos(std::clamp(m.axis().z, -1.0, 1.0));

    const Observable& prepared = family == InputFamily::a ? setup.a : setup.b;
    const double shots = static_cast<double>(opt.shots);
    for (Outcome in : kOutcomes) {
        const std::array<double, 4> p = cell_probabilities(prepared.eigenstate(in), m, correction, setup.b);
        const BlochVector& tp = correction.target_plus().direction();
        const BlochVector& tm = correction.target_minus().direction();
        Engine eng = make_stream(opt.seed, {family == InputFamily::a ? 0xAull : 0xBull, static_cast<std::uint64_t>(label(in) + 2),
                                            key_of(m.axis().x), key_of(m.axis().y), key_of(m.axis().z), key_of(tp.x),
                                            key_of(tp.y), key_of(tp.z), key_of(tm.x), key_of(tm.y), key_of(tm.z)});
        std::array<double, 4> cells{};
        switch (opt.mode) {
            case CountingMode::exact:
                for (std::size_t i = 0; i < 4; ++i) cells[i] = shots * p[i] * opt.efficiency;
                break;
            case CountingMode::multinomial: {
                // Conditional binomials: cell i given what the earlier cells took.
                std::int64_t left = opt.shots;
                for (std::size_t i = 0; i < 4; ++i) {
                    double tail = 0.0;
                    for (std::size_t j = i + 1; j < 4; ++j) tail += p[j];
                    const double q = tail > 0.0 ? std::clamp(p[i] / (p[i] + tail), 0.0, 1.0) : 1.0;
                    const std::int64_t k = detail::sample_binomial(eng, left, q);
                    left -= k;
                    cells[i] = static_cast<double>(opt.efficiency < 1.0 ? detail::sample_binomial(eng, k, opt.efficiency) : k);
                }
                break;
            }
            case CountingMode::poisson:
                for (std::size_t i = 0; i < 4; ++i) {
                    cells[i] = static_cast<double>(detail::sample_poisson(eng, shots * p[i] * opt.efficiency));
                }
                break;
        }
        for (Outcome mu : kOutcomes) {
            for (Outcome bo : kOutcomes) t.at(in, mu, bo) = cells[slot(mu) * 2 + slot(bo)];
        }
    }
    return t;
}

/// Probabilities recovered from one IntensityTable. "in" is alpha (family A)
/// or beta (family B); "out" is mu (family A) or beta' (family B).
struct EstimatedProbabilities {
    InputFamily family = InputFamily::a;
    std::array<double, 2> p_input{};
    std::array<std::array<double, 2>, 2> p_out_given_in{};  // [in][out]
    std::array<std::array<double, 2>, 2> p_in_given_out{};  // [out][in], filled by bayes_invert
    std::array<double, 2> p_out{};
    /// Set for outcomes whose marginal is exactly zero; their posterior row is left at zero.
    std::array<bool, 2> out_dropped{false, false};
    bool inverted = false;

    bool has_dropped_outcome() const noexcept { return out_dropped[0] || out_dropped[1]; }
};

/// Marginalization ratios:
///   family A: p(alpha) = sum_{mu,beta'} I / sum_all I,  p(mu|alpha) = sum_{beta'} I / sum_{mu,beta'} I
///   family B: p(beta)  = sum_{mu,beta'} I / sum_all I,  p(beta'|beta) = sum_{mu} I / sum_{mu,beta'} I
/// p_out is the marginal sum_in p(in) p(out|in); the posterior is left for bayes_invert.
inline EstimatedProbabilities estimate_probabilities(const IntensityTable& table) {
    for (double c : table.counts) {
        if (!(c >= 0.0)) throw ValidationError("estimate_probabilities: negative or NaN count");
    }
    const double total = table.total();
    if (!(total > 0.0)) throw EstimationError("estimate_probabilities: table has no counts");

    EstimatedProbabilities est;
    est.family = table.family;
    for (Outcome in : kOutcomes) {
        const double row = table.input_total(in);
        if (!(row > 0.0)) {
            throw EstimationError("estimate_probabilities: input " + std::to_string(label(in)) + " has no counts");
        }
        est.p_input[slot(in)] = row / total;
        for (Outcome out : kOutcomes) {
            double s = 0.0;
            for (Outcome other : kOutcomes) {
                s += table.family == InputFamily::a ? table.at(in, out, other) : table.at(in, other, out);
            }
            est.p_out_given_in[slot(in)][slot(out)] = s / row;
        }
    }
    for (Outcome out : kOutcomes) {
        double s = 0.0;
        for (Outcome in : kOutcomes) s += est.p_input[slot(in)] * est.p_out_given_in[slot(in)][slot(out)];
        est.p_out[slot(out)] = s;
    }
    return est;
}

/// p(in|out) = p(in) p(out|in) / p(out), with p(out) = sum_in p(in) p(out|in).
/// Outcomes with zero marginal are flagged in out_dropped and skipped.
inline EstimatedProbabilities bayes_invert(EstimatedProbabilities est) {
    for (Outcome out : kOutcomes) {
        const std::size_t o = slot(out);
        double marginal = 0.0;
        for (Outcome in : kOutcomes) marginal += est.p_input[slot(in)] * est.p_out_given_in[slot(in)][o];
        est.p_out[o] = marginal;
        est.out_dropped[o] = !(marginal > 0.0);
        for (Outcome in : kOutcomes) {
            const std::size_t i = slot(in);
            est.p_in_given_out[o][i] = est.out_dropped[o] ? 0.0 : est.p_input[i] * est.p_out_given_in[i][o] / marginal;
        }
    }
    est.inverted = true;
    return est;
}

/// Joint p(in, out) = p(out) p(in|out) from Bayes-inverted estimates (rows: in, cols: out).
inline JointTable posterior_joint(const EstimatedProbabilities& est) {
    if (!est.inverted) throw ValidationError("posterior_joint: estimates have not been Bayes-inverted");
    std::vector<double> p(4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t o = 0; o < 2; ++o) p[i * 2 + o] = est.p_out[o] * est.p_in_given_out[o][i];
    }
    return {kPlusMinusLabels, kPlusMinusLabels, std::move(p)};
}

/// H(in | out) from Bayes-inverted estimates.
inline double conditional_entropy(const EstimatedProbabilities& est) {
    return conditional_entropy(posterior_joint(est), Given::cols);
}

/// Noise H(A|M) from an A-family table and disturbance H(B|B') from a B-family table.
inline NDPoint nd_from_counts(const IntensityTable& table_a, const IntensityTable& table_b) {
    if (table_a.family != InputFamily::a || table_b.family != InputFamily::b) {
        throw ValidationError("nd_from_counts: expected an A-family and a B-family table");
    }
    NDPoint pt;
    pt.noise = conditional_entropy(bayes_invert(estimate_probabilities(table_a)));
    pt.disturbance = conditional_entropy(bayes_invert(estimate_probabilities(table_b)));
    pt.theta = table_a.theta;
    return pt;
}

}  // namespace qnd
