#pragma once

// Information-theoretic noise H(A|M) and disturbance H(B|B') of a projective
// instrument, computed from exact Born-rule joint tables with uniform inputs.

#include <vector>

#include "qnd/entropy.hpp"
#include "qnd/qubit.hpp"

namespace qnd {

/// One apparatus configuration in the noise-disturbance plane.
struct NDPoint {
    double noise = 0.0;        // bits
    double disturbance = 0.0;  // bits
    double theta = 0.0;        // radians, configuration tag
    bool corrected = false;
};

inline const std::vector<int> kPlusMinusLabels{+1, -1};

/// p(input, mu) for uniformly distributed eigenstates of `input_obs` fed into `inst`.
inline JointTable input_outcome_table(const ProjectiveInstrument& inst, const Observable& input_obs) {
    std::vector<double> p(4);
    for (Outcome in : kOutcomes) {
        const PureState state = input_obs.eigenstate(in);
        for (Outcome mu : kOutcomes) p[slot(in) * 2 + slot(mu)] = 0.5 * born_probability(state, inst.measured(), mu);
    }
    return {kPlusMinusLabels, kPlusMinusLabels, std::move(p)};
}

/// p(beta, beta') for uniform eigenstates of B sent through `inst` and then a
/// sharp measurement of B: sum over mu of p(mu|beta) p(beta'|target(mu)).
inline JointTable input_final_table(const ProjectiveInstrument& inst, const Observable& b_obs) {
    std::vector<double> p(4, 0.0);
    for (Outcome beta : kOutcomes) {
        const PureState state = b_obs.eigenstate(beta);
        for (Outcome mu : kOutcomes) {
            const InstrumentBranch branch = apply_instrument(state, inst, mu);
            for (Outcome beta_out : kOutcomes) {
                p[slot(beta) * 2 + slot(beta_out)] += 0.5 * branch.probability * born_probability(branch.output, b_obs, beta_out);
            }
        }
    }
    return {kPlusMinusLabels, kPlusMinusLabels, std::move(p)};
}

/// N(M, A) = H(A|M).
inline double noise(const ProjectiveInstrument& inst, const Observable& a_obs) {
    return conditional_entropy(input_outcome_table(inst, a_obs), Given::cols);
}

/// D(M, B) = H(B|B') using the instrument's own post-measurement map.
inline double disturbance(const ProjectiveInstrument& inst, const Observable& b_obs) {
    return conditional_entropy(input_final_table(inst, b_obs), Given::cols);
}

/// D(M, B) when `correction` re-prepares the system after the M outcome.
inline double disturbance(const ProjectiveInstrument& inst, const CorrectionMap& correction, const Observable& b_obs) {
    return disturbance(inst.with_post_map(correction), b_obs);
}

}  // namespace qnd
