#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qnd/correction.hpp"
#include "qnd/estimation.hpp"
#include "qnd/noise_disturbance.hpp"

using namespace qnd;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

CountingOptions counting(std::int64_t shots, CountingMode mode, std::uint64_t seed = 1, double eff = 1.0) {
    CountingOptions o;
    o.shots = shots;
    o.mode = mode;
    o.seed = seed;
    o.efficiency = eff;
    return o;
}

NDPoint pipeline(double theta, bool corrected, const CountingOptions& opt) {
    const Observable m = Observable::yz_plane(theta);
    const CorrectionMap c = corrected ? optimal_correction(m, Observable::sigma_y()) : CorrectionMap::identity(m);
    return nd_from_counts(simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a, opt),
                          simulate_intensities(m, c, InputFamily::b, opt));
}

}  // namespace

TEST(simulate_intensities, exact_table_at_theta_zero) {
    const Observable m = Observable::yz_plane(0.0);
    const auto t = simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a, counting(1000, CountingMode::exact));
    // alpha = +: mu = + always, beta' = +-y with probability 1/2
    EXPECT_DOUBLE_EQ(t.at(Outcome::plus, Outcome::plus, Outcome::plus), 500.0);
    EXPECT_DOUBLE_EQ(t.at(Outcome::plus, Outcome::plus, Outcome::minus), 500.0);
    EXPECT_DOUBLE_EQ(t.at(Outcome::plus, Outcome::minus, Outcome::plus), 0.0);
    EXPECT_DOUBLE_EQ(t.at(Outcome::plus, Outcome::minus, Outcome::minus), 0.0);
    EXPECT_DOUBLE_EQ(t.input_total(Outcome::minus), 1000.0);
    EXPECT_DOUBLE_EQ(t.total(), 2000.0);
}

TEST(simulate_intensities, exact_table_family_b_at_ninety_degrees) {
    const Observable m = Observable::yz_plane(90 * kDeg);
    const auto t = simulate_intensities(m, CorrectionMap::identity(m), InputFamily::b, counting(1000, CountingMode::exact));
    EXPECT_DOUBLE_EQ(t.at(Outcome::plus, Outcome::plus, Outcome::plus), 1000.0);
    EXPECT_NEAR(t.at(Outcome::minus, Outcome::minus, Outcome::minus), 1000.0, 1e-9);
    EXPECT_NEAR(t.at(Outcome::plus, Outcome::minus, Outcome::minus), 0.0, 1e-9);
}

TEST(simulate_intensities, validation) {
    const Observable m = Observable::sigma_z();
    EXPECT_THROW(simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a, counting(0, CountingMode::exact)),
                 ValidationError);
    EXPECT_THROW(simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a, counting(10, CountingMode::exact, 1, 0.0)),
                 ValidationError);
    EXPECT_THROW(simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a, counting(10, CountingMode::exact, 1, 1.5)),
                 ValidationError);
}

TEST(simulate_intensities, seeded_runs_are_reproducible) {
    const Observable m = Observable::yz_plane(37 * kDeg);
    for (CountingMode mode : {CountingMode::multinomial, CountingMode::poisson}) {
        const auto a = simulate_intensities(m, CorrectionMap::identity(m), InputFamily::b, counting(5000, mode, 42));
        const auto b = simulate_intensities(m, CorrectionMap::identity(m), InputFamily::b, counting(5000, mode, 42));
        const auto c = simulate_intensities(m, CorrectionMap::identity(m), InputFamily::b, counting(5000, mode, 43));
        EXPECT_EQ(a.counts, b.counts);
        EXPECT_NE(a.counts, c.counts);
    }
}

TEST(simulate_intensities, multinomial_conserves_shots_and_respects_zeros) {
    for (int d = 0; d <= 180; d += 10) {
        const Observable m = Observable::yz_plane(d * kDeg);
        const auto t = simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a,
                                            counting(12345, CountingMode::multinomial, std::uint64_t(d)));
        EXPECT_DOUBLE_EQ(t.input_total(Outcome::plus), 12345.0);
        EXPECT_DOUBLE_EQ(t.input_total(Outcome::minus), 12345.0);
        for (Outcome in : kOutcomes) {
            const auto p = cell_probabilities(Observable::sigma_z().eigenstate(in), m, CorrectionMap::identity(m),
                                              Observable::sigma_y());
            for (Outcome mu : kOutcomes)
                for (Outcome bo : kOutcomes)
                    if (p[slot(mu) * 2 + slot(bo)] == 0.0) {
                        EXPECT_EQ(t.at(in, mu, bo), 0.0);
                    }
        }
    }
}

TEST(simulate_intensities, efficiency_thins_counts) {
    const Observable m = Observable::yz_plane(30 * kDeg);
    const auto exact = simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a, counting(1000, CountingMode::exact, 1, 0.5));
    EXPECT_NEAR(exact.total(), 1000.0, 1e-9);
    const auto sampled =
        simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a, counting(1000000, CountingMode::multinomial, 1, 0.5));
    EXPECT_NEAR(sampled.total() / 2e6, 0.5, 5e-3);
    // uniform thinning leaves the estimates unbiased
    const NDPoint p = nd_from_counts(sampled, simulate_intensities(m, CorrectionMap::identity(m), InputFamily::b,
                                                                   counting(1000000, CountingMode::multinomial, 1, 0.5)));
    EXPECT_NEAR(p.noise, binary_entropy(std::cos(30 * kDeg)), 0.01);
    EXPECT_NEAR(p.disturbance, binary_entropy(0.25), 0.01);
}

TEST(estimate_probabilities, rejects_empty_rows) {
    IntensityTable t;
    EXPECT_THROW(estimate_probabilities(t), EstimationError);
    t.at(Outcome::plus, Outcome::plus, Outcome::plus) = 10;
    EXPECT_THROW(estimate_probabilities(t), EstimationError);
    t.at(Outcome::minus, Outcome::plus, Outcome::plus) = -1;
    EXPECT_THROW(estimate_probabilities(t), ValidationError);
}

TEST(bayes_invert, symmetric_prior_examples) {
    EstimatedProbabilities est;
    est.p_input = {0.5, 0.5};
    est.p_out_given_in = {{{0.75, 0.25}, {0.25, 0.75}}};
    const auto inv = bayes_invert(est);
    EXPECT_DOUBLE_EQ(inv.p_in_given_out[0][0], 0.75);
    EXPECT_DOUBLE_EQ(inv.p_in_given_out[0][1], 0.25);
    EXPECT_DOUBLE_EQ(inv.p_out[0], 0.5);
    EXPECT_NEAR(conditional_entropy(inv), 0.811278124459133, 1e-14);
}

TEST(bayes_invert, degenerate_outcome_is_dropped) {
    EstimatedProbabilities est;
    est.p_input = {0.5, 0.5};
    est.p_out_given_in = {{{1.0, 0.0}, {1.0, 0.0}}};
    const auto inv = bayes_invert(est);
    EXPECT_TRUE(inv.has_dropped_outcome());
    EXPECT_TRUE(inv.out_dropped[1]);
    EXPECT_DOUBLE_EQ(inv.p_in_given_out[0][0], 0.5);
    EXPECT_DOUBLE_EQ(conditional_entropy(inv), 1.0);
}

TEST(bayes_invert, posterior_is_consistent) {
    for (int d = 0; d <= 180; d += 5) {
        const Observable m = Observable::yz_plane(d * kDeg);
        const auto inv = bayes_invert(estimate_probabilities(
            simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a, counting(1000, CountingMode::exact))));
        for (std::size_t o = 0; o < 2; ++o) {
            if (inv.out_dropped[o]) continue;
            EXPECT_NEAR(inv.p_in_given_out[o][0] + inv.p_in_given_out[o][1], 1.0, 1e-12);
            for (std::size_t i = 0; i < 2; ++i) {
                EXPECT_NEAR(inv.p_in_given_out[o][i] * inv.p_out[o], inv.p_out_given_in[i][o] * inv.p_input[i], 1e-12);
            }
        }
    }
}

TEST(posterior_joint, requires_inversion) {
    EstimatedProbabilities est;
    est.p_input = {0.5, 0.5};
    EXPECT_THROW(posterior_joint(est), ValidationError);
}

TEST(nd_from_counts, family_check) {
    const Observable m = Observable::sigma_z();
    const auto a = simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a, counting(10, CountingMode::exact));
    EXPECT_THROW(nd_from_counts(a, a), ValidationError);
}

TEST(nd_from_counts, exact_mode_reproduces_analytic_values) {
    for (int d = 0; d <= 180; ++d) {
        const double t = d * kDeg;
        for (bool corrected : {false, true}) {
            const NDPoint p = pipeline(t, corrected, counting(1000, CountingMode::exact));
            ASSERT_NEAR(p.noise, binary_entropy(std::cos(t)), 1e-12) << d;
            const double want = corrected ? binary_entropy(std::sin(t)) : binary_entropy(std::sin(t) * std::sin(t));
            ASSERT_NEAR(p.disturbance, want, 1e-12) << d << (corrected ? " corrected" : "");
        }
    }
}

TEST(nd_from_counts, exact_mode_matches_direct_entropies) {
    const Observable m = Observable::yz_plane(50 * kDeg);
    const CorrectionMap c = CorrectionMap::rotated(1.1, 0.4);
    const auto ta = simulate_intensities(m, c, InputFamily::a, counting(1, CountingMode::exact));
    const auto tb = simulate_intensities(m, c, InputFamily::b, counting(1, CountingMode::exact));
    const NDPoint p = nd_from_counts(ta, tb);
    EXPECT_NEAR(p.noise, noise(ProjectiveInstrument(m), Observable::sigma_z()), 1e-12);
    EXPECT_NEAR(p.disturbance, disturbance(ProjectiveInstrument(m), c, Observable::sigma_y()), 1e-12);
}

TEST(nd_from_counts, multinomial_estimates_converge) {
    const std::pair<std::int64_t, double> levels[] = {{1000, 0.1}, {100000, 0.02}, {1000000, 0.01}};
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        for (auto [shots, tol] : levels) {
            double worst = 0.0;
            for (int d = 10; d <= 170; d += 20) {
                const double t = d * kDeg;
                const NDPoint p = pipeline(t, true, counting(shots, CountingMode::multinomial, seed));
                worst = std::max({worst, std::abs(p.noise - binary_entropy(std::cos(t))),
                                  std::abs(p.disturbance - binary_entropy(std::sin(t)))});
            }
            EXPECT_LT(worst, tol) << "seed " << seed << " shots " << shots;
        }
    }
}

TEST(nd_from_counts, poisson_estimates_converge) {
    for (int d = 20; d <= 160; d += 35) {
        const double t = d * kDeg;
        const NDPoint p = pipeline(t, false, counting(1000000, CountingMode::poisson, 9));
        EXPECT_NEAR(p.noise, binary_entropy(std::cos(t)), 0.01);
        EXPECT_NEAR(p.disturbance, binary_entropy(std::sin(t) * std::sin(t)), 0.01);
    }
}

TEST(parse_counting_mode, names) {
    EXPECT_EQ(parse_counting_mode("exact"), CountingMode::exact);
    EXPECT_EQ(parse_counting_mode("analytic"), CountingMode::exact);
    EXPECT_EQ(parse_counting_mode("poisson"), CountingMode::poisson);
    EXPECT_THROW(parse_counting_mode("gaussian"), ValidationError);
    EXPECT_EQ(parse_family("B"), InputFamily::b);
}
