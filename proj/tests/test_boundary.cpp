#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qnd/boundary.hpp"

using namespace qnd;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

TEST(variational_f, examples) {
    EXPECT_NEAR(variational_f(45 * kDeg), 1.0, 1e-15);
    EXPECT_NEAR(variational_f(30 * kDeg), 0.722442344677828, 1e-12);
    EXPECT_NEAR(variational_f(60 * kDeg), 1.384193503283571, 1e-12);
    EXPECT_NEAR(variational_f(20 * kDeg), 0.564211904777648, 1e-12);
    EXPECT_NEAR(variational_f(30 * kDeg) * variational_f(60 * kDeg), 1.0, 1e-12);
}

TEST(variational_f, open_domain) {
    EXPECT_THROW(variational_f(0.0), DomainError);
    EXPECT_THROW(variational_f(std::numbers::pi / 2), DomainError);
    EXPECT_THROW(variational_f(-0.1), DomainError);
    EXPECT_NO_THROW(variational_f(1e-6));
    EXPECT_THROW(variational_f_extended(std::numbers::pi), DomainError);
}

TEST(variational_f, monotone_with_reciprocal_symmetry) {
    double prev = 0.0;
    for (int k = 1; k <= 1000; ++k) {
        const double t = (std::numbers::pi / 2) * k / 1001.0;
        const double f = variational_f(t);
        ASSERT_GT(f, prev) << k;
        ASSERT_NEAR(f * variational_f(std::numbers::pi / 2 - t), 1.0, 1e-9) << k;
        prev = f;
    }
}

TEST(variational_f, extension_is_symmetric) {
    for (double t : {0.2, 0.7, 1.3}) {
        EXPECT_NEAR(variational_f_extended(-t), variational_f(t), 1e-15);
        EXPECT_NEAR(variational_f_extended(std::numbers::pi - t), variational_f(t), 1e-14);
        EXPECT_NEAR(variational_f_extended(std::numbers::pi + t), variational_f(t), 1e-14);
    }
}

TEST(boundary_curve, endpoints_and_midpoint) {
    const auto c = boundary_curve(91);
    ASSERT_EQ(c.size(), 91u);
    EXPECT_DOUBLE_EQ(c.front().noise, 0.0);
    EXPECT_DOUBLE_EQ(c.front().disturbance, 1.0);
    EXPECT_NEAR(c.back().noise, 1.0, 1e-15);
    EXPECT_NEAR(c.back().disturbance, 0.0, 1e-15);
    EXPECT_NEAR(c[45].noise, 0.600876036692856, 1e-12);
    EXPECT_NEAR(c[45].disturbance, 0.600876036692856, 1e-12);
    EXPECT_THROW(boundary_curve(1), ValidationError);
}

TEST(boundary_curve, saturates_the_tight_relation) {
    for (const auto& p : boundary_curve(1001)) {
        ASSERT_NEAR(tight_value(p.noise, p.disturbance), 1.0, 1e-10) << p.theta;
    }
}

TEST(boundary_noise_at, inverts_the_curve) {
    for (const auto& p : boundary_curve(37)) EXPECT_NEAR(boundary_noise_at(p.disturbance), p.noise, 1e-9);
}

TEST(solve_boundary_point, stationarity) {
    for (int k = 1; k < 100; ++k) {
        const double d = k / 100.0;
        const auto st = solve_boundary_point(d);
        ASSERT_EQ(st.theta_m.size(), 4u);
        ASSERT_LE(stationarity_residual(st), 1e-8) << d;
        ASSERT_NEAR(binary_entropy(std::sin(st.theta)), d, 1e-12);
        ASSERT_NEAR(st.j_min, boundary_noise_at(d), 1e-9);
        // every retained Bloch vector (0, cos t, sin t) has disturbance d and noise j_min
        for (double tm : st.theta_m) {
            ASSERT_NEAR(binary_entropy(std::cos(tm)), d, 1e-9);
            ASSERT_NEAR(binary_entropy(std::sin(tm)), st.j_min, 1e-9);
        }
    }
    EXPECT_THROW(solve_boundary_point(0.0), DomainError);
    EXPECT_THROW(solve_boundary_point(1.0), DomainError);
}

TEST(ensemble_point, examples) {
    auto p = ensemble_point({{1.0, {0, 0, 1}}});
    EXPECT_DOUBLE_EQ(p.noise, 0.0);
    EXPECT_DOUBLE_EQ(p.disturbance, 1.0);
    p = ensemble_point({{0.5, {0, 0, 1}}, {0.5, {0, 1, 0}}});
    EXPECT_DOUBLE_EQ(p.noise, 0.5);
    EXPECT_DOUBLE_EQ(p.disturbance, 0.5);
    p = ensemble_point({{1.0, {0, 0, 0}}});
    EXPECT_DOUBLE_EQ(p.noise, 1.0);
    EXPECT_DOUBLE_EQ(p.disturbance, 1.0);
}

TEST(ensemble_point, validation) {
    EXPECT_THROW(ensemble_point({}), ValidationError);
    EXPECT_THROW(ensemble_point({{0.6, {0, 0, 1}}, {0.3, {0, 1, 0}}}), ValidationError);
    EXPECT_THROW(ensemble_point({{1.0, {0, 1, 1}}}), ValidationError);
    EXPECT_THROW(ensemble_point({{1.5, {0, 0, 1}}, {-0.5, {0, 0, 1}}}), ValidationError);
}

TEST(project_to_pure_yz, keeps_y_and_lowers_noise) {
    Engine eng = make_stream(5, {1});
    for (int i = 0; i < 20000; ++i) {
        const Ensemble e = random_ensemble(eng, 4, EnsembleSampling::uniform_ball);
        const Ensemble q = project_to_pure_yz(e);
        for (std::size_t k = 0; k < e.size(); ++k) {
            ASSERT_NEAR(q[k].state.norm(), 1.0, 1e-12);
            ASSERT_EQ(q[k].state.y, e[k].state.y);
            ASSERT_EQ(q[k].state.x, 0.0);
        }
        const auto a = ensemble_point(e), b = ensemble_point(q);
        ASSERT_LE(b.noise, a.noise + 1e-12);
        ASSERT_EQ(b.disturbance, a.disturbance);
    }
}

TEST(random_ensemble, shape) {
    Engine eng = make_stream(8, {2});
    std::size_t seen[5] = {};
    for (int i = 0; i < 4000; ++i) {
        const Ensemble e = random_ensemble(eng, 4, EnsembleSampling::uniform_ball);
        ASSERT_GE(e.size(), 1u);
        ASSERT_LE(e.size(), 4u);
        ++seen[e.size()];
        double w = 0;
        for (const auto& m : e) {
            w += m.weight;
            ASSERT_TRUE(m.state.is_physical());
        }
        ASSERT_NEAR(w, 1.0, 1e-12);
    }
    for (int n = 1; n <= 4; ++n) EXPECT_GT(seen[n], 800u);
}

TEST(ensemble_boundary_oracle, single_pure_states_stay_on_the_boundary) {
    OracleOptions opt;
    opt.trials = 20000;
    opt.max_members = 1;
    opt.seed = 3;
    opt.sampling = EnsembleSampling::pure_yz;
    const auto rep = ensemble_boundary_oracle(opt);
    EXPECT_LE(rep.max_tight_excess, 1e-9);
    EXPECT_LE(rep.max_noise_deficit, 1e-9);
    EXPECT_EQ(rep.projection_failures, 0u);
}

TEST(ensemble_boundary_oracle, single_mixed_states_stay_above_the_boundary) {
    OracleOptions opt;
    opt.trials = 20000;
    opt.max_members = 1;
    opt.seed = 4;
    const auto rep = ensemble_boundary_oracle(opt);
    EXPECT_LE(rep.max_tight_excess, 1e-9);
    EXPECT_LE(rep.max_projected_tight_excess, 1e-9);
    EXPECT_EQ(rep.projection_failures, 0u);
}

TEST(ensemble_boundary_oracle, mixtures_of_two_eigenstates_fall_below_the_boundary) {
    // {1/2 |+z>, 1/2 |+y>} gives (1/2, 1/2): on the N + D = 1 line, below C*.
    const auto p = ensemble_point({{0.5, {0, 0, 1}}, {0.5, {0, 1, 0}}});
    EXPECT_GT(tight_value(p.noise, p.disturbance), 1.2);
    EXPECT_GT(boundary_noise_at(p.disturbance) - p.noise, 0.1);

    const auto rep = ensemble_boundary_oracle(20000, 4, 1);
    EXPECT_GT(rep.max_tight_excess, 1e-3);
    EXPECT_EQ(rep.projection_failures, 0u);
}

TEST(ensemble_boundary_oracle, report_does_not_depend_on_workers) {
    OracleOptions opt;
    opt.trials = 5000;
    opt.seed = 17;
    opt.workers = 1;
    const auto a = ensemble_boundary_oracle(opt);
    opt.workers = 7;
    const auto b = ensemble_boundary_oracle(opt);
    EXPECT_EQ(a.max_tight_excess, b.max_tight_excess);
    EXPECT_EQ(a.worst_trial, b.worst_trial);
    EXPECT_EQ(a.max_noise_deficit, b.max_noise_deficit);
    EXPECT_EQ(a.projection_failures, b.projection_failures);
    EXPECT_EQ(a.max_projection_noise_increase, b.max_projection_noise_increase);
}

TEST(ensemble_boundary_oracle, zero_trials) {
    const auto rep = ensemble_boundary_oracle(0, 4, 1);
    EXPECT_EQ(rep.trials, 0u);
    EXPECT_EQ(rep.projection_failures, 0u);
}

TEST(maassen_uffink_compare, minimum_only_at_eigenstates) {
    const auto rep = maassen_uffink_compare(1572);
    EXPECT_NEAR(rep.min_entropy_sum, 1.0, 1e-12);
    EXPECT_TRUE(rep.minimum_only_at_eigenstates);
    EXPECT_NEAR(rep.boundary_min_sum, 1.0, 1e-12);
    EXPECT_GT(rep.min_interior_gap, 0.0);
    EXPECT_LE(rep.max_route_discrepancy, 1e-12);
}

TEST(maassen_uffink_compare, boundary_midpoint_gap) {
    const auto rep = maassen_uffink_compare(3);
    EXPECT_NEAR(rep.min_interior_gap, 0.201752073385712, 1e-12);
}
