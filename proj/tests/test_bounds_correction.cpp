#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qnd/bounds.hpp"
#include "qnd/correction.hpp"

using namespace qnd;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

NDPoint analytic(double t, bool corrected) {
    return {binary_entropy(std::cos(t)), corrected ? binary_entropy(std::sin(t)) : binary_entropy(std::sin(t) * std::sin(t)),
            t, corrected};
}

CorrectionGrid square_grid(double step_deg) {
    const AngleRange r{0.0, std::numbers::pi, step_deg * kDeg};
    return {r, r};
}

}  // namespace

TEST(incompatibility_constant, examples) {
    EXPECT_NEAR(incompatibility_constant(Observable::sigma_z(), Observable::sigma_y()), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(incompatibility_constant(Observable::sigma_z(), Observable::sigma_z()), 0.0);
    EXPECT_NEAR(incompatibility_constant(Observable::sigma_z(), Observable::yz_plane(60 * kDeg)), 0.415037499278844, 1e-12);
    // antiparallel axes share eigenvectors
    EXPECT_NEAR(incompatibility_constant(Observable::sigma_z(), Observable(BlochVector{0, 0, -1})), 0.0, 1e-15);
}

TEST(optimal_correction, examples) {
    const Observable b = Observable::sigma_y();
    CorrectionMap c = optimal_correction(Observable::yz_plane(50 * kDeg), b);
    EXPECT_EQ(c.target_plus().direction(), kAxisY);
    EXPECT_EQ(c.target_minus().direction(), -kAxisY);

    c = optimal_correction(Observable::yz_plane(130 * kDeg), b);
    EXPECT_EQ(c.target_plus().direction(), kAxisY);

    // b.m < 0 swaps the targets
    c = optimal_correction(Observable::yz_plane(-50 * kDeg), b);
    EXPECT_EQ(c.target_plus().direction(), -kAxisY);
    EXPECT_EQ(c.target_minus().direction(), kAxisY);

    // b.m == 0 takes the aligned branch
    c = optimal_correction(Observable::sigma_z(), b);
    EXPECT_EQ(c.target_plus().direction(), kAxisY);
    c = optimal_correction(BlochVector{0, 0, -1}, b);
    EXPECT_EQ(c.target_plus().direction(), kAxisY);
}

TEST(angle_range, inclusive_lattice) {
    EXPECT_EQ(square_grid(22.5).vartheta.points().size(), 9u);
    EXPECT_EQ(square_grid(1.0).vartheta.points().size(), 181u);
    EXPECT_EQ((AngleRange{0.0, 0.0, 0.1}).points().size(), 1u);
    EXPECT_THROW((AngleRange{0.0, 1.0, 0.0}).points(), ValidationError);
    EXPECT_THROW((AngleRange{1.0, 0.0, 0.1}).points(), ValidationError);
}

TEST(correction_grid_search, coarse_grid_at_fifty_degrees) {
    const auto res = correction_grid_search(50 * kDeg, Observable::sigma_y(), square_grid(22.5));
    EXPECT_EQ(res.surface.size(), 81u);
    EXPECT_NEAR(res.best_vartheta, 90 * kDeg, 1e-12);
    EXPECT_NEAR(res.best_phi, 90 * kDeg, 1e-12);
    EXPECT_NEAR(res.min_disturbance, binary_entropy(std::sin(50 * kDeg)), 1e-9);
    EXPECT_NEAR(res.min_disturbance, 0.520610731854825, 1e-9);
    // row-major order
    EXPECT_DOUBLE_EQ(res.surface[1].vartheta, 0.0);
    EXPECT_NEAR(res.surface[1].phi, 22.5 * kDeg, 1e-15);
}

TEST(correction_grid_search, refined_grid_keeps_the_minimum) {
    const auto res = correction_grid_search(50 * kDeg, Observable::sigma_y(), square_grid(1.0));
    EXPECT_NEAR(res.min_disturbance, binary_entropy(std::sin(50 * kDeg)), 1e-6);
    EXPECT_NEAR(res.best_vartheta, 90 * kDeg, 1e-12);
    EXPECT_NEAR(res.best_phi, 90 * kDeg, 1e-12);
}

TEST(correction_grid_search, refinement_fixed_point) {
    for (double theta_deg : {20.0, 50.0, 75.0, 120.0}) {
        const double coarse = correction_grid_search(theta_deg * kDeg, Observable::sigma_y(), square_grid(22.5)).min_disturbance;
        const double fine = correction_grid_search(theta_deg * kDeg, Observable::sigma_y(), square_grid(5.625)).min_disturbance;
        EXPECT_NEAR(coarse, fine, 1e-12) << theta_deg;
        EXPECT_NEAR(fine, binary_entropy(std::sin(theta_deg * kDeg)), 1e-12) << theta_deg;
    }
}

TEST(correction_grid_search, measuring_b_itself_leaves_no_disturbance) {
    const auto res = correction_grid_search(90 * kDeg, Observable::sigma_y(), square_grid(22.5));
    EXPECT_NEAR(res.min_disturbance, 0.0, 1e-12);
}

TEST(correction_grid_search, empty_grid_is_rejected) {
    CorrectionGrid g = square_grid(22.5);
    g.phi.step = -1.0;
    EXPECT_THROW(correction_grid_search(0.5, Observable::sigma_y(), g), ValidationError);
}

TEST(check_bounds, examples) {
    const Observable a = Observable::sigma_z(), b = Observable::sigma_y();
    BoundReport r = check_bounds(analytic(45 * kDeg, true), a, b);
    EXPECT_NEAR(r.sum_nd, 1.201752073385712, 1e-12);
    EXPECT_TRUE(r.satisfies_general);
    EXPECT_TRUE(r.satisfies_tight);
    EXPECT_NEAR(r.tight_value, 1.0, 1e-9);

    r = check_bounds({0.5, 0.3}, a, b);
    EXPECT_FALSE(r.satisfies_general);
    EXPECT_LT(r.general_slack, 0.0);
    EXPECT_FALSE(r.satisfies_tight);
    EXPECT_LT(r.saturation_gap, 0.0);

    r = check_bounds({1.0, 1.0}, a, b);
    EXPECT_TRUE(r.satisfies_general);
    EXPECT_TRUE(r.satisfies_tight);
    EXPECT_DOUBLE_EQ(r.tight_value, 0.0);
}

TEST(check_bounds, general_and_tight_on_degree_grid) {
    const Observable a = Observable::sigma_z(), b = Observable::sigma_y();
    for (int d = 0; d <= 180; ++d) {
        for (bool corrected : {false, true}) {
            const BoundReport r = check_bounds(analytic(d * kDeg, corrected), a, b);
            ASSERT_GE(r.general_slack, -1e-9) << d;
            ASSERT_TRUE(r.satisfies_tight) << d;
            if (corrected) {
                ASSERT_NEAR(r.tight_value, 1.0, 1e-9) << d;
            }
        }
    }
}

TEST(optimal_correction, never_worse_than_identity) {
    for (int d = 0; d <= 180; ++d) {
        const double t = d * kDeg;
        const double d0 = binary_entropy(std::sin(t) * std::sin(t));
        const double dopt = binary_entropy(std::sin(t));
        ASSERT_LE(dopt, d0 + 1e-15) << d;
        if (d == 0 || d == 90 || d == 180) {
            EXPECT_NEAR(dopt, d0, 1e-12) << d;
        } else {
            EXPECT_LT(dopt, d0) << d;
        }
    }
}
