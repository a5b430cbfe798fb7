// Short tour: noise and disturbance of a sharp measurement at a few angles,
// with and without re-preparation, and where each point sits relative to the
// optimal boundary.

#include <cmath>
#include <cstdio>

#include "qnd/bounds.hpp"
#include "qnd/correction.hpp"
#include "qnd/estimation.hpp"
#include "qnd/io.hpp"

int main() {
    using namespace qnd;
    const Observable a = Observable::sigma_z();
    const Observable b = Observable::sigma_y();

    std::printf("%6s %10s %10s %10s %12s\n", "theta", "N", "D0", "Dopt", "g2+g2(opt)");
    for (double deg : {0.0, 20.0, 45.0, 50.0, 70.0, 90.0, 135.0}) {
        const Observable m = Observable::yz_plane(io::to_radians(deg));
        const ProjectiveInstrument inst(m);
        const double n = noise(inst, a);
        const double d0 = disturbance(inst, b);
        const double dopt = disturbance(inst, optimal_correction(m, b), b);
        std::printf("%6.1f %10.6f %10.6f %10.6f %12.9f\n", deg, n, d0, dopt, tight_value(n, dopt));
    }

    // Same numbers from simulated counts.
    const Observable m = Observable::yz_plane(io::to_radians(50.0));
    CountingOptions opt;
    opt.shots = 200000;
    opt.seed = 7;
    const NDPoint p = nd_from_counts(simulate_intensities(m, CorrectionMap::identity(m), InputFamily::a, opt),
                                     simulate_intensities(m, optimal_correction(m, b), InputFamily::b, opt));
    std::printf("\n50 deg from %lld shots per input: N = %.4f, Dopt = %.4f\n", static_cast<long long>(opt.shots), p.noise,
                p.disturbance);

    CorrectionGrid grid;
    grid.vartheta.step = grid.phi.step = io::to_radians(22.5);
    const GridSearchResult res = correction_grid_search(io::to_radians(50.0), b, grid);
    std::printf("best re-preparation on the 22.5 deg lattice: (%g, %g), D = %.6f\n", io::to_degrees(res.best_vartheta),
                io::to_degrees(res.best_phi), res.min_disturbance);
    return 0;
}
