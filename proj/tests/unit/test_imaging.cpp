#include <doctest.h>

#include <cmath>

#include "obsbench/errors.hpp"
#include "obsbench/imaging.hpp"
#include "obsbench/projector.hpp"
#include "obsbench/rng.hpp"

using namespace obsbench;

namespace {

SystemModel small_system(int n_views = 8, int nu = 24, int nv = 8) {
    SystemModel s;
    s.n_views = n_views;
    s.nu = nu;
    s.nv = nv;
    s.bin_pitch_cm = 0.5;
    s.orbit_radius_cm = 15.0;
    return s;
}

Volume3D small_volume(double fill = 0.0) {
    return Volume3D(Dims{16, 16, 8}, Pitch{0.5, 0.5, 0.5}, fill);
}

Volume3D random_volume(std::uint64_t seed, double scale = 1.0) {
    Volume3D v = small_volume();
    Rng rng(seed);
    for (double& x : v.data) x = scale * rng.next_double();
    return v;
}

}  // namespace

TEST_CASE("zero activity projects to zero") {
    const Volume3D act = small_volume(0.0);
    const Volume3D att = small_volume(0.0);
    const ProjectionSet p = project(act, att, small_system());
    CHECK(p.total() == 0.0);
    CHECK_FALSE(p.is_noisy);
}

TEST_CASE("centered point source sends the same total counts to every view") {
    // odd dims so one voxel sits exactly on the isocenter
    Volume3D act(Dims{15, 15, 7}, Pitch{0.5, 0.5, 0.5});
    Volume3D att = act;
    act.at(7, 7, 3) = 1.0;

    SystemModel sys = small_system(12);
    for (bool blur : {false, true}) {
        ProjectorFlags flags;
        flags.blur = blur;
        const ProjectionSet p = project(act, att, sys, flags);
        std::vector<double> totals;
        for (const auto& view : p.views) {
            double t = 0.0;
            for (double b : view) t += b;
            totals.push_back(t);
        }
        for (double t : totals) {
            CHECK(t > 0.0);
            CHECK(t == doctest::Approx(totals.front()).epsilon(1e-12));
        }
    }
}

TEST_CASE("Beer-Lambert: 10 cm of soft tissue attenuates by e^-1.54") {
    // view 0 looks along +x; slab strictly between the source and detector
    Volume3D act(Dims{40, 15, 7}, Pitch{0.5, 0.5, 0.5});
    Volume3D att = act;
    act.at(4, 7, 3) = 1.0;  // x = -7.75 cm
    for (int ix = 10; ix < 30; ++ix)  // 20 voxels x 0.5 cm = 10 cm, from x=-4.75
        for (int iy = 0; iy < 15; ++iy)
            for (int iz = 0; iz < 7; ++iz) att.at(ix, iy, iz) = 0.154;

    SystemModel sys = small_system(1, 48, 8);
    sys.start_angle_deg = 0.0;  // detector at +x
    ProjectorFlags noblur;
    noblur.blur = false;

    const ProjectionSet attenuated = project(act, att, sys, noblur);
    const ProjectionSet unattenuated = project(act, Volume3D(act.dims, act.pitch), sys, noblur);
    const double ratio = attenuated.total() / unattenuated.total();
    CHECK(ratio == doctest::Approx(std::exp(-1.54)).epsilon(1e-5));
}

TEST_CASE("projection is linear in activity") {
    const Volume3D f = random_volume(11);
    const Volume3D g = random_volume(22);
    Volume3D att = small_volume(0.0);
    Rng rng(33);
    for (double& m : att.data) m = 0.15 * rng.next_double();

    const SystemModel sys = small_system();
    Volume3D combo = f;
    for (std::size_t i = 0; i < combo.data.size(); ++i)
        combo.data[i] = 2.0 * f.data[i] + 3.0 * g.data[i];

    const ProjectionSet pf = project(f, att, sys);
    const ProjectionSet pg = project(g, att, sys);
    const ProjectionSet pc = project(combo, att, sys);
    for (int v = 0; v < sys.n_views; ++v)
        for (std::size_t i = 0; i < pc.views[v].size(); ++i) {
            const double expect = 2.0 * pf.views[v][i] + 3.0 * pg.views[v][i];
            CHECK(pc.views[v][i] == doctest::Approx(expect).epsilon(1e-9));
        }
}

TEST_CASE("projection of nonnegative activity is nonnegative") {
    const Volume3D f = random_volume(44);
    Volume3D att = small_volume(0.01);
    const ProjectionSet p = project(f, att, small_system());
    for (const auto& view : p.views)
        for (double b : view) CHECK(b >= 0.0);
}

TEST_CASE("forward and backprojection are exact adjoints") {
    Volume3D att = small_volume(0.0);
    Rng rng(55);
    for (double& m : att.data) m = 0.12 * rng.next_double();
    const SystemModel sys = small_system();
    SpectProjector op(att, sys);

    const Volume3D x = random_volume(66);
    std::vector<double> y(op.bins_per_view());
    for (double& b : y) b = rng.next_double();

    for (int view : {0, 3, 7}) {
        std::vector<double> ax;
        op.forward_view(x, view, ax);
        double lhs = 0.0;
        for (std::size_t i = 0; i < ax.size(); ++i) lhs += ax[i] * y[i];

        Volume3D aty = op.make_volume();
        op.backproject_view(view, y, aty);
        double rhs = 0.0;
        for (std::size_t i = 0; i < x.data.size(); ++i) rhs += x.data[i] * aty.data[i];

        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("scale_to_dose hits the requested total") {
    const Volume3D f = random_volume(77, 5.0);
    const Volume3D att = small_volume(0.0);
    const ProjectionSet p = project(f, att, small_system());

    const ProjectionSet scaled = scale_to_dose(p, 12.0e6, 0.05);
    CHECK(scaled.total() / (12.0e6 * 0.05) == doctest::Approx(1.0).epsilon(1e-10));

    // fraction = 1 on an already-normalized set is the identity
    const ProjectionSet normal = scale_to_dose(p, 12.0e6, 1.0);
    const ProjectionSet again = scale_to_dose(normal, 12.0e6, 1.0);
    for (int v = 0; v < int(normal.views.size()); ++v)
        for (std::size_t i = 0; i < normal.views[v].size(); ++i)
            CHECK(again.views[v][i] == doctest::Approx(normal.views[v][i]).epsilon(1e-12));
}

TEST_CASE("scale_to_dose composes multiplicatively") {
    const Volume3D f = random_volume(88, 2.0);
    const ProjectionSet p = project(f, small_volume(0.0), small_system());
    const double total = p.total();
    const ProjectionSet ab = scale_to_dose(scale_to_dose(p, total, 0.5), total * 0.5, 0.4);
    const ProjectionSet direct = scale_to_dose(p, total, 0.2);
    for (int v = 0; v < int(p.views.size()); ++v)
        for (std::size_t i = 0; i < p.views[v].size(); ++i)
            CHECK(ab.views[v][i] == doctest::Approx(direct.views[v][i]).epsilon(1e-12));
}

TEST_CASE("scale_to_dose input validation") {
    const ProjectionSet zero = project(small_volume(0.0), small_volume(0.0), small_system());
    CHECK_THROWS_AS(scale_to_dose(zero, 1e6, 0.5), ScalingError);

    const ProjectionSet p = project(random_volume(9), small_volume(0.0), small_system());
    CHECK_THROWS_AS(scale_to_dose(p, 0.0, 0.5), ParameterError);
    CHECK_THROWS_AS(scale_to_dose(p, 1e6, 0.0), ParameterError);
    CHECK_THROWS_AS(scale_to_dose(p, 1e6, 1.5), ParameterError);
}

TEST_CASE("poisson noise: zero means stay zero, reproducible, flagged") {
    ProjectionSet p = project(random_volume(10, 3.0), small_volume(0.0), small_system());
    p = scale_to_dose(p, 1.0e5, 1.0);
    p.views[0][0] = 0.0;

    const ProjectionSet n1 = add_poisson_noise(p, 123);
    const ProjectionSet n2 = add_poisson_noise(p, 123);
    const ProjectionSet n3 = add_poisson_noise(p, 124);
    CHECK(n1.is_noisy);
    CHECK(n1.views == n2.views);
    CHECK(n1.views != n3.views);
    CHECK(n1.views[0][0] == 0.0);
    for (const auto& view : n1.views)
        for (double b : view) CHECK(b == std::floor(b));

    CHECK_THROWS_AS(add_poisson_noise(n1, 5), ParameterError);
}

TEST_CASE("negative bins are rejected by the noise stage") {
    ProjectionSet p = project(random_volume(10), small_volume(0.0), small_system());
    p.views[0][0] = -1.0;
    CHECK_THROWS_AS(add_poisson_noise(p, 1), ParameterError);
}

TEST_CASE("grid mismatches raise geometry errors") {
    const Volume3D act = small_volume(1.0);
    const Volume3D att(Dims{8, 8, 8}, Pitch{0.5, 0.5, 0.5});
    CHECK_THROWS_AS(project(act, att, small_system()), GeometryError);
}

TEST_CASE("system model validation") {
    SystemModel s = small_system();
    s.n_views = 0;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = small_system();
    s.fwhm_at_10cm_cm = 0.1;  // below intrinsic
    CHECK_THROWS_AS(s.validate(), ParameterError);
}
