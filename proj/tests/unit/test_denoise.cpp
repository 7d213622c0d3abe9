#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "obsbench/denoise.hpp"
#include "obsbench/errors.hpp"
#include "obsbench/rng.hpp"
#include "obsbench/volume_io.hpp"

using namespace obsbench;

namespace {

Volume3D random_volume(std::uint64_t seed) {
    Volume3D v(Dims{14, 12, 10}, Pitch{0.5, 0.5, 0.5});
    Rng rng(seed);
    for (double& x : v.data) x = rng.next_double();
    return v;
}

}  // namespace

TEST_CASE("identity denoiser returns the input bitwise") {
    const Volume3D v = random_volume(1);
    DenoiserSpec spec;
    spec.kind = DenoiserKind::identity;
    const Volume3D out = denoise(v, spec, "case0");
    CHECK(out.data == v.data);
}

TEST_CASE("gaussian smoothing preserves the total sum") {
    const Volume3D v = random_volume(2);
    const Volume3D s = gaussian_smooth(v, 1.0);
    CHECK(s.sum() == doctest::Approx(v.sum()).epsilon(1e-6));
    // mass near the boundary is the hard case for reflective handling
    Volume3D edge(v.dims, v.pitch);
    edge.at(0, 0, 0) = 5.0;
    edge.at(13, 11, 9) = 3.0;
    CHECK(gaussian_smooth(edge, 1.3).sum() == doctest::Approx(edge.sum()).epsilon(1e-6));
}

TEST_CASE("gaussian smoothing never increases the maximum") {
    const Volume3D v = random_volume(3);
    const Volume3D s = gaussian_smooth(v, 0.8);
    CHECK(s.max_value() <= v.max_value() + 1e-12);
}

TEST_CASE("built-in denoisers are positively homogeneous") {
    const Volume3D v = random_volume(4);
    Volume3D scaled = v;
    for (double& x : scaled.data) x *= 4.0;

    for (DenoiserKind kind : {DenoiserKind::identity, DenoiserKind::gaussian,
                              DenoiserKind::butterworth}) {
        DenoiserSpec spec;
        spec.kind = kind;
        spec.sigma_cm = 0.7;
        spec.cutoff_cm = 0.4;
        const Volume3D a = denoise(scaled, spec, "c");
        const Volume3D b = denoise(v, spec, "c");
        for (std::size_t i = 0; i < a.data.size(); ++i)
            CHECK(a.data[i] == doctest::Approx(4.0 * b.data[i]).epsilon(1e-9));
    }
}

TEST_CASE("external denoiser round-trips volumes bit-exactly") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "obsbench_ext_test";
    fs::create_directories(dir);

    Volume3D v = random_volume(5);
    v = quantize_f32(v);  // file format carries f32
    save_volume(v, dir / "caseX.vol");

    DenoiserSpec spec;
    spec.kind = DenoiserKind::external;
    spec.source_dir = dir;
    const Volume3D out = denoise(v, spec, "caseX");
    CHECK(out.data == v.data);

    CHECK_THROWS_AS(denoise(v, spec, "missing_case"), IngestionError);
    try {
        denoise(v, spec, "missing_case");
    } catch (const IngestionError& e) {
        CHECK(std::string(e.what()).find("missing_case") != std::string::npos);
    }

    Volume3D wrong(Dims{4, 4, 4}, Pitch{1, 1, 1}, 1.0);
    save_volume(wrong, dir / "caseY.vol");
    CHECK_THROWS_AS(denoise(v, spec, "caseY"), IngestionError);
    fs::remove_all(dir);
}

TEST_CASE("denoiser validation") {
    DenoiserSpec spec;
    spec.kind = DenoiserKind::gaussian;
    spec.sigma_cm = 0.0;
    CHECK_THROWS_AS(spec.validate(), ParameterError);
    spec.kind = DenoiserKind::external;
    spec.source_dir.clear();
    CHECK_THROWS_AS(spec.validate(), ParameterError);
}
