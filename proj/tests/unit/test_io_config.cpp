#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "obsbench/config.hpp"
#include "obsbench/errors.hpp"
#include "obsbench/rng.hpp"
#include "obsbench/study.hpp"
#include "obsbench/volume_io.hpp"

using namespace obsbench;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("volume save/load round-trips bitwise") {
    Volume3D v(Dims{64, 64, 32}, Pitch{0.44, 0.44, 0.44});
    Rng rng(1);
    for (double& x : v.data) x = rng.next_double();
    v = quantize_f32(v);

    const fs::path path = temp_file("obsbench_vol_test.vol");
    save_volume(v, path);
    const Volume3D back = load_volume(path);
    CHECK(back.dims.nx == 64);
    CHECK(back.dims.ny == 64);
    CHECK(back.dims.nz == 32);
    CHECK(back.pitch.dx == 0.44);
    CHECK(back.data == v.data);
    fs::remove(path);
}

TEST_CASE("quantize_f32 is idempotent") {
    Volume3D v(Dims{8, 8, 8}, Pitch{1, 1, 1});
    Rng rng(2);
    for (double& x : v.data) x = rng.next_double() * 1e-7;
    const Volume3D q1 = quantize_f32(v);
    const Volume3D q2 = quantize_f32(q1);
    CHECK(q1.data == q2.data);
}

TEST_CASE("corrupted volume files are rejected without partial data") {
    Volume3D v(Dims{4, 4, 4}, Pitch{1, 1, 1}, 1.5);
    const fs::path path = temp_file("obsbench_vol_corrupt.vol");
    save_volume(v, path);

    // clobber the magic
    {
        std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
        f.write("XXXXXXXX", 8);
    }
    CHECK_THROWS_AS(load_volume(path), FormatError);

    // rewrite, then truncate the payload
    save_volume(v, path);
    fs::resize_file(path, fs::file_size(path) - 17);
    CHECK_THROWS_AS(load_volume(path), FormatError);
    CHECK_THROWS_AS(load_volume(temp_file("obsbench_does_not_exist.vol")), FormatError);
    fs::remove(path);
}

TEST_CASE("projection stack save/load") {
    SystemModel sys;
    sys.n_views = 3;
    sys.nu = 8;
    sys.nv = 4;
    ProjectionSet p;
    p.system = sys;
    p.is_noisy = true;
    Rng rng(3);
    p.views.assign(3, std::vector<double>(32));
    for (auto& view : p.views)
        for (double& b : view) b = double(rng.next_u64() % 1000);

    const fs::path path = temp_file("obsbench_proj_test.prj");
    save_projections(p, path);
    const ProjectionSet back = load_projections(path, sys);
    CHECK(back.is_noisy);
    CHECK(back.views == p.views);

    SystemModel other = sys;
    other.nu = 16;
    CHECK_THROWS_AS(load_projections(path, other), FormatError);
    fs::remove(path);
}

TEST_CASE("default config file parses back to the defaults") {
    const fs::path path = temp_file("obsbench_default.cfg");
    write_default_config(path);
    const StudyConfig parsed = load_config(path);
    const StudyConfig defaults;
    CHECK(parsed.config_hash() == defaults.config_hash());
    CHECK(parsed.defects.size() == 4);
    CHECK(parsed.denoisers.size() == 2);
    CHECK(parsed.dose_fractions == std::vector<double>{1.0, 0.20, 0.15, 0.10, 0.05});
    fs::remove(path);
}

TEST_CASE("config parsing: overrides, custom sections, errors") {
    const StudyConfig cfg = parse_config(
        "[study]\n"
        "n_test_pairs = 7\n"
        "defects = type2, narrow\n"
        "denoisers = none, soft\n"
        "[defect.narrow]\n"
        "contrast_pct = 40\n"
        "extent_deg = 60\n"
        "location = inferior\n"
        "[denoiser.soft]\n"
        "kind = gaussian\n"
        "sigma_cm = 0.6\n");
    CHECK(cfg.n_test_pairs == 7);
    REQUIRE(cfg.defects.size() == 2);
    CHECK(cfg.defects[0].name == "type2");
    CHECK(cfg.defects[1].contrast_pct == 40.0);
    CHECK(cfg.defects[1].location == DefectLocation::inferior);
    REQUIRE(cfg.denoisers.size() == 2);
    CHECK(cfg.denoisers[1].kind == DenoiserKind::gaussian);
    CHECK(cfg.denoisers[1].sigma_cm == 0.6);

    CHECK_THROWS_AS(parse_config("[study]\nbogus_key = 1\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("[nosuch]\nx = 1\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("[study]\nn_test_pairs = nope\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("[study]\ndefects = unknown_defect\n"), ParameterError);
    CHECK_THROWS_AS(parse_config("[study]\nn_test_pairs = 1\n"), ParameterError);
}

TEST_CASE("config hashes separate simulation-relevant fields") {
    StudyConfig a;
    StudyConfig b;
    b.roc.n_boot = 555;  // evaluation-only setting
    CHECK(a.sim_hash() == b.sim_hash());
    CHECK(a.config_hash() != b.config_hash());

    StudyConfig c;
    c.system.n_views = 120;
    c.recon.n_subsets = 8;  // keep views divisible
    CHECK(a.sim_hash() != c.sim_hash());
}

TEST_CASE("paper-scale switch") {
    StudyConfig cfg;
    cfg.apply_paper_scale();
    CHECK(cfg.n_test_pairs == 400);
    CHECK(cfg.grid_dims.nx == 128);
    CHECK(cfg.grid_dims.nz == 114);
    CHECK(cfg.system.nu == 128);
    CHECK(cfg.system.nv == 114);
    CHECK_NOTHROW(cfg.validate());
}
