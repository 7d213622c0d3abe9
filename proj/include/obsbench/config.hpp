#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "obsbench/denoise.hpp"
#include "obsbench/imaging.hpp"
#include "obsbench/phantom.hpp"
#include "obsbench/recon.hpp"

namespace obsbench {

struct ObserverConfig {
    int n_channels = 5;
    int roi_size = 32;
    double channel_start = 1.0 / 64.0;  // cycles/pixel
    double channel_width = 1.0 / 64.0;
};

struct RocConfig {
    int n_boot = 2000;
    double ci_level = 0.95;
};

/// Full study description: population tables, acquisition, reconstruction,
/// denoisers, observer, and bookkeeping. Field defaults encode the clinical
/// protocol (four OSEM iterations/subsets, order-5 Butterworth at 0.4/cm,
/// five octave-width channels from 1/64 cycles/pixel, doses down to 5%).
struct StudyConfig {
    // study
    int n_test_pairs = 50;
    int n_train_pairs = 200;  // reserved for training external denoisers
    std::vector<double> dose_fractions = {1.0, 0.20, 0.15, 0.10, 0.05};
    std::vector<DefectSpec> defects;
    std::vector<DenoiserSpec> denoisers;
    std::uint64_t master_seed = 20230302;
    double normal_total_counts = 12.0e6;
    std::filesystem::path output_dir = "out";
    int n_threads = 0;  // 0 = hardware concurrency; env OBSBENCH_THREADS caps

    // reconstruction grid
    Dims grid_dims{64, 64, 32};
    double grid_pitch_cm = 0.44;

    SystemModel system;
    ReconConfig recon;
    int butterworth_order = 5;
    double butterworth_cutoff_cm = 0.4;
    bool butterworth_squared_gain = false;

    PopulationModel population;
    PhantomOptions phantom;
    ObserverConfig observer;
    RocConfig roc;

    StudyConfig();

    void validate() const;

    /// Full-size protocol: 400 test pairs on 128x128x114 grids.
    void apply_paper_scale();

    Pitch grid_pitch() const { return Pitch{grid_pitch_cm, grid_pitch_cm, grid_pitch_cm}; }

    /// Canonical serialization of every field (no comments); hashing it yields
    /// the provenance hash.
    std::string canonical_text() const;
    std::string config_hash() const;

    /// Hash over only the fields that determine simulated/reconstructed
    /// volumes; cache keys derive from it so evaluation-only settings do not
    /// invalidate cached volumes.
    std::string sim_hash() const;
};

/// Parses the plain-text config (INI-style sections, key = value, '#'
/// comments) over the defaults. Unknown keys are errors.
StudyConfig load_config(const std::filesystem::path& path);
StudyConfig parse_config(const std::string& text);

/// Writes the annotated default configuration.
void write_default_config(const std::filesystem::path& path);

}  // namespace obsbench
