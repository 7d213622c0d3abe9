#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obsbench/config.hpp"
#include "obsbench/eigenanalysis.hpp"
#include "obsbench/metrics.hpp"
#include "obsbench/observer.hpp"
#include "obsbench/roc.hpp"

namespace obsbench {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// One evaluation condition: (defect type, dose fraction, denoiser).
struct StudyCell {
    std::string defect;
    double dose_fraction = 1.0;
    std::string denoiser;

    std::string tag() const;  // e.g. "type1_f0.1_smooth"
};

/// Optional restriction of the condition grid (--cell on the CLI).
struct CellFilter {
    std::optional<std::string> defect;
    std::optional<double> dose_fraction;
    std::optional<std::string> denoiser;

    bool matches_defect(const std::string& name) const;
    bool matches_dose(double f) const;
    bool matches_denoiser(const std::string& name) const;
};

struct CellResult {
    StudyCell cell;
    int n_pairs = 0;

    double rmse_mean = 0.0, rmse_sd = 0.0;
    double ssim_mean = 0.0, ssim_sd = 0.0;
    double psnr_mean = 0.0;

    AucEstimate auc;
    BinormalFit binormal;
    double snr_cho = 0.0;
    double snr_spectral = 0.0;
    double auc_snr_paper = 0.0;
    double auc_snr_textbook = 0.0;

    EigenReport eigen;
    std::vector<double> delta_v;
    DeltaMeanImage delta_f;
    RocCurve roc;

    std::vector<std::string> case_ids_present, case_ids_absent;
    LooStatistics tstats;
};

struct StudyReport {
    std::string config_hash;
    std::string sim_hash;
    std::uint64_t master_seed = 0;
    std::string version = kToolkitVersion;
    std::vector<CellResult> cells;
    std::vector<std::string> errors;  // one diagnostic per aborted cell

    bool complete() const { return errors.empty(); }
};

/// Full virtual-trial loop: per defect, generate paired phantoms, project,
/// scale to each dose, add noise, reconstruct, post-filter, denoise, and
/// evaluate fidelity + observer performance. Deterministic given
/// cfg.master_seed regardless of thread count. Intermediate artifacts are
/// cached under output_dir/cache and reused when present. A failing stage
/// aborts only the affected cells (diagnostics land in report.errors).
StudyReport run_study(const StudyConfig& cfg, const CellFilter& filter = {});

/// Stage verbs backing the CLI: populate the noisy-projection cache
/// (simulate) or the reconstructed-volume cache (reconstruct). With
/// `train_split`, simulate/reconstruct the training pairs instead of the test
/// pairs; reconstruct additionally exports plain-named volumes under
/// output_dir/volumes for external denoisers.
void run_simulate(const StudyConfig& cfg, const CellFilter& filter = {},
                  bool train_split = false);
void run_reconstruct(const StudyConfig& cfg, const CellFilter& filter = {},
                     bool train_split = false);

/// Writes summary.csv, per-cell roc/eigen/profile/tstats CSVs, errors.log
/// (when cells aborted), and a checksum manifest under cfg.output_dir.
void emit_report(const StudyReport& report, const StudyConfig& cfg);

/// Projection stack format: "OBSPRJ01" magic, u32 view count and bin dims,
/// noisy flag, then per-view f64 bins.
void save_projections(const ProjectionSet& p, const std::filesystem::path& path);
ProjectionSet load_projections(const std::filesystem::path& path, const SystemModel& system);

}  // namespace obsbench
