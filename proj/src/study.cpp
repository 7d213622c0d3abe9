#include "obsbench/study.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>

#include "obsbench/errors.hpp"
#include "obsbench/parallel.hpp"
#include "obsbench/projector.hpp"
#include "obsbench/rng.hpp"
#include "obsbench/volume_io.hpp"

namespace obsbench {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string hex16(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)v);
    return buf;
}

std::uint64_t dose_bits(double f) { return std::bit_cast<std::uint64_t>(f); }

std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    return Rng::derive(seed, path).next_u64();
}

std::string defect_params(const DefectSpec& d) {
    return d.name + ":" + fmt17(d.contrast_pct) + ":" + fmt17(d.extent_deg) + ":" +
           (d.location == DefectLocation::anterior ? "anterior" : "inferior");
}

std::string case_id_of(const std::string& defect, int pair, bool train, bool present) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "_%c%04d_%s", train ? 't' : 'p', pair,
                  present ? "pres" : "abs");
    return defect + buf;
}

std::uint64_t fnv_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= (unsigned char)buf[i];
            h *= 0x100000001b3ull;
        }
        if (!in) break;
    }
    return h;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / double(v.size() - 1));
}

enum class StageDepth { simulate, reconstruct, evaluate };

/// Everything evaluated for one (variant, dose, denoiser) of one pair.
struct CaseEval {
    FidelityResult fid;
    FeatureVector feat;
    Image2D roi;
};

struct SlotOutcome {
    bool ok = false;
    std::string error;  // non-empty when the slot's chain failed
    CaseEval pres, abs;
};

struct PairOutcome {
    std::string case_id_pres, case_id_abs;
    // [dose_idx * n_dens + den_idx]
    std::vector<SlotOutcome> slots;
};

struct StudyContext {
    explicit StudyContext(const StudyConfig& c) : cfg(c) {}

    const StudyConfig& cfg;
    CellFilter filter;
    StageDepth depth = StageDepth::evaluate;
    bool train_split = false;
    bool export_volumes = false;
    std::string sim_hash;
    ChannelMatrix channels;
    std::vector<double> cell_doses;  // configured doses passing the filter

    fs::path cache_dir() const { return cfg.output_dir / "cache"; }
    fs::path volumes_dir() const { return cfg.output_dir / "volumes"; }
};

fs::path noisy_proj_path(const StudyContext& ctx, const DefectSpec& defect,
                         const std::string& case_id, double dose) {
    const std::string key = "noisyproj|" + ctx.sim_hash + "|" + defect_params(defect) + "|" +
                            case_id + "|" + fmt17(dose);
    return ctx.cache_dir() /
           ("proj_" + case_id + "_f" + fmt_short(dose) + "_" + hex16(fnv1a64(key)) + ".prj");
}

fs::path recon_vol_path(const StudyContext& ctx, const DefectSpec& defect,
                        const std::string& case_id, double dose) {
    // r2: reconstructions are stored in normal-dose intensity units
    const std::string key = "recon|r2|" + ctx.sim_hash + "|" + defect_params(defect) + "|" +
                            case_id + "|" + fmt17(dose);
    return ctx.cache_dir() /
           ("recon_" + case_id + "_f" + fmt_short(dose) + "_" + hex16(fnv1a64(key)) + ".vol");
}

/// Per-pair deterministic chain. Shares the noiseless projection and the
/// projector across doses of one variant.
void run_pair(const StudyContext& ctx, const DefectSpec& defect, int pair,
              PairOutcome& out) {
    const StudyConfig& cfg = ctx.cfg;
    const std::uint64_t case_root = derive_key(
        cfg.master_seed,
        {fnv1a64("case"), fnv1a64(defect.name), std::uint64_t(ctx.train_split), std::uint64_t(pair)});

    const Sex sex = pair % 2 == 0 ? Sex::male : Sex::female;
    const AnatomySample anatomy = sample_anatomy(sex, cfg.population.anatomy(sex), case_root);
    const UptakeRatios uptake = sample_uptake(cfg.population.uptake, case_root);

    auto [act_abs, att] = build_phantom(anatomy, uptake, cfg.grid_dims, cfg.grid_pitch(),
                                        cfg.phantom);
    const Volume3D act_pres = insert_defect(act_abs, anatomy, defect, cfg.phantom);
    const VoxelIndex centroid =
        defect_centroid(anatomy, defect, cfg.grid_dims, cfg.grid_pitch(), cfg.phantom);

    out.case_id_pres = case_id_of(defect.name, pair, ctx.train_split, true);
    out.case_id_abs = case_id_of(defect.name, pair, ctx.train_split, false);

    // one projector per pair: the attenuation-factor cache and the OSEM
    // sensitivity images are shared across variants and dose levels
    std::optional<SpectProjector> sim_op;       // full physics (data generation)
    std::optional<SpectProjector> mismatch_op;  // only when recon model flags differ
    std::vector<Volume3D> sens;
    ProjectorFlags recon_flags;
    recon_flags.attenuation = cfg.recon.model_attenuation;
    recon_flags.blur = cfg.recon.model_blur;
    const bool matched_model = recon_flags.attenuation && recon_flags.blur;
    auto simulation_op = [&]() -> SpectProjector& {
        if (!sim_op) sim_op.emplace(att, cfg.system, ProjectorFlags{});
        return *sim_op;
    };
    auto recon_op = [&]() -> SpectProjector& {
        if (matched_model) return simulation_op();
        if (!mismatch_op) mismatch_op.emplace(att, cfg.system, recon_flags);
        return *mismatch_op;
    };

    // normal dose first so the fidelity reference is available
    std::vector<double> doses = ctx.cell_doses;
    if (std::none_of(doses.begin(), doses.end(),
                     [](double f) { return std::fabs(f - 1.0) <= 1e-12; }))
        doses.insert(doses.begin(), 1.0);
    std::sort(doses.begin(), doses.end(), std::greater<double>());

    const int n_dens = int(cfg.denoisers.size());
    out.slots.assign(ctx.cell_doses.size() * std::size_t(n_dens), SlotOutcome{});

    for (int variant = 0; variant < 2; ++variant) {
        const bool present = variant == 0;
        const Volume3D& act = present ? act_pres : act_abs;
        const std::string& case_id = present ? out.case_id_pres : out.case_id_abs;

        auto fail_variant_dose = [&](double dose, const std::string& msg) {
            for (std::size_t di = 0; di < ctx.cell_doses.size(); ++di) {
                if (std::fabs(ctx.cell_doses[di] - dose) > 1e-12 &&
                    std::fabs(dose - 1.0) > 1e-12)
                    continue;  // only the affected dose (the reference affects all)
                for (int dn = 0; dn < n_dens; ++dn) {
                    SlotOutcome& slot = out.slots[di * n_dens + dn];
                    if (slot.error.empty()) slot.error = case_id + ": " + msg;
                }
            }
        };

        std::optional<ProjectionSet> noiseless;
        std::optional<Volume3D> reference;

        for (double dose : doses) {
            Volume3D recon_vol;
            try {
                const fs::path vol_path = recon_vol_path(ctx, defect, case_id, dose);
                bool have = false;
                if (ctx.depth != StageDepth::simulate && fs::exists(vol_path)) {
                    try {
                        recon_vol = load_volume(vol_path);
                        have = true;
                    } catch (const FormatError&) {
                        have = false;  // corrupt cache entry: recompute below
                    }
                }
                if (!have) {
                    const fs::path proj_path = noisy_proj_path(ctx, defect, case_id, dose);
                    std::optional<ProjectionSet> noisy;
                    if (fs::exists(proj_path)) {
                        try {
                            noisy = load_projections(proj_path, cfg.system);
                        } catch (const FormatError&) {
                            noisy.reset();
                        }
                    }
                    if (!noisy) {
                        if (!noiseless) {
                            noiseless.emplace();
                            noiseless->system = cfg.system;
                            noiseless->is_noisy = false;
                            noiseless->views.resize(cfg.system.n_views);
                            SpectProjector& op = simulation_op();
                            for (int v = 0; v < cfg.system.n_views; ++v)
                                op.forward_view(act, v, noiseless->views[v]);
                        }
                        ProjectionSet scaled =
                            scale_to_dose(*noiseless, cfg.normal_total_counts, dose);
                        // paired design: present and absent share the noise
                        // stream, so the defect is the only systematic
                        // difference between them
                        const std::uint64_t noise_seed =
                            derive_key(case_root, {fnv1a64("noise"), dose_bits(dose)});
                        noisy = add_poisson_noise(scaled, noise_seed);
                        save_projections(*noisy, proj_path);
                    }
                    if (ctx.depth == StageDepth::simulate) continue;

                    SpectProjector& rop = recon_op();
                    if (sens.empty()) sens = osem_sensitivity(rop, cfg.recon);
                    Volume3D rec = osem(rop, noisy->views, cfg.recon, sens);
                    rec = butterworth_filter(rec, cfg.butterworth_order,
                                             cfg.butterworth_cutoff_cm,
                                             cfg.butterworth_squared_gain);
                    rec = clip_negative(rec);
                    // reconstructed intensity tracks the acquired counts, so
                    // low-dose volumes are mapped to normal-dose intensity
                    // units before they are compared or denoised
                    for (double& x : rec.data) x /= dose;
                    recon_vol = quantize_f32(rec);
                    save_volume(recon_vol, vol_path);
                }
                if (ctx.export_volumes)
                    save_volume(recon_vol,
                                ctx.volumes_dir() / (case_id + "_f" + fmt_short(dose) + ".vol"));
            } catch (const std::exception& e) {
                fail_variant_dose(dose, e.what());
                continue;
            }

            if (ctx.depth != StageDepth::evaluate) continue;
            if (std::fabs(dose - 1.0) <= 1e-12) reference = recon_vol;

            for (std::size_t di = 0; di < ctx.cell_doses.size(); ++di) {
                if (std::fabs(ctx.cell_doses[di] - dose) > 1e-12) continue;
                for (int dn = 0; dn < n_dens; ++dn) {
                    SlotOutcome& slot = out.slots[di * n_dens + dn];
                    if (!slot.error.empty()) continue;
                    const DenoiserSpec& den = cfg.denoisers[dn];
                    try {
                        const std::string dosed_id = case_id + "_f" + fmt_short(dose);
                        const Volume3D denoised = denoise(recon_vol, den, dosed_id);
                        CaseEval ev;
                        if (!reference)
                            throw NumericalError("normal-dose reference unavailable");
                        ev.fid = compute_fidelity(denoised, *reference);
                        RoiImage roi = extract_roi(denoised, centroid, cfg.observer.roi_size);
                        roi.case_id = case_id;
                        roi.truth = present ? Truth::defect_present : Truth::defect_absent;
                        roi = window_gray(roi);
                        ev.roi = roi.pixels;
                        ev.feat = apply_channels(ctx.channels, roi);
                        (present ? slot.pres : slot.abs) = std::move(ev);
                        slot.ok = true;
                    } catch (const std::exception& e) {
                        slot.ok = false;
                        slot.error = case_id + ": " + e.what();
                    }
                }
            }
        }
    }
}

CellResult aggregate_cell(const StudyContext& ctx, const DefectSpec& defect, double dose,
                          int den_idx, std::size_t dose_idx,
                          const std::vector<PairOutcome>& pairs) {
    const StudyConfig& cfg = ctx.cfg;
    const int n_dens = int(cfg.denoisers.size());

    CellResult cell;
    cell.cell = {defect.name, dose, cfg.denoisers[den_idx].name};
    cell.n_pairs = int(pairs.size());

    std::vector<FeatureVector> feats_p, feats_a;
    std::vector<Image2D> rois_p, rois_a;
    std::vector<double> rmses, ssims, psnrs;
    for (const PairOutcome& po : pairs) {
        const SlotOutcome& slot = po.slots[dose_idx * n_dens + den_idx];
        if (!slot.error.empty())
            throw NumericalError(slot.error);
        feats_p.push_back(slot.pres.feat);
        feats_a.push_back(slot.abs.feat);
        rois_p.push_back(slot.pres.roi);
        rois_a.push_back(slot.abs.roi);
        for (const CaseEval* ev : {&slot.pres, &slot.abs}) {
            rmses.push_back(ev->fid.rmse);
            ssims.push_back(ev->fid.ssim);
            psnrs.push_back(ev->fid.psnr);
        }
        cell.case_ids_present.push_back(po.case_id_pres);
        cell.case_ids_absent.push_back(po.case_id_abs);
    }

    cell.rmse_mean = mean_of(rmses);
    cell.rmse_sd = sd_of(rmses, cell.rmse_mean);
    cell.ssim_mean = mean_of(ssims);
    cell.ssim_sd = sd_of(ssims, cell.ssim_mean);
    cell.psnr_mean = mean_of(psnrs);

    cell.tstats = cho_loo_test_statistics(feats_p, feats_a);
    const std::uint64_t boot_seed =
        derive_key(cfg.master_seed, {fnv1a64("boot"), fnv1a64(defect.name), dose_bits(dose),
                                     fnv1a64(cfg.denoisers[den_idx].name)});
    cell.auc = bootstrap_ci(cell.tstats.t_present, cell.tstats.t_absent, cfg.roc.n_boot,
                            cfg.roc.ci_level, boot_seed);
    cell.roc = empirical_roc(cell.tstats.t_present, cell.tstats.t_absent);
    cell.binormal = binormal_fit(cell.tstats.t_present, cell.tstats.t_absent);

    const EnsembleStats stats = ensemble_stats(feats_p, feats_a);
    cell.delta_v = stats.delta_mean;
    cell.snr_cho = cho_snr(stats);
    cell.eigen = eigen_report(stats);
    cell.snr_spectral = cell.eigen.snr;
    cell.auc_snr_paper = auc_from_snr(cell.snr_spectral, SnrAucConvention::paper);
    cell.auc_snr_textbook = auc_from_snr(cell.snr_spectral, SnrAucConvention::textbook);
    cell.delta_f = delta_mean_image(rois_p, rois_a);
    return cell;
}

StudyReport run_stages(const StudyConfig& cfg, const CellFilter& filter, StageDepth depth,
                       bool train_split, bool export_volumes) {
    cfg.validate();

    StudyContext ctx(cfg);
    ctx.filter = filter;
    ctx.depth = depth;
    ctx.train_split = train_split;
    ctx.export_volumes = export_volumes;
    ctx.sim_hash = cfg.sim_hash();
    if (depth == StageDepth::evaluate)
        ctx.channels = build_channels(cfg.observer.n_channels, cfg.observer.channel_start,
                                      cfg.observer.channel_width, cfg.observer.roi_size);
    for (double f : cfg.dose_fractions)
        if (filter.matches_dose(f)) ctx.cell_doses.push_back(f);
    if (ctx.cell_doses.empty())
        throw ParameterError("study: the --cell filter excludes every dose fraction");

    fs::create_directories(ctx.cache_dir());
    if (export_volumes) fs::create_directories(ctx.volumes_dir());

    StudyReport report;
    report.config_hash = cfg.config_hash();
    report.sim_hash = ctx.sim_hash;
    report.master_seed = cfg.master_seed;

    const int n_pairs = train_split ? cfg.n_train_pairs : cfg.n_test_pairs;
    const int threads = thread_count(cfg.n_threads);

    for (const DefectSpec& defect : cfg.defects) {
        if (!filter.matches_defect(defect.name)) continue;

        std::vector<PairOutcome> outcomes(n_pairs);
        parallel_for(std::size_t(n_pairs), threads,
                     [&](std::size_t i) { run_pair(ctx, defect, int(i), outcomes[i]); });

        if (depth != StageDepth::evaluate) continue;

        for (std::size_t di = 0; di < ctx.cell_doses.size(); ++di) {
            for (int dn = 0; dn < int(cfg.denoisers.size()); ++dn) {
                if (!filter.matches_denoiser(cfg.denoisers[dn].name)) continue;
                StudyCell id{defect.name, ctx.cell_doses[di], cfg.denoisers[dn].name};
                try {
                    report.cells.push_back(
                        aggregate_cell(ctx, defect, ctx.cell_doses[di], dn, di, outcomes));
                } catch (const std::exception& e) {
                    report.errors.push_back("cell defect=" + id.defect + " dose=" +
                                            fmt_short(id.dose_fraction) + " denoiser=" +
                                            id.denoiser + ": " + e.what());
                }
            }
        }
    }
    return report;
}

void write_csv(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + path.string());
    out << content;
    if (!out) throw FormatError("write failed for " + path.string());
}

}  // namespace

std::string StudyCell::tag() const {
    return defect + "_f" + fmt_short(dose_fraction) + "_" + denoiser;
}

bool CellFilter::matches_defect(const std::string& name) const {
    return !defect || *defect == name;
}
bool CellFilter::matches_dose(double f) const {
    return !dose_fraction || std::fabs(*dose_fraction - f) <= 1e-12;
}
bool CellFilter::matches_denoiser(const std::string& name) const {
    return !denoiser || *denoiser == name;
}

StudyReport run_study(const StudyConfig& cfg, const CellFilter& filter) {
    return run_stages(cfg, filter, StageDepth::evaluate, false, false);
}

void run_simulate(const StudyConfig& cfg, const CellFilter& filter, bool train_split) {
    run_stages(cfg, filter, StageDepth::simulate, train_split, false);
}

void run_reconstruct(const StudyConfig& cfg, const CellFilter& filter, bool train_split) {
    run_stages(cfg, filter, StageDepth::reconstruct, train_split, true);
}

void save_projections(const ProjectionSet& p, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("save_projections: cannot open " + path.string());
    const char magic[8] = {'O', 'B', 'S', 'P', 'R', 'J', '0', '1'};
    out.write(magic, sizeof(magic));
    const std::uint32_t head[3] = {std::uint32_t(p.views.size()), std::uint32_t(p.system.nu),
                                   std::uint32_t(p.system.nv)};
    out.write(reinterpret_cast<const char*>(head), sizeof(head));
    const std::uint8_t noisy = p.is_noisy ? 1 : 0;
    const std::uint8_t pad[3] = {0, 0, 0};
    out.write(reinterpret_cast<const char*>(&noisy), 1);
    out.write(reinterpret_cast<const char*>(pad), 3);
    for (const auto& view : p.views)
        out.write(reinterpret_cast<const char*>(view.data()),
                  std::streamsize(view.size() * sizeof(double)));
    if (!out) throw FormatError("save_projections: write failed for " + path.string());
}

ProjectionSet load_projections(const std::filesystem::path& path, const SystemModel& system) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_projections: cannot open " + path.string());
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, "OBSPRJ01", 8) != 0)
        throw FormatError("load_projections: bad magic in " + path.string());
    std::uint32_t head[3];
    in.read(reinterpret_cast<char*>(head), sizeof(head));
    std::uint8_t noisy;
    std::uint8_t pad[3];
    in.read(reinterpret_cast<char*>(&noisy), 1);
    in.read(reinterpret_cast<char*>(pad), 3);
    if (!in) throw FormatError("load_projections: truncated header in " + path.string());
    if (int(head[0]) != system.n_views || int(head[1]) != system.nu ||
        int(head[2]) != system.nv)
        throw FormatError("load_projections: header does not match the system model in " +
                          path.string());

    ProjectionSet p;
    p.system = system;
    p.is_noisy = noisy != 0;
    p.views.assign(head[0], std::vector<double>(std::size_t(head[1]) * head[2]));
    for (auto& view : p.views) {
        in.read(reinterpret_cast<char*>(view.data()),
                std::streamsize(view.size() * sizeof(double)));
        if (!in) throw FormatError("load_projections: truncated data in " + path.string());
    }
    return p;
}

void emit_report(const StudyReport& report, const StudyConfig& cfg) {
    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    std::vector<fs::path> artifacts;

    const int L = cfg.observer.n_channels;
    std::ostringstream s;
    s << "# obsbench summary\n";
    s << "# version=" << report.version << " config_hash=" << report.config_hash
      << " sim_hash=" << report.sim_hash << " master_seed=" << report.master_seed << "\n";
    s << "# scatter is not simulated by the analytic projector; OSEM applies no scatter"
         " compensation\n";
    s << "# auc_from_snr_paper: AUC = 1/2 + 1/2 erf(SNR); auc_from_snr_textbook: erf(SNR/2)\n";
    s << "defect,dose_fraction,denoiser,n_pairs,rmse_mean,rmse_sd,ssim_mean,ssim_sd,"
         "psnr_mean_db,auc,auc_ci_low,auc_ci_high,n_boot,binormal_a,binormal_b,auc_binormal,"
         "snr_cho,snr_spectral,auc_from_snr_paper,auc_from_snr_textbook";
    for (int m = 1; m <= L; ++m) s << ",lambda_" << m;
    for (int m = 1; m <= L; ++m) s << ",alpha_" << m;
    for (int m = 1; m <= L; ++m) s << ",dv_" << m;
    s << "\n";
    for (const CellResult& c : report.cells) {
        s << c.cell.defect << "," << fmt17(c.cell.dose_fraction) << "," << c.cell.denoiser
          << "," << c.n_pairs << "," << fmt17(c.rmse_mean) << "," << fmt17(c.rmse_sd) << ","
          << fmt17(c.ssim_mean) << "," << fmt17(c.ssim_sd) << "," << fmt17(c.psnr_mean) << ","
          << fmt17(c.auc.auc) << "," << fmt17(c.auc.ci_low) << "," << fmt17(c.auc.ci_high)
          << "," << c.auc.n_boot << "," << fmt17(c.binormal.a) << "," << fmt17(c.binormal.b)
          << "," << fmt17(c.binormal.auc) << "," << fmt17(c.snr_cho) << ","
          << fmt17(c.snr_spectral) << "," << fmt17(c.auc_snr_paper) << ","
          << fmt17(c.auc_snr_textbook);
        for (int m = 0; m < L; ++m) s << "," << fmt17(c.eigen.eigenvalues[m]);
        for (int m = 0; m < L; ++m) s << "," << fmt17(c.eigen.alphas[m]);
        for (int m = 0; m < L; ++m) s << "," << fmt17(c.delta_v[m]);
        s << "\n";
    }
    write_csv(dir / "summary.csv", s.str());
    artifacts.push_back(dir / "summary.csv");

    for (const CellResult& c : report.cells) {
        const std::string tag = c.cell.tag();

        std::ostringstream roc;
        roc << "fpf,tpf\n";
        for (const auto& [x, y] : c.roc.points) roc << fmt17(x) << "," << fmt17(y) << "\n";
        write_csv(dir / ("roc_" + tag + ".csv"), roc.str());
        artifacts.push_back(dir / ("roc_" + tag + ".csv"));

        std::ostringstream eig;
        eig << "mode,lambda,alpha,contrib\n";
        for (std::size_t m = 0; m < c.eigen.eigenvalues.size(); ++m)
            eig << (m + 1) << "," << fmt17(c.eigen.eigenvalues[m]) << ","
                << fmt17(c.eigen.alphas[m]) << "," << fmt17(c.eigen.per_mode_contrib[m])
                << "\n";
        write_csv(dir / ("eigen_" + tag + ".csv"), eig.str());
        artifacts.push_back(dir / ("eigen_" + tag + ".csv"));

        std::ostringstream prof;
        prof << "offset_px,delta_f\n";
        for (std::size_t i = 0; i < c.delta_f.center_profile.size(); ++i)
            prof << i << "," << fmt17(c.delta_f.center_profile[i]) << "\n";
        write_csv(dir / ("profile_" + tag + ".csv"), prof.str());
        artifacts.push_back(dir / ("profile_" + tag + ".csv"));

        std::ostringstream ts;
        ts << "case_id,truth,t\n";
        for (std::size_t i = 0; i < c.tstats.t_present.size(); ++i)
            ts << c.case_ids_present[i] << ",present," << fmt17(c.tstats.t_present[i]) << "\n";
        for (std::size_t i = 0; i < c.tstats.t_absent.size(); ++i)
            ts << c.case_ids_absent[i] << ",absent," << fmt17(c.tstats.t_absent[i]) << "\n";
        write_csv(dir / ("tstats_" + tag + ".csv"), ts.str());
        artifacts.push_back(dir / ("tstats_" + tag + ".csv"));
    }

    if (!report.errors.empty()) {
        std::ostringstream err;
        for (const auto& e : report.errors) err << e << "\n";
        write_csv(dir / "errors.log", err.str());
        artifacts.push_back(dir / "errors.log");
    }

    std::ostringstream man;
    man << "# fnv1a64 checksum, file\n";
    for (const fs::path& p : artifacts)
        man << hex16(fnv_file(p)) << "," << p.filename().string() << "\n";
    write_csv(dir / "manifest.txt", man.str());
}

}  // namespace obsbench
