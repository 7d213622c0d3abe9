// obsbench command-line interface: virtual-trial simulation, reconstruction,
// and observer evaluation for emission-tomography denoising studies.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "obsbench/config.hpp"
#include "obsbench/errors.hpp"
#include "obsbench/study.hpp"

namespace {

using namespace obsbench;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool paper_scale = false;
    int threads = -1;
    std::string cell;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "study configuration file");
    cmd->add_option("--out", o.out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", o.seed, "master seed (overrides config)")
        ->each([&](const std::string&) { o.seed_set = true; });
    cmd->add_flag("--paper-scale", o.paper_scale,
                  "full-size protocol: 400 pairs, 128x128x114 grids");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    cmd->add_option("--cell", o.cell,
                    "restrict to one condition: defect=NAME,dose=F,denoiser=NAME");
}

StudyConfig make_config(const CommonOpts& o) {
    StudyConfig cfg = o.config_path.empty() ? StudyConfig{} : load_config(o.config_path);
    if (o.paper_scale) cfg.apply_paper_scale();
    if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
    if (o.seed_set) cfg.master_seed = o.seed;
    if (o.threads >= 0) cfg.n_threads = o.threads;
    cfg.validate();
    return cfg;
}

CellFilter make_filter(const CommonOpts& o) {
    CellFilter f;
    if (o.cell.empty()) return f;
    std::stringstream ss(o.cell);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParameterError("--cell expects key=value pairs, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (key == "defect") f.defect = value;
        else if (key == "dose") f.dose_fraction = std::stod(value);
        else if (key == "denoiser") f.denoiser = value;
        else throw ParameterError("--cell: unknown key '" + key + "'");
    }
    return f;
}

int report_outcome(const StudyReport& report) {
    std::printf("cells completed: %zu, aborted: %zu\n", report.cells.size(),
                report.errors.size());
    for (const auto& e : report.errors) std::fprintf(stderr, "error: %s\n", e.c_str());
    return report.complete() ? 0 : 1;
}

int cmd_report(const StudyConfig& cfg) {
    const auto summary = cfg.output_dir / "summary.csv";
    std::ifstream in(summary);
    if (!in) {
        std::fprintf(stderr, "no summary.csv under %s (run `obsbench run` first)\n",
                     cfg.output_dir.string().c_str());
        return 1;
    }
    std::string line;
    while (std::getline(in, line)) std::puts(line.c_str());

    const auto manifest = cfg.output_dir / "manifest.txt";
    std::ifstream man(manifest);
    if (!man) {
        std::fprintf(stderr, "missing manifest.txt\n");
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"obsbench: virtual clinical trials for emission-tomography denoising"};
    app.require_subcommand(1);

    CommonOpts o;
    bool train_split = false;
    std::string default_config_path;

    CLI::App* run = app.add_subcommand("run", "full study: simulate, reconstruct, evaluate");
    add_common(run, o);
    CLI::App* simulate = app.add_subcommand("simulate", "phantoms and noisy projections only");
    add_common(simulate, o);
    simulate->add_flag("--train", train_split, "process the training split");
    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "reconstruct cached (or fresh) projections");
    add_common(reconstruct, o);
    reconstruct->add_flag("--train", train_split, "process the training split");
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "metrics + observer on cached volumes, emit report");
    add_common(evaluate, o);
    CLI::App* report = app.add_subcommand("report", "print the emitted summary");
    add_common(report, o);
    CLI::App* init = app.add_subcommand("init-config", "write the annotated default config");
    init->add_option("path", default_config_path, "destination file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (init->parsed()) {
            write_default_config(default_config_path);
            std::printf("wrote %s\n", default_config_path.c_str());
            return 0;
        }
        const StudyConfig cfg = make_config(o);
        const CellFilter filter = make_filter(o);

        if (simulate->parsed()) {
            run_simulate(cfg, filter, train_split);
            std::printf("projection cache ready under %s\n",
                        (cfg.output_dir / "cache").string().c_str());
            return 0;
        }
        if (reconstruct->parsed()) {
            run_reconstruct(cfg, filter, train_split);
            std::printf("reconstructed volumes under %s\n",
                        (cfg.output_dir / "volumes").string().c_str());
            return 0;
        }
        if (run->parsed() || evaluate->parsed()) {
            const StudyReport rep = run_study(cfg, filter);
            emit_report(rep, cfg);
            return report_outcome(rep);
        }
        if (report->parsed()) return cmd_report(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "obsbench: %s\n", e.what());
        return 1;
    }
    return 0;
}
