#include "obsbench/config.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "obsbench/errors.hpp"
#include "obsbench/rng.hpp"

namespace obsbench {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || trim(end) != "")
        throw ParameterError("config: bad number for " + key + ": '" + v + "'");
    return x;
}

long long parse_int(const std::string& v, const std::string& key) {
    char* end = nullptr;
    const long long x = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || trim(end) != "")
        throw ParameterError("config: bad integer for " + key + ": '" + v + "'");
    return x;
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParameterError("config: bad boolean for " + key + ": '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> items;
    std::string cur;
    std::stringstream ss(v);
    while (std::getline(ss, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) items.push_back(cur);
    }
    return items;
}

TruncNormParams parse_truncnorm(const std::string& v, const std::string& key) {
    const auto items = split_list(v);
    if (items.size() != 4)
        throw ParameterError("config: " + key + " needs 'mean, sd, min, max'");
    return {parse_double(items[0], key), parse_double(items[1], key),
            parse_double(items[2], key), parse_double(items[3], key)};
}

std::string truncnorm_text(const TruncNormParams& p) {
    return fmt_double(p.mean) + ", " + fmt_double(p.sd) + ", " + fmt_double(p.min) + ", " +
           fmt_double(p.max);
}

using Entries = std::vector<std::pair<std::string, std::string>>;
using Sections = std::vector<std::pair<std::string, Entries>>;

Sections tokenize(const std::string& text) {
    Sections sections;
    sections.emplace_back("", Entries{});
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParameterError("config line " + std::to_string(lineno) +
                                     ": unterminated section header");
            sections.emplace_back(trim(line.substr(1, line.size() - 2)), Entries{});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config line " + std::to_string(lineno) +
                                 ": expected key = value");
        sections.back().second.emplace_back(trim(line.substr(0, eq)),
                                            trim(line.substr(eq + 1)));
    }
    return sections;
}

void apply_anatomy(AnatomyDistribution& a, const std::string& key, const std::string& v,
                   const std::string& where) {
    if (key == "body_lat") a.body_lat = parse_truncnorm(v, where);
    else if (key == "body_ap") a.body_ap = parse_truncnorm(v, where);
    else if (key == "lv_length") a.lv_length = parse_truncnorm(v, where);
    else if (key == "lv_radius") a.lv_radius = parse_truncnorm(v, where);
    else if (key == "height") a.height = parse_truncnorm(v, where);
    else if (key == "lat_ap_ratio") a.lat_ap_ratio = parse_double(v, where);
    else if (key == "lv_len_radius_ratio") a.lv_len_radius_ratio = parse_double(v, where);
    else throw ParameterError("config: unknown key " + where);
}

DenoiserSpec builtin_denoiser(const std::string& name) {
    DenoiserSpec d;
    d.name = name;
    if (name == "none") {
        d.kind = DenoiserKind::identity;
    } else if (name == "smooth") {
        // strong-smoothing reference preset
        d.kind = DenoiserKind::gaussian;
        d.sigma_cm = 1.0;
    } else {
        throw ParameterError("config: denoiser '" + name +
                             "' is not built in and has no [denoiser." + name + "] section");
    }
    return d;
}

std::string denoiser_kind_name(DenoiserKind k) {
    switch (k) {
        case DenoiserKind::identity: return "identity";
        case DenoiserKind::gaussian: return "gaussian";
        case DenoiserKind::butterworth: return "butterworth";
        case DenoiserKind::external: return "external";
    }
    return "?";
}

}  // namespace

StudyConfig::StudyConfig() {
    const auto std_defects = standard_defects();
    defects.assign(std_defects.begin(), std_defects.end());
    denoisers = {builtin_denoiser("none"), builtin_denoiser("smooth")};
    population = default_population();
}

void StudyConfig::validate() const {
    if (n_test_pairs < 3) throw ParameterError("study: n_test_pairs must be >= 3");
    if (n_train_pairs < 0) throw ParameterError("study: n_train_pairs must be >= 0");
    if (dose_fractions.empty()) throw ParameterError("study: dose_fractions must be non-empty");
    for (double f : dose_fractions)
        if (!(f > 0.0 && f <= 1.0))
            throw ParameterError("study: dose fractions must be in (0, 1]");
    if (defects.empty()) throw ParameterError("study: defect list must be non-empty");
    for (const auto& d : defects) d.validate();
    if (denoisers.empty()) throw ParameterError("study: denoiser list must be non-empty");
    for (const auto& d : denoisers) d.validate();
    if (!(normal_total_counts > 0.0))
        throw ParameterError("study: normal_total_counts must be positive");
    if (grid_dims.nx < 1 || grid_dims.ny < 1 || grid_dims.nz < 1 || !(grid_pitch_cm > 0.0))
        throw ParameterError("grid: dims and pitch must be positive");
    system.validate();
    recon.validate(system.n_views);
    if (butterworth_order < 1 || !(butterworth_cutoff_cm > 0.0))
        throw ParameterError("recon: butterworth parameters invalid");
    if (observer.n_channels < 1 || observer.roi_size < 2)
        throw ParameterError("observer: bad channel/roi parameters");
    if (roc.n_boot < 1 || !(roc.ci_level > 0.0 && roc.ci_level < 1.0))
        throw ParameterError("roc: bad bootstrap parameters");
    population.male.validate();
    population.female.validate();
    population.uptake.validate();
}

void StudyConfig::apply_paper_scale() {
    n_test_pairs = 400;
    grid_dims = {128, 128, 114};
    grid_pitch_cm = 0.44;
    system.nu = 128;
    system.nv = 114;
}

std::string StudyConfig::canonical_text() const {
    std::ostringstream os;
    os << "[study]\n";
    os << "n_test_pairs = " << n_test_pairs << "\n";
    os << "n_train_pairs = " << n_train_pairs << "\n";
    os << "dose_fractions =";
    for (std::size_t i = 0; i < dose_fractions.size(); ++i)
        os << (i ? ", " : " ") << fmt_double(dose_fractions[i]);
    os << "\n";
    os << "master_seed = " << master_seed << "\n";
    os << "normal_total_counts = " << fmt_double(normal_total_counts) << "\n";
    os << "[grid]\n";
    os << "nx = " << grid_dims.nx << "\nny = " << grid_dims.ny << "\nnz = " << grid_dims.nz
       << "\npitch_cm = " << fmt_double(grid_pitch_cm) << "\n";
    os << "[system]\n";
    os << "n_views = " << system.n_views << "\narc_deg = " << fmt_double(system.arc_deg)
       << "\nstart_angle_deg = " << fmt_double(system.start_angle_deg)
       << "\norbit_radius_cm = " << fmt_double(system.orbit_radius_cm)
       << "\nbin_pitch_cm = " << fmt_double(system.bin_pitch_cm) << "\nnu = " << system.nu
       << "\nnv = " << system.nv
       << "\nintrinsic_fwhm_cm = " << fmt_double(system.intrinsic_fwhm_cm)
       << "\nfwhm_at_10cm_cm = " << fmt_double(system.fwhm_at_10cm_cm) << "\n";
    os << "[recon]\n";
    os << "n_iterations = " << recon.n_iterations << "\nn_subsets = " << recon.n_subsets
       << "\nmodel_attenuation = " << (recon.model_attenuation ? "true" : "false")
       << "\nmodel_blur = " << (recon.model_blur ? "true" : "false")
       << "\nepsilon = " << fmt_double(recon.epsilon)
       << "\nbutterworth_order = " << butterworth_order
       << "\nbutterworth_cutoff_cm = " << fmt_double(butterworth_cutoff_cm)
       << "\nbutterworth_squared_gain = " << (butterworth_squared_gain ? "true" : "false")
       << "\n";
    os << "[phantom]\n";
    os << "wall_thickness_cm = " << fmt_double(phantom.wall_thickness_cm)
       << "\nmu_soft_tissue = " << fmt_double(phantom.mu_soft_tissue)
       << "\nmu_lung = " << fmt_double(phantom.mu_lung)
       << "\nskin_thickness_cm = " << fmt_double(phantom.skin_thickness_cm)
       << "\ncontrast_is_reduction = " << (phantom.contrast_is_reduction ? "true" : "false")
       << "\n";
    const std::pair<const char*, const AnatomyDistribution*> pops[] = {
        {"population.male", &population.male}, {"population.female", &population.female}};
    for (const auto& [pop_name, pop] : pops) {
        os << "[" << pop_name << "]\n";
        const AnatomyDistribution& a = *pop;
        os << "body_lat = " << truncnorm_text(a.body_lat) << "\n";
        os << "body_ap = " << truncnorm_text(a.body_ap) << "\n";
        os << "lv_length = " << truncnorm_text(a.lv_length) << "\n";
        os << "lv_radius = " << truncnorm_text(a.lv_radius) << "\n";
        os << "height = " << truncnorm_text(a.height) << "\n";
        os << "lat_ap_ratio = " << fmt_double(a.lat_ap_ratio) << "\n";
        os << "lv_len_radius_ratio = " << fmt_double(a.lv_len_radius_ratio) << "\n";
    }
    os << "[uptake]\n";
    os << "liver_heart = " << truncnorm_text(population.uptake.liver_heart) << "\n";
    os << "lung_heart = " << truncnorm_text(population.uptake.lung_heart) << "\n";
    os << "bg_heart = " << truncnorm_text(population.uptake.bg_heart) << "\n";
    os << "[observer]\n";
    os << "n_channels = " << observer.n_channels << "\nroi_size = " << observer.roi_size
       << "\nchannel_start = " << fmt_double(observer.channel_start)
       << "\nchannel_width = " << fmt_double(observer.channel_width) << "\n";
    os << "[roc]\n";
    os << "n_boot = " << roc.n_boot << "\nci_level = " << fmt_double(roc.ci_level) << "\n";
    os << "defects =";
    for (std::size_t i = 0; i < defects.size(); ++i) {
        const auto& d = defects[i];
        os << (i ? "; " : " ") << d.name << ":" << fmt_double(d.contrast_pct) << ":"
           << fmt_double(d.extent_deg) << ":"
           << (d.location == DefectLocation::anterior ? "anterior" : "inferior");
    }
    os << "\ndenoisers =";
    for (std::size_t i = 0; i < denoisers.size(); ++i) {
        const auto& d = denoisers[i];
        os << (i ? "; " : " ") << d.name << ":" << denoiser_kind_name(d.kind) << ":"
           << fmt_double(d.sigma_cm) << ":" << fmt_double(d.cutoff_cm) << ":" << d.order << ":"
           << d.source_dir.string();
    }
    os << "\n";
    return os.str();
}

std::string StudyConfig::config_hash() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  (unsigned long long)fnv1a64(canonical_text()));
    return buf;
}

std::string StudyConfig::sim_hash() const {
    // Only fields that change simulated projections or reconstructed volumes.
    std::ostringstream os;
    os << master_seed << "|" << fmt_double(normal_total_counts) << "|" << grid_dims.nx << ","
       << grid_dims.ny << "," << grid_dims.nz << "," << fmt_double(grid_pitch_cm) << "|"
       << system.n_views << "," << fmt_double(system.arc_deg) << ","
       << fmt_double(system.start_angle_deg) << "," << fmt_double(system.orbit_radius_cm) << ","
       << fmt_double(system.bin_pitch_cm) << "," << system.nu << "," << system.nv << ","
       << fmt_double(system.intrinsic_fwhm_cm) << "," << fmt_double(system.fwhm_at_10cm_cm)
       << "|" << recon.n_iterations << "," << recon.n_subsets << "," << recon.model_attenuation
       << "," << recon.model_blur << "," << fmt_double(recon.epsilon) << "|"
       << butterworth_order << "," << fmt_double(butterworth_cutoff_cm) << ","
       << butterworth_squared_gain << "|" << fmt_double(phantom.wall_thickness_cm) << ","
       << fmt_double(phantom.mu_soft_tissue) << "," << fmt_double(phantom.mu_lung) << ","
       << fmt_double(phantom.skin_thickness_cm) << "," << phantom.contrast_is_reduction;
    for (const AnatomyDistribution* a : {&population.male, &population.female})
        os << "|" << truncnorm_text(a->body_lat) << ";" << truncnorm_text(a->body_ap) << ";"
           << truncnorm_text(a->lv_length) << ";" << truncnorm_text(a->lv_radius) << ";"
           << truncnorm_text(a->height) << ";" << fmt_double(a->lat_ap_ratio) << ";"
           << fmt_double(a->lv_len_radius_ratio);
    os << "|" << truncnorm_text(population.uptake.liver_heart) << ";"
       << truncnorm_text(population.uptake.lung_heart) << ";"
       << truncnorm_text(population.uptake.bg_heart);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)fnv1a64(os.str()));
    return buf;
}

StudyConfig parse_config(const std::string& text) {
    StudyConfig cfg;
    const Sections sections = tokenize(text);

    std::vector<std::string> defect_names, denoiser_names;
    bool have_defect_list = false, have_denoiser_list = false;

    // defect/denoiser definition sections, applied when the lists resolve
    std::map<std::string, Entries> defect_sections, denoiser_sections;

    for (const auto& [section, entries] : sections) {
        if (section.rfind("defect.", 0) == 0) {
            defect_sections[section.substr(7)] = entries;
            continue;
        }
        if (section.rfind("denoiser.", 0) == 0) {
            denoiser_sections[section.substr(9)] = entries;
            continue;
        }
        for (const auto& [key, value] : entries) {
            const std::string where = section.empty() ? key : section + "." + key;
            if (section == "study") {
                if (key == "n_test_pairs") cfg.n_test_pairs = int(parse_int(value, where));
                else if (key == "n_train_pairs") cfg.n_train_pairs = int(parse_int(value, where));
                else if (key == "dose_fractions") {
                    cfg.dose_fractions.clear();
                    for (const auto& item : split_list(value))
                        cfg.dose_fractions.push_back(parse_double(item, where));
                } else if (key == "defects") {
                    defect_names = split_list(value);
                    have_defect_list = true;
                } else if (key == "denoisers") {
                    denoiser_names = split_list(value);
                    have_denoiser_list = true;
                } else if (key == "master_seed") cfg.master_seed = std::uint64_t(parse_int(value, where));
                else if (key == "normal_total_counts") cfg.normal_total_counts = parse_double(value, where);
                else if (key == "output_dir") cfg.output_dir = value;
                else if (key == "n_threads") cfg.n_threads = int(parse_int(value, where));
                else throw ParameterError("config: unknown key " + where);
            } else if (section == "grid") {
                if (key == "nx") cfg.grid_dims.nx = int(parse_int(value, where));
                else if (key == "ny") cfg.grid_dims.ny = int(parse_int(value, where));
                else if (key == "nz") cfg.grid_dims.nz = int(parse_int(value, where));
                else if (key == "pitch_cm") cfg.grid_pitch_cm = parse_double(value, where);
                else throw ParameterError("config: unknown key " + where);
            } else if (section == "system") {
                if (key == "n_views") cfg.system.n_views = int(parse_int(value, where));
                else if (key == "arc_deg") cfg.system.arc_deg = parse_double(value, where);
                else if (key == "start_angle_deg") cfg.system.start_angle_deg = parse_double(value, where);
                else if (key == "orbit_radius_cm") cfg.system.orbit_radius_cm = parse_double(value, where);
                else if (key == "bin_pitch_cm") cfg.system.bin_pitch_cm = parse_double(value, where);
                else if (key == "nu") cfg.system.nu = int(parse_int(value, where));
                else if (key == "nv") cfg.system.nv = int(parse_int(value, where));
                else if (key == "intrinsic_fwhm_cm") cfg.system.intrinsic_fwhm_cm = parse_double(value, where);
                else if (key == "fwhm_at_10cm_cm") cfg.system.fwhm_at_10cm_cm = parse_double(value, where);
                else throw ParameterError("config: unknown key " + where);
            } else if (section == "recon") {
                if (key == "n_iterations") cfg.recon.n_iterations = int(parse_int(value, where));
                else if (key == "n_subsets") cfg.recon.n_subsets = int(parse_int(value, where));
                else if (key == "model_attenuation") cfg.recon.model_attenuation = parse_bool(value, where);
                else if (key == "model_blur") cfg.recon.model_blur = parse_bool(value, where);
                else if (key == "epsilon") cfg.recon.epsilon = parse_double(value, where);
                else if (key == "butterworth_order") cfg.butterworth_order = int(parse_int(value, where));
                else if (key == "butterworth_cutoff_cm") cfg.butterworth_cutoff_cm = parse_double(value, where);
                else if (key == "butterworth_squared_gain") cfg.butterworth_squared_gain = parse_bool(value, where);
                else throw ParameterError("config: unknown key " + where);
            } else if (section == "observer") {
                if (key == "n_channels") cfg.observer.n_channels = int(parse_int(value, where));
                else if (key == "roi_size") cfg.observer.roi_size = int(parse_int(value, where));
                else if (key == "channel_start") cfg.observer.channel_start = parse_double(value, where);
                else if (key == "channel_width") cfg.observer.channel_width = parse_double(value, where);
                else throw ParameterError("config: unknown key " + where);
            } else if (section == "roc") {
                if (key == "n_boot") cfg.roc.n_boot = int(parse_int(value, where));
                else if (key == "ci_level") cfg.roc.ci_level = parse_double(value, where);
                else throw ParameterError("config: unknown key " + where);
            } else if (section == "phantom") {
                if (key == "wall_thickness_cm") cfg.phantom.wall_thickness_cm = parse_double(value, where);
                else if (key == "mu_soft_tissue") cfg.phantom.mu_soft_tissue = parse_double(value, where);
                else if (key == "mu_lung") cfg.phantom.mu_lung = parse_double(value, where);
                else if (key == "skin_thickness_cm") cfg.phantom.skin_thickness_cm = parse_double(value, where);
                else if (key == "contrast_is_reduction") cfg.phantom.contrast_is_reduction = parse_bool(value, where);
                else throw ParameterError("config: unknown key " + where);
            } else if (section == "population.male") {
                apply_anatomy(cfg.population.male, key, value, where);
            } else if (section == "population.female") {
                apply_anatomy(cfg.population.female, key, value, where);
            } else if (section == "uptake") {
                if (key == "liver_heart") cfg.population.uptake.liver_heart = parse_truncnorm(value, where);
                else if (key == "lung_heart") cfg.population.uptake.lung_heart = parse_truncnorm(value, where);
                else if (key == "bg_heart") cfg.population.uptake.bg_heart = parse_truncnorm(value, where);
                else throw ParameterError("config: unknown key " + where);
            } else if (section.empty()) {
                throw ParameterError("config: key outside any section: " + key);
            } else {
                throw ParameterError("config: unknown section [" + section + "]");
            }
        }
    }

    if (have_defect_list) {
        cfg.defects.clear();
        for (const auto& name : defect_names) {
            DefectSpec d;
            const auto it = defect_sections.find(name);
            if (it == defect_sections.end()) {
                d = defect_by_name(name);
            } else {
                d.name = name;
                // start from the standard spec when the name matches one
                for (const DefectSpec& std_d : standard_defects())
                    if (std_d.name == name) d = std_d;
                for (const auto& [key, value] : it->second) {
                    const std::string where = "defect." + name + "." + key;
                    if (key == "contrast_pct") d.contrast_pct = parse_double(value, where);
                    else if (key == "extent_deg") d.extent_deg = parse_double(value, where);
                    else if (key == "location") {
                        if (value == "anterior") d.location = DefectLocation::anterior;
                        else if (value == "inferior") d.location = DefectLocation::inferior;
                        else throw ParameterError("config: bad location for " + where);
                    } else throw ParameterError("config: unknown key " + where);
                }
            }
            cfg.defects.push_back(d);
        }
    }

    if (have_denoiser_list) {
        cfg.denoisers.clear();
        for (const auto& name : denoiser_names) {
            DenoiserSpec d;
            const auto it = denoiser_sections.find(name);
            if (it == denoiser_sections.end()) {
                d = builtin_denoiser(name);
            } else {
                if (name == "none" || name == "smooth") d = builtin_denoiser(name);
                d.name = name;
                for (const auto& [key, value] : it->second) {
                    const std::string where = "denoiser." + name + "." + key;
                    if (key == "kind") {
                        if (value == "identity") d.kind = DenoiserKind::identity;
                        else if (value == "gaussian") d.kind = DenoiserKind::gaussian;
                        else if (value == "butterworth") d.kind = DenoiserKind::butterworth;
                        else if (value == "external") d.kind = DenoiserKind::external;
                        else throw ParameterError("config: bad kind for " + where);
                    } else if (key == "sigma_cm") d.sigma_cm = parse_double(value, where);
                    else if (key == "cutoff_cm") d.cutoff_cm = parse_double(value, where);
                    else if (key == "order") d.order = int(parse_int(value, where));
                    else if (key == "source_dir") d.source_dir = value;
                    else throw ParameterError("config: unknown key " + where);
                }
            }
            cfg.denoisers.push_back(d);
        }
    }

    cfg.validate();
    return cfg;
}

StudyConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void write_default_config(const std::filesystem::path& path) {
    const StudyConfig cfg;
    std::ofstream out(path);
    if (!out) throw ParameterError("config: cannot write " + path.string());
    out << "# obsbench study configuration.\n"
        << "# Values below are the defaults; edit and pass with --config.\n"
        << "\n"
        << "[study]\n"
        << "n_test_pairs = " << cfg.n_test_pairs << "\n"
        << "n_train_pairs = " << cfg.n_train_pairs << "   # reserved for external denoiser training\n"
        << "dose_fractions = 1.0, 0.20, 0.15, 0.10, 0.05\n"
        << "defects = type1, type2, type3, type4\n"
        << "denoisers = none, smooth   # smooth = gaussian sigma 1.0 cm reference\n"
        << "master_seed = " << cfg.master_seed << "\n"
        << "normal_total_counts = 12000000   # clinical normal-dose projection counts\n"
        << "output_dir = out\n"
        << "n_threads = 0   # 0 = all cores; OBSBENCH_THREADS caps\n"
        << "\n"
        << "[grid]   # reconstruction/phantom grid\n"
        << "nx = 64\nny = 64\nnz = 32\npitch_cm = 0.44\n"
        << "\n"
        << "[system]\n"
        << "n_views = 60          # over the arc below\n"
        << "arc_deg = 180\n"
        << "start_angle_deg = -45   # LPO to RAO\n"
        << "orbit_radius_cm = 25.0\n"
        << "bin_pitch_cm = 0.44\n"
        << "nu = 64\nnv = 32\n"
        << "intrinsic_fwhm_cm = 0.4\n"
        << "fwhm_at_10cm_cm = 0.74\n"
        << "\n"
        << "[recon]\n"
        << "n_iterations = 4\n"
        << "n_subsets = 4\n"
        << "model_attenuation = true\n"
        << "model_blur = true\n"
        << "epsilon = 1e-12\n"
        << "butterworth_order = 5\n"
        << "butterworth_cutoff_cm = 0.4\n"
        << "butterworth_squared_gain = false   # true selects the |H|^2 convention\n"
        << "\n"
        << "[observer]\n"
        << "n_channels = 5\n"
        << "roi_size = 32\n"
        << "channel_start = 0.015625   # 1/64 cycles/pixel\n"
        << "channel_width = 0.015625   # first band width; later bands double\n"
        << "\n"
        << "[roc]\n"
        << "n_boot = 2000\n"
        << "ci_level = 0.95\n"
        << "\n"
        << "[phantom]\n"
        << "wall_thickness_cm = 1.0\n"
        << "mu_soft_tissue = 0.154   # 1/cm at 140 keV\n"
        << "mu_lung = 0.04\n"
        << "skin_thickness_cm = 0.5\n"
        << "contrast_is_reduction = false   # true: defect uptake = (1 - c/100) x healthy\n"
        << "\n"
        << "[population.male]   # mean, sd, min, max (cm)\n"
        << "body_lat = 34.84, 2.15, 29.40, 38.40\n"
        << "body_ap = 25.70, 2.44, 20.00, 31.40\n"
        << "lv_length = 8.31, 0.93, 6.60, 11.60\n"
        << "lv_radius = 2.67, 0.47, 1.90, 4.00\n"
        << "height = 175.68, 6.80, 154.94, 187.96\n"
        << "lat_ap_ratio = 1.36\n"
        << "lv_len_radius_ratio = 3.2\n"
        << "\n"
        << "[population.female]\n"
        << "body_lat = 34.37, 3.25, 26.70, 40.90\n"
        << "body_ap = 23.50, 2.08, 19.60, 28.80\n"
        << "lv_length = 7.39, 0.92, 5.70, 10.50\n"
        << "lv_radius = 2.32, 0.33, 1.60, 3.50\n"
        << "height = 163.45, 7.34, 149.86, 177.80\n"
        << "lat_ap_ratio = 1.47\n"
        << "lv_len_radius_ratio = 3.17\n"
        << "\n"
        << "[uptake]   # organ/heart activity ratios: mean, sd, min, max\n"
        << "liver_heart = 0.44, 0.19, 0.16, 1.30\n"
        << "lung_heart = 0.14, 0.04, 0.05, 0.25\n"
        << "bg_heart = 0.11, 0.05, 0.02, 0.29\n"
        << "\n"
        << "# Custom defects/denoisers:\n"
        << "# [defect.mydefect]\n"
        << "# contrast_pct = 40\n"
        << "# extent_deg = 60\n"
        << "# location = anterior\n"
        << "#\n"
        << "# [denoiser.cnn]\n"
        << "# kind = external\n"
        << "# source_dir = out/denoised_cnn   # expects <case_id>.vol files\n";
}

}  // namespace obsbench
