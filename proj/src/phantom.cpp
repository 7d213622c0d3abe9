#include "obsbench/phantom.hpp"

#include <cmath>
#include <string>

#include "obsbench/errors.hpp"

namespace obsbench {

namespace {

constexpr int kMaxRejectionTries = 100000;

/// LV half-ellipsoid shell centered on the isocenter: base disc at
/// z = +lv_length/2, apex at z = -lv_length/2, outer short-axis radius
/// lv_radius, wall of fixed thickness grown inward.
struct LvGeometry {
    double r_out;
    double l_out;
    double r_in;
    double l_in;
    double z_base;

    LvGeometry(const AnatomySample& a, const PhantomOptions& opt)
        : r_out(a.lv_radius),
          l_out(a.lv_length),
          r_in(std::max(a.lv_radius - opt.wall_thickness_cm, 0.05)),
          l_in(std::max(a.lv_length - opt.wall_thickness_cm, 0.05)),
          z_base(0.5 * a.lv_length) {}

    bool inside_outer(double x, double y, double z) const {
        if (z > z_base) return false;
        const double rho2 = x * x + y * y;
        const double zz = (z - z_base) / l_out;
        return rho2 / (r_out * r_out) + zz * zz <= 1.0;
    }
    bool inside_cavity(double x, double y, double z) const {
        if (z > z_base) return false;
        const double rho2 = x * x + y * y;
        const double zz = (z - z_base) / l_in;
        return rho2 / (r_in * r_in) + zz * zz < 1.0;
    }
    bool in_wall(double x, double y, double z) const {
        return inside_outer(x, y, z) && !inside_cavity(x, y, z);
    }
};

/// Defect sector test: circumferential wedge about the LV long axis plus the
/// central half of the LV length.
struct DefectGeometry {
    double center_angle;  // radians, atan2 convention
    double half_extent;   // radians
    double half_span_z;   // cm

    DefectGeometry(const AnatomySample& a, const DefectSpec& d) {
        center_angle = d.location == DefectLocation::anterior ? 0.5 * M_PI : -0.5 * M_PI;
        half_extent = 0.5 * d.extent_deg * M_PI / 180.0;
        half_span_z = 0.25 * a.lv_length;
    }

    bool inside(double x, double y, double z) const {
        if (std::fabs(z) > half_span_z) return false;
        const double phi = std::atan2(y, x);
        double delta = std::fabs(phi - center_angle);
        if (delta > M_PI) delta = 2.0 * M_PI - delta;
        return delta <= half_extent;
    }
};

struct Ellipsoid {
    double cx, cy, cz;
    double ax, ay, az;

    bool inside(double x, double y, double z) const {
        const double u = (x - cx) / ax;
        const double v = (y - cy) / ay;
        const double w = (z - cz) / az;
        return u * u + v * v + w * w <= 1.0;
    }
};

/// Organ layout derived from one anatomy sample. The heart sits at the
/// isocenter (as in a cardiac acquisition); the body ellipse is offset so the
/// heart lands left-anterior in the chest, and may be cropped by the grid.
struct ThoraxLayout {
    double body_cx, body_cy;  // body ellipse center
    double body_ax, body_ay;  // semi-axes including the skin layer
    Ellipsoid lung_left, lung_right, liver;
    LvGeometry lv;

    ThoraxLayout(const AnatomySample& a, const PhantomOptions& opt) : lv(a, opt) {
        const double half_lat = 0.5 * a.body_lat;
        const double half_ap = 0.5 * a.body_ap;
        body_cx = -0.30 * half_lat;
        body_cy = -0.15 * half_ap;
        const double skin = (a.skin_scale - 1.0) * opt.skin_thickness_cm;
        body_ax = half_lat + skin;
        body_ay = half_ap + skin;

        const double apex_z = -0.5 * a.lv_length;
        lung_left = {body_cx + 0.45 * half_lat, body_cy - 0.10 * half_ap, 0.0,
                     0.30 * half_lat, 0.50 * half_ap, 12.0};
        lung_right = {body_cx - 0.45 * half_lat, body_cy - 0.10 * half_ap, 0.0,
                      0.30 * half_lat, 0.50 * half_ap, 12.0};
        liver = {body_cx - 0.30 * half_lat, body_cy + 0.05 * half_ap, apex_z - 3.0,
                 0.32 * half_lat, 0.45 * half_ap, 5.0};
    }

    bool inside_body(double x, double y) const {
        const double u = (x - body_cx) / body_ax;
        const double v = (y - body_cy) / body_ay;
        return u * u + v * v <= 1.0;
    }
};

void require_lv_in_grid(const AnatomySample& a, Dims dims, Pitch pitch) {
    const double half_x = 0.5 * dims.nx * pitch.dx;
    const double half_y = 0.5 * dims.ny * pitch.dy;
    const double half_z = 0.5 * dims.nz * pitch.dz;
    if (a.lv_radius > half_x || a.lv_radius > half_y || 0.5 * a.lv_length > half_z)
        throw GeometryError("LV does not fit inside the field of view (lv_radius " +
                            std::to_string(a.lv_radius) + " cm, lv_length " +
                            std::to_string(a.lv_length) + " cm)");
}

}  // namespace

void AnatomyDistribution::validate() const {
    body_lat.validate("body_lat");
    body_ap.validate("body_ap");
    lv_length.validate("lv_length");
    lv_radius.validate("lv_radius");
    height.validate("height");
    if (!(lat_ap_ratio > 0.0) || !(lv_len_radius_ratio > 0.0))
        throw ParameterError("anatomy ratios must be positive");
}

void UptakeDistribution::validate() const {
    liver_heart.validate("liver_heart");
    lung_heart.validate("lung_heart");
    bg_heart.validate("bg_heart");
}

void DefectSpec::validate() const {
    if (!(contrast_pct > 0.0 && contrast_pct <= 100.0))
        throw ParameterError("defect contrast_pct must be in (0, 100]");
    if (!(extent_deg > 0.0 && extent_deg < 360.0))
        throw ParameterError("defect extent_deg must be in (0, 360)");
}

PopulationModel default_population() {
    PopulationModel pop;
    pop.male.body_lat = {34.84, 2.15, 29.40, 38.40};
    pop.male.body_ap = {25.70, 2.44, 20.00, 31.40};
    pop.male.lv_length = {8.31, 0.93, 6.60, 11.60};
    pop.male.lv_radius = {2.67, 0.47, 1.90, 4.00};
    pop.male.height = {175.68, 6.80, 154.94, 187.96};
    pop.male.lat_ap_ratio = 1.36;
    pop.male.lv_len_radius_ratio = 3.2;

    pop.female.body_lat = {34.37, 3.25, 26.70, 40.90};
    pop.female.body_ap = {23.50, 2.08, 19.60, 28.80};
    pop.female.lv_length = {7.39, 0.92, 5.70, 10.50};
    pop.female.lv_radius = {2.32, 0.33, 1.60, 3.50};
    pop.female.height = {163.45, 7.34, 149.86, 177.80};
    pop.female.lat_ap_ratio = 1.47;
    pop.female.lv_len_radius_ratio = 3.17;

    pop.uptake.liver_heart = {0.44, 0.19, 0.16, 1.30};
    pop.uptake.lung_heart = {0.14, 0.04, 0.05, 0.25};
    pop.uptake.bg_heart = {0.11, 0.05, 0.02, 0.29};
    return pop;
}

std::array<DefectSpec, 4> standard_defects() {
    return {DefectSpec{"type1", 50.0, 120.0, DefectLocation::anterior},
            DefectSpec{"type2", 25.0, 90.0, DefectLocation::anterior},
            DefectSpec{"type3", 50.0, 120.0, DefectLocation::inferior},
            DefectSpec{"type4", 25.0, 90.0, DefectLocation::inferior}};
}

DefectSpec defect_by_name(const std::string& name) {
    for (const DefectSpec& d : standard_defects())
        if (d.name == name) return d;
    throw ParameterError("unknown defect type: " + name);
}

AnatomySample sample_anatomy(Sex sex, const AnatomyDistribution& dist, std::uint64_t seed) {
    Rng rng = Rng::derive(seed, {fnv1a64("anatomy")});
    return sample_anatomy(sex, dist, rng);
}

AnatomySample sample_anatomy(Sex sex, const AnatomyDistribution& dist, Rng& rng) {
    dist.validate();
    AnatomySample s;
    s.sex = sex;

    // Joint rejection: the derived value must also respect its own bounds.
    int tries = 0;
    for (;;) {
        s.body_lat = sample_truncnorm(dist.body_lat, rng);
        s.body_ap = s.body_lat / dist.lat_ap_ratio;
        if (s.body_ap >= dist.body_ap.min && s.body_ap <= dist.body_ap.max) break;
        if (++tries > kMaxRejectionTries)
            throw ParameterError("body_lat/body_ap tables admit no joint sample");
    }
    tries = 0;
    for (;;) {
        s.lv_length = sample_truncnorm(dist.lv_length, rng);
        s.lv_radius = s.lv_length / dist.lv_len_radius_ratio;
        if (s.lv_radius >= dist.lv_radius.min && s.lv_radius <= dist.lv_radius.max) break;
        if (++tries > kMaxRejectionTries)
            throw ParameterError("lv_length/lv_radius tables admit no joint sample");
    }
    s.height = sample_truncnorm(dist.height, rng);
    s.skin_scale = 0.5 + rng.next_double();  // uniform on [0.5, 1.5)
    return s;
}

UptakeRatios sample_uptake(const UptakeDistribution& dist, std::uint64_t seed) {
    Rng rng = Rng::derive(seed, {fnv1a64("uptake")});
    return sample_uptake(dist, rng);
}

UptakeRatios sample_uptake(const UptakeDistribution& dist, Rng& rng) {
    dist.validate();
    UptakeRatios u;
    u.liver_heart = sample_truncnorm(dist.liver_heart, rng);
    u.lung_heart = sample_truncnorm(dist.lung_heart, rng);
    u.bg_heart = sample_truncnorm(dist.bg_heart, rng);
    u.heart = 1.0;
    return u;
}

std::pair<Volume3D, Volume3D> build_phantom(const AnatomySample& anatomy,
                                            const UptakeRatios& uptake,
                                            Dims dims, Pitch pitch,
                                            const PhantomOptions& opt) {
    if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0)
        throw ParameterError("build_phantom: dims must be positive");
    if (pitch.dx <= 0.0 || pitch.dy <= 0.0 || pitch.dz <= 0.0)
        throw ParameterError("build_phantom: pitch must be positive");
    require_lv_in_grid(anatomy, dims, pitch);

    const ThoraxLayout layout(anatomy, opt);
    Volume3D activity(dims, pitch);
    Volume3D attenuation(dims, pitch);

    for (int iz = 0; iz < dims.nz; ++iz) {
        const double z = activity.z_of(iz);
        for (int iy = 0; iy < dims.ny; ++iy) {
            const double y = activity.y_of(iy);
            for (int ix = 0; ix < dims.nx; ++ix) {
                const double x = activity.x_of(ix);
                double act = 0.0;
                double mu = 0.0;
                if (layout.lv.in_wall(x, y, z)) {
                    act = uptake.heart;
                    mu = opt.mu_soft_tissue;
                } else if (layout.lv.inside_cavity(x, y, z)) {
                    act = uptake.bg_heart;
                    mu = opt.mu_soft_tissue;
                } else if (layout.liver.inside(x, y, z) && layout.inside_body(x, y)) {
                    act = uptake.liver_heart;
                    mu = opt.mu_soft_tissue;
                } else if ((layout.lung_left.inside(x, y, z) ||
                            layout.lung_right.inside(x, y, z)) &&
                           layout.inside_body(x, y)) {
                    act = uptake.lung_heart;
                    mu = opt.mu_lung;
                } else if (layout.inside_body(x, y)) {
                    act = uptake.bg_heart;
                    mu = opt.mu_soft_tissue;
                }
                const std::size_t i = activity.index(ix, iy, iz);
                activity.data[i] = act;
                attenuation.data[i] = mu;
            }
        }
    }
    return {std::move(activity), std::move(attenuation)};
}

Volume3D insert_defect(const Volume3D& activity, const AnatomySample& anatomy,
                       const DefectSpec& defect, const PhantomOptions& opt) {
    defect.validate();
    const LvGeometry lv(anatomy, opt);
    const DefectGeometry sector(anatomy, defect);
    const double healthy = 1.0;
    const double value = opt.contrast_is_reduction
                             ? (1.0 - defect.contrast_pct / 100.0) * healthy
                             : (defect.contrast_pct / 100.0) * healthy;

    Volume3D out = activity;
    for (int iz = 0; iz < out.dims.nz; ++iz) {
        const double z = out.z_of(iz);
        if (std::fabs(z) > sector.half_span_z) continue;
        for (int iy = 0; iy < out.dims.ny; ++iy) {
            const double y = out.y_of(iy);
            for (int ix = 0; ix < out.dims.nx; ++ix) {
                const double x = out.x_of(ix);
                if (lv.in_wall(x, y, z) && sector.inside(x, y, z))
                    out.at(ix, iy, iz) = value;
            }
        }
    }
    return out;
}

VoxelIndex defect_centroid(const AnatomySample& anatomy, const DefectSpec& defect,
                           Dims dims, Pitch pitch, const PhantomOptions& opt) {
    defect.validate();
    require_lv_in_grid(anatomy, dims, pitch);
    const LvGeometry lv(anatomy, opt);
    const DefectGeometry sector(anatomy, defect);
    const Volume3D probe(dims, pitch);  // for coordinate helpers only

    double sx = 0.0, sy = 0.0, sz = 0.0;
    long n = 0;
    for (int iz = 0; iz < dims.nz; ++iz) {
        const double z = probe.z_of(iz);
        for (int iy = 0; iy < dims.ny; ++iy) {
            const double y = probe.y_of(iy);
            for (int ix = 0; ix < dims.nx; ++ix) {
                const double x = probe.x_of(ix);
                if (lv.in_wall(x, y, z) && sector.inside(x, y, z)) {
                    sx += ix;
                    sy += iy;
                    sz += iz;
                    ++n;
                }
            }
        }
    }
    if (n == 0) throw GeometryError("defect sector contains no voxels");
    return {int(std::llround(sx / n)), int(std::llround(sy / n)), int(std::llround(sz / n))};
}

}  // namespace obsbench
