#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "obsbench/grid.hpp"
#include "obsbench/rng.hpp"
#include "obsbench/truncnorm.hpp"

namespace obsbench {

enum class Sex { male, female };

/// Truncated-normal tables for one sex. body_ap and lv_radius are derived
/// from body_lat / lv_length by the fixed ratios, but carry their own
/// truncation bounds which the sampler enforces jointly.
struct AnatomyDistribution {
    TruncNormParams body_lat;
    TruncNormParams body_ap;
    TruncNormParams lv_length;
    TruncNormParams lv_radius;
    TruncNormParams height;
    double lat_ap_ratio = 0.0;      // body_lat / body_ap
    double lv_len_radius_ratio = 0.0;

    void validate() const;
};

struct UptakeDistribution {
    TruncNormParams liver_heart;
    TruncNormParams lung_heart;
    TruncNormParams bg_heart;

    void validate() const;
};

struct PopulationModel {
    AnatomyDistribution male;
    AnatomyDistribution female;
    UptakeDistribution uptake;

    const AnatomyDistribution& anatomy(Sex s) const {
        return s == Sex::male ? male : female;
    }
};

/// Clinical population tables (body dimensions in cm, organ uptake ratios).
PopulationModel default_population();

struct AnatomySample {
    Sex sex = Sex::male;
    double body_lat = 0.0;   // cm
    double body_ap = 0.0;    // cm, = body_lat / lat_ap_ratio(sex)
    double lv_length = 0.0;  // cm, apex-to-base
    double lv_radius = 0.0;  // cm, = lv_length / lv_len_radius_ratio(sex)
    double height = 0.0;     // cm
    double skin_scale = 1.0; // dimensionless in [0.5, 1.5]
};

struct UptakeRatios {
    double liver_heart = 0.0;
    double lung_heart = 0.0;
    double bg_heart = 0.0;
    double heart = 1.0;  // reference activity density, normalized
};

enum class DefectLocation { anterior, inferior };

struct DefectSpec {
    std::string name;
    double contrast_pct = 0.0;  // defect/healthy uptake ratio in percent
    double extent_deg = 0.0;    // full circumferential width
    DefectLocation location = DefectLocation::anterior;

    void validate() const;
};

/// The four standard defect types (contrast %, circumferential extent, wall).
std::array<DefectSpec, 4> standard_defects();
DefectSpec defect_by_name(const std::string& name);

/// One virtual patient: anatomy plus tracer uptake.
struct PhantomSample {
    AnatomySample anatomy;
    UptakeRatios uptake;
};

/// Samples anatomy from the per-sex tables. Derived fields (body_ap,
/// lv_radius) satisfy the fixed ratios exactly and are rejection-sampled
/// jointly so they also respect their own truncation bounds.
AnatomySample sample_anatomy(Sex sex, const AnatomyDistribution& dist, std::uint64_t seed);
AnatomySample sample_anatomy(Sex sex, const AnatomyDistribution& dist, Rng& rng);

UptakeRatios sample_uptake(const UptakeDistribution& dist, std::uint64_t seed);
UptakeRatios sample_uptake(const UptakeDistribution& dist, Rng& rng);

/// Extra knobs of the geometric thorax phantom. Attenuation coefficients are
/// narrow-beam 140 keV values.
struct PhantomOptions {
    double wall_thickness_cm = 1.0;   // LV myocardial wall
    double mu_soft_tissue = 0.154;    // 1/cm
    double mu_lung = 0.04;            // 1/cm
    double skin_thickness_cm = 0.5;   // nominal, scaled by skin_scale
    bool contrast_is_reduction = false;  // if true, defect uptake = (1 - c/100) x healthy
};

/// Voxelizes the geometric thorax: elliptical-cylinder body, paired ellipsoid
/// lungs, ellipsoid liver, and a half-ellipsoid LV myocardial shell at
/// uptake 1 with lung/liver/background regions at their sampled ratios.
/// Returns (activity, attenuation). The LV must fit inside the grid
/// (GeometryError otherwise); the body contour may be cropped by the
/// field of view.
std::pair<Volume3D, Volume3D> build_phantom(const AnatomySample& anatomy,
                                            const UptakeRatios& uptake,
                                            Dims dims, Pitch pitch,
                                            const PhantomOptions& opt = {});

/// Sets myocardial voxels inside the defect sector to
/// (contrast_pct/100) x healthy uptake. The sector is centered on the
/// anterior (+y) or inferior (-y) wall direction, spans extent_deg
/// circumferentially and the central half of the LV length axially.
Volume3D insert_defect(const Volume3D& activity, const AnatomySample& anatomy,
                       const DefectSpec& defect, const PhantomOptions& opt = {});

struct VoxelIndex {
    int x = 0;
    int y = 0;
    int z = 0;
};

/// Centroid of the defect voxels, rounded to the nearest voxel. Used to place
/// the observer ROI; defect-absent cases reuse the same coordinates.
VoxelIndex defect_centroid(const AnatomySample& anatomy, const DefectSpec& defect,
                           Dims dims, Pitch pitch, const PhantomOptions& opt = {});

}  // namespace obsbench
