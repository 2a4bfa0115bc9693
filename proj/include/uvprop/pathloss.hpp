#pragma once

#include <cstdint>
#include <vector>

#include "uvprop/geometry.hpp"
#include "uvprop/kernels.hpp"

namespace uvprop {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

struct RadioConfig {
    double frequency_hz;
    double gamma_b = 1.0;  ///< wall reflection coefficient, [0, 1]
    double gamma_g = 1.0;  ///< ground reflection coefficient, [0, 1]

    double wavelength() const { return kSpeedOfLight / frequency_hz; }
    void validate() const;
};

struct PathLossSample {
    double horizontal_distance;  ///< D, m
    double uav_altitude;         ///< H, m
    double pl_db;
    int num_wr;
    double d_los;
    double d_ref_g;
    double d_ref_b;
    double dphi_g;  ///< radians, <= 0
    double dphi_b;  ///< radians, <= 0
    bool clipped;   ///< deep-null floor applied
};

/// (2*pi/lambda)*(d_los - d_ref); requires d_ref >= d_los.
double phase_difference(double d_los, double d_ref, double wavelength);

/// 20*log10(4*pi*d/lambda); requires d > 0.
double fspl(double d, double wavelength);

PathLossSample path_loss_bu(const LinkGeometry& g, const HeightSource& heights,
                            const RadioConfig& radio);

/// Inclusive arithmetic range from + i*step, i = 0 .. count()-1.
struct SweepRange {
    double from;
    double to;
    double step;

    std::size_t count() const;
    double at(std::size_t i) const { return from + static_cast<double>(i) * step; }
    void validate() const;
};

/// Fixed part of a sweep: grid, vehicle placement and pattern phase.
struct SweepScene {
    GridLayout layout;
    double vehicle_height;
    double vehicle_x = 0.0;
    double grid_offset = 0.0;
};

std::vector<PathLossSample> sweep_horizontal(const SweepRange& d_range, double uav_altitude,
                                             const SweepScene& scene, const HeightSource& heights,
                                             const RadioConfig& radio);

std::vector<PathLossSample> sweep_vertical(const SweepRange& h_range, double horizontal_distance,
                                           const SweepScene& scene, const HeightSource& heights,
                                           const RadioConfig& radio);

}  // namespace uvprop
