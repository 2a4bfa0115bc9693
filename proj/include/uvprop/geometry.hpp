#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "uvprop/scenario.hpp"

namespace uvprop {

/// One UAV-to-vehicle link. The street axis is x; the vehicle sits at
/// (vehicle_x, 0, vehicle_height) and the UAV at (vehicle_x + D, 0, H), both
/// on the street centerline so each facade is laterally S/2 away. The
/// building pattern is anchored at x = grid_offset.
struct LinkGeometry {
    double horizontal_distance;  ///< D >= 0, m
    double uav_altitude;         ///< H, m; must exceed vehicle_height
    double vehicle_height;       ///< h_v > 0, m
    GridLayout layout;
    double vehicle_x = 0.0;
    double grid_offset = 0.0;

    void validate() const;
};

double los_distance(const LinkGeometry& g);
double ground_reflection_length(const LinkGeometry& g);

/// Same for both sides since the path unfolds to a lateral offset of S.
double wall_reflection_length(const LinkGeometry& g);

/// H_c = 2*h_p - h_v; a wall reflection exists while H <= H_c.
double critical_altitude(double reflector_height, double vehicle_height);

/// Street-axis coordinate of the potential specular point: x_v + D/2.
double reflection_midpoint(const LinkGeometry& g);

struct FacadeHit {
    bool on_facade;      ///< x falls on a building rather than a gap
    std::int64_t block;  ///< enclosing/preceding block index
};

/// Pattern anchored at 0: block k covers [k*(W+S), k*(W+S)+W), closed on the
/// left and open on the right.
FacadeHit facade_hit_test(double x, const GridLayout& layout);

struct SideProfile {
    int side = 0;
    bool on_facade = false;
    std::optional<double> reflector_height;  ///< h_p, set when on_facade
    std::optional<double> critical_alt;      ///< 2*h_p - h_v, set when on_facade
    bool wall_reflection = false;            ///< on_facade && H <= critical_alt
};

struct MultipathBreakdown {
    double d_los = 0;
    double d_ref_g = 0;
    double d_ref_b = 0;
    int num_wr = 0;  ///< 0, 1 or 2
    std::array<SideProfile, 2> sides{};
};

MultipathBreakdown analyze_link(const LinkGeometry& g, const HeightSource& heights);

}  // namespace uvprop
