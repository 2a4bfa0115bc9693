#include "uvprop/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uvprop {

// The three path lengths below are written with explicit fma in the exact
// operation order reproduced by the batch kernels, so single-link and batch
// evaluations agree bit-for-bit.

void LinkGeometry::validate() const {
    layout.validate();
    if (!(horizontal_distance >= 0.0))
        throw std::invalid_argument("D: must be >= 0, got " + std::to_string(horizontal_distance));
    if (!(vehicle_height > 0.0))
        throw std::invalid_argument("hv: must be > 0, got " + std::to_string(vehicle_height));
    if (!(uav_altitude > vehicle_height))
        throw std::invalid_argument("H: UAV altitude " + std::to_string(uav_altitude) +
                                    " must exceed vehicle height " + std::to_string(vehicle_height));
}

double los_distance(const LinkGeometry& g) {
    const double dz = g.uav_altitude - g.vehicle_height;
    return std::sqrt(std::fma(g.horizontal_distance, g.horizontal_distance, dz * dz));
}

double ground_reflection_length(const LinkGeometry& g) {
    const double dz = g.uav_altitude + g.vehicle_height;
    return std::sqrt(std::fma(g.horizontal_distance, g.horizontal_distance, dz * dz));
}

double wall_reflection_length(const LinkGeometry& g) {
    const double dz = g.uav_altitude - g.vehicle_height;
    const double s = g.layout.street_width;
    const double lat = std::fma(s, s, dz * dz);
    return std::sqrt(std::fma(g.horizontal_distance, g.horizontal_distance, lat));
}

double critical_altitude(double reflector_height, double vehicle_height) {
    return 2.0 * reflector_height - vehicle_height;
}

double reflection_midpoint(const LinkGeometry& g) {
    return g.vehicle_x + 0.5 * g.horizontal_distance;
}

FacadeHit facade_hit_test(double x, const GridLayout& layout) {
    layout.validate();
    const double period = layout.period();
    const double k = std::floor(x / period);
    const double offset = x - k * period;
    return {offset < layout.building_width, static_cast<std::int64_t>(k)};
}

MultipathBreakdown analyze_link(const LinkGeometry& g, const HeightSource& heights) {
    g.validate();
    MultipathBreakdown mb;
    mb.d_los = los_distance(g);
    mb.d_ref_g = ground_reflection_length(g);
    mb.d_ref_b = wall_reflection_length(g);

    const double x_rel = reflection_midpoint(g) - g.grid_offset;
    const FacadeHit hit = facade_hit_test(x_rel, g.layout);

    mb.num_wr = 0;
    for (int side = 1; side <= 2; ++side) {
        SideProfile& sp = mb.sides[side - 1];
        sp.side = side;
        sp.on_facade = hit.on_facade;
        if (hit.on_facade) {
            const double hp = heights.height(side, hit.block);
            sp.reflector_height = hp;
            const double hc = critical_altitude(hp, g.vehicle_height);
            sp.critical_alt = hc;
            // Equality counts as present: the specular point sits exactly on
            // the roof edge.
            sp.wall_reflection = g.uav_altitude <= hc;
        }
        mb.num_wr += sp.wall_reflection ? 1 : 0;
    }
    return mb;
}

}  // namespace uvprop
