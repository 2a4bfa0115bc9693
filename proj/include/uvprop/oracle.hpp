#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uvprop/geometry.hpp"

namespace uvprop::oracle {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
};

/// Axis-aligned facade rectangle in the plane y = plane_y, spanning
/// [x0, x1) along the street and [0, top] vertically. The right x-edge is
/// open so adjacent blocks never double-count a point, matching
/// facade_hit_test; the roof edge is closed.
struct Panel {
    int side;  ///< 1 -> y = +S/2, 2 -> y = -S/2
    std::int64_t block;
    double x0;
    double x1;
    double plane_y;
    double top;

    bool contains(const Vec3& p) const;
};

struct Scene3D {
    std::vector<Panel> panels;
    double street_width;
};

Scene3D build_scene(const GridLayout& layout, const HeightSource& heights,
                    std::int64_t block_min, std::int64_t block_max, double grid_offset = 0.0);

enum class RayKind { Los, Ground, Wall };

struct RayPath {
    RayKind kind;
    int side = 0;  ///< walls only
    double length = 0;
    std::optional<Vec3> point;  ///< reflection point
};

/// Image method: mirror tx across the panel plane, intersect the segment to
/// rx with the plane, accept the point if the panel contains it. Throws on
/// degenerate geometry (tx or rx in the panel plane).
std::optional<Vec3> find_specular_point(const Vec3& tx, const Vec3& rx, const Panel& panel);

/// Specular point on the infinite ground plane z = 0.
Vec3 ground_specular_point(const Vec3& tx, const Vec3& rx);

/// Direct numerical route: minimize |tx-p| + |p-rx| over the plane y =
/// plane_y by alternating golden-section line searches. Independent of the
/// image construction; used to cross-check it.
Vec3 fermat_search_wall(const Vec3& tx, const Vec3& rx, double plane_y);

/// LOS + ground bounce + every first-order facade reflection whose specular
/// point lies on a panel. Lengths come from the unfolded image geometry.
std::vector<RayPath> trace_link(const Scene3D& scene, const Vec3& tx, const Vec3& rx);

struct VerifyReport {
    bool skipped = false;
    std::string skip_reason;
    bool counts_match = false;
    bool lengths_match = false;
    bool los_clear = false;
    double max_rel_error = 0.0;
    int analytical_wr = 0;
    int traced_wr = 0;

    bool ok() const { return skipped || (counts_match && lengths_match && los_clear); }
};

/// Builds an explicit scene around the link (spanned blocks plus one period
/// of margin on each end) and checks the traced ray set against the
/// closed-form path lengths and wall-reflection count.
VerifyReport verify_against_analytical(const LinkGeometry& g, const HeightSource& heights);

}  // namespace uvprop::oracle
