#include "uvprop/pathloss.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kernels/kernel_math.hpp"

namespace uvprop {

void RadioConfig::validate() const {
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("freq-hz: must be > 0, got " + std::to_string(frequency_hz));
    if (!(gamma_b >= 0.0 && gamma_b <= 1.0))
        throw std::invalid_argument("gamma-b: must be in [0, 1], got " + std::to_string(gamma_b));
    if (!(gamma_g >= 0.0 && gamma_g <= 1.0))
        throw std::invalid_argument("gamma-g: must be in [0, 1], got " + std::to_string(gamma_g));
}

double phase_difference(double d_los, double d_ref, double wavelength) {
    if (!(wavelength > 0.0))
        throw std::invalid_argument("wavelength: must be > 0, got " + std::to_string(wavelength));
    if (d_ref < d_los)
        throw std::invalid_argument("phase_difference: d_ref " + std::to_string(d_ref) +
                                    " < d_los " + std::to_string(d_los));
    const double k = kernels::detail::kTwoPi / wavelength;
    return k * (d_los - d_ref);
}

double fspl(double d, double wavelength) {
    if (!(d > 0.0)) throw std::invalid_argument("fspl: d must be > 0, got " + std::to_string(d));
    if (!(wavelength > 0.0))
        throw std::invalid_argument("wavelength: must be > 0, got " + std::to_string(wavelength));
    const double a = kernels::detail::kFourPi / wavelength;
    return 20.0 * kernels::detail::log10_impl(a * d);
}

namespace {

PathLossSample eval_one(const LinkGeometry& g, int num_wr, const RadioConfig& radio) {
    const double dist[1] = {g.horizontal_distance};
    const double alt[1] = {g.uav_altitude};
    const std::uint8_t wr[1] = {static_cast<std::uint8_t>(num_wr)};
    double d_los[1], d_ref_g[1], d_ref_b[1], dphi_g[1], dphi_b[1], pl_db[1];
    std::uint8_t clipped[1];

    const kernels::FieldParams params{g.vehicle_height, g.layout.street_width, radio.wavelength(),
                                      radio.gamma_g, radio.gamma_b};
    const kernels::FieldBatch batch{dist,    alt,    wr,     d_los,   d_ref_g, d_ref_b,
                                    dphi_g,  dphi_b, pl_db,  clipped};
    kernels::compute_field(params, batch);

    return {g.horizontal_distance, g.uav_altitude, pl_db[0], num_wr, d_los[0], d_ref_g[0],
            d_ref_b[0], dphi_g[0], dphi_b[0], clipped[0] != 0};
}

}  // namespace

PathLossSample path_loss_bu(const LinkGeometry& g, const HeightSource& heights,
                            const RadioConfig& radio) {
    radio.validate();
    const MultipathBreakdown mb = analyze_link(g, heights);
    if (!(mb.d_los > 0.0)) throw std::invalid_argument("path_loss_bu: degenerate link, d_los = 0");
    return eval_one(g, mb.num_wr, radio);
}

void SweepRange::validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("step: must be > 0, got " + std::to_string(step));
    if (!(to >= from))
        throw std::invalid_argument("range: to " + std::to_string(to) + " < from " +
                                    std::to_string(from));
    if ((to - from) / step > 5e8) throw std::invalid_argument("range: too many sweep points");
}

std::size_t SweepRange::count() const {
    validate();
    return static_cast<std::size_t>(std::floor((to - from) / step + 1e-6)) + 1;
}

namespace {

std::vector<PathLossSample> run_sweep(const SweepRange& range, bool horizontal, double fixed,
                                      const SweepScene& scene, const HeightSource& heights,
                                      const RadioConfig& radio) {
    radio.validate();
    const std::size_t n = range.count();

    std::vector<double> dist(n), alt(n);
    std::vector<std::uint8_t> num_wr(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = range.at(i);
        dist[i] = horizontal ? v : fixed;
        alt[i] = horizontal ? fixed : v;
        LinkGeometry g{dist[i], alt[i], scene.vehicle_height, scene.layout, scene.vehicle_x,
                       scene.grid_offset};
        num_wr[i] = static_cast<std::uint8_t>(analyze_link(g, heights).num_wr);
    }

    std::vector<double> d_los(n), d_ref_g(n), d_ref_b(n), dphi_g(n), dphi_b(n), pl_db(n);
    std::vector<std::uint8_t> clipped(n);
    const kernels::FieldParams params{scene.vehicle_height, scene.layout.street_width,
                                      radio.wavelength(), radio.gamma_g, radio.gamma_b};
    const kernels::FieldBatch batch{dist,   alt,    num_wr, d_los,  d_ref_g, d_ref_b,
                                    dphi_g, dphi_b, pl_db,  clipped};
    kernels::compute_field(params, batch);

    std::vector<PathLossSample> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = {dist[i],    alt[i],    pl_db[i],  static_cast<int>(num_wr[i]),
                  d_los[i],   d_ref_g[i], d_ref_b[i], dphi_g[i],
                  dphi_b[i],  clipped[i] != 0};
    }
    return out;
}

}  // namespace

std::vector<PathLossSample> sweep_horizontal(const SweepRange& d_range, double uav_altitude,
                                             const SweepScene& scene, const HeightSource& heights,
                                             const RadioConfig& radio) {
    d_range.validate();
    if (!(d_range.from >= 0.0))
        throw std::invalid_argument("d-min: must be >= 0, got " + std::to_string(d_range.from));
    return run_sweep(d_range, true, uav_altitude, scene, heights, radio);
}

std::vector<PathLossSample> sweep_vertical(const SweepRange& h_range, double horizontal_distance,
                                           const SweepScene& scene, const HeightSource& heights,
                                           const RadioConfig& radio) {
    h_range.validate();
    if (!(h_range.from > scene.vehicle_height))
        throw std::invalid_argument("h-min: must exceed the vehicle height " +
                                    std::to_string(scene.vehicle_height));
    return run_sweep(h_range, false, horizontal_distance, scene, heights, radio);
}

}  // namespace uvprop
