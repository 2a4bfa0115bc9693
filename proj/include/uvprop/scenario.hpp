#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace uvprop {

/// ITU-R P.1410 statistical description of a built-up area.
struct BuiltUpParams {
    double alpha;  ///< fraction of land covered by buildings, (0, 1]
    double beta;   ///< buildings per square kilometer, > 0
    double gamma;  ///< Rayleigh scale of the building-height distribution, m

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

enum class ScenarioPreset { Suburban, Urban, DenseUrban, HighRiseUrban };

BuiltUpParams preset_params(ScenarioPreset preset);

/// Accepts "suburban", "urban", "dense-urban", "high-rise-urban".
ScenarioPreset parse_preset(std::string_view name);
std::string_view preset_name(ScenarioPreset preset);

/// Regular grid of square buildings (side W) separated by streets (width S).
struct GridLayout {
    double building_width;  ///< W, m
    double street_width;    ///< S, m

    double period() const { return building_width + street_width; }
    void validate() const;
};

/// W = 1000*sqrt(alpha/beta), S = 1000/sqrt(beta) - W.
GridLayout derive_grid(const BuiltUpParams& params);

/// Normalized Rayleigh density (h/gamma^2)*exp(-h^2/(2 gamma^2)); 0 for h < 0.
double rayleigh_pdf(double h, double gamma);

/// Inverse-CDF transform: h = gamma*sqrt(-2 ln(1-u)), u in [0, 1).
double rayleigh_from_uniform(double u, double gamma);

/// Per-building heights addressed by (side, block). Side 1 is the facade at
/// y = +S/2, side 2 the one at y = -S/2; block k spans the street-axis
/// interval [k*(W+S), k*(W+S)+W) (before any grid offset).
class HeightSource {
  public:
    virtual ~HeightSource() = default;
    virtual double height(int side, std::int64_t block) const = 0;
};

/// Lazy Rayleigh-distributed heights, a pure hash of (seed, side, block):
/// the same key always yields the bit-identical height, any block index may
/// be queried without materializing arrays.
class HeightField final : public HeightSource {
  public:
    HeightField(double gamma, std::uint64_t seed);

    double height(int side, std::int64_t block) const override;
    double gamma() const { return gamma_; }
    std::uint64_t seed() const { return seed_; }

  private:
    double gamma_;
    std::uint64_t seed_;
};

/// Every building has the same height; used for degenerate and test setups.
class ConstantHeights final : public HeightSource {
  public:
    explicit ConstantHeights(double h) : height_(h) {}
    double height(int, std::int64_t) const override { return height_; }

  private:
    double height_;
};

HeightField sample_heights(const BuiltUpParams& params, std::uint64_t seed);

/// Maximum-likelihood Rayleigh scale, gamma-hat = sqrt(sum h_i^2 / (2n)).
double fit_rayleigh(std::span<const double> heights);

}  // namespace uvprop
