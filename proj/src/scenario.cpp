#include "uvprop/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uvprop {

namespace {

// Finalizer of splitmix64; a full-period 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kSideSalt[2] = {0x8f0c1b2a3d4e5f60ULL, 0x1d872b41c3a5e906ULL};

}  // namespace

void BuiltUpParams::validate() const {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw std::invalid_argument("alpha: must be in (0, 1], got " + std::to_string(alpha));
    if (!(beta > 0.0))
        throw std::invalid_argument("beta: must be > 0, got " + std::to_string(beta));
    if (!(gamma > 0.0))
        throw std::invalid_argument("gamma: must be > 0, got " + std::to_string(gamma));
}

BuiltUpParams preset_params(ScenarioPreset preset) {
    switch (preset) {
        case ScenarioPreset::Suburban: return {0.1, 750.0, 8.0};
        case ScenarioPreset::Urban: return {0.3, 500.0, 15.0};
        case ScenarioPreset::DenseUrban: return {0.5, 300.0, 20.0};
        case ScenarioPreset::HighRiseUrban: return {0.5, 300.0, 50.0};
    }
    throw std::invalid_argument("scenario: unknown preset");
}

ScenarioPreset parse_preset(std::string_view name) {
    if (name == "suburban") return ScenarioPreset::Suburban;
    if (name == "urban") return ScenarioPreset::Urban;
    if (name == "dense-urban") return ScenarioPreset::DenseUrban;
    if (name == "high-rise-urban") return ScenarioPreset::HighRiseUrban;
    throw std::invalid_argument(
        "scenario: expected suburban|urban|dense-urban|high-rise-urban, got \"" +
        std::string(name) + "\"");
}

std::string_view preset_name(ScenarioPreset preset) {
    switch (preset) {
        case ScenarioPreset::Suburban: return "suburban";
        case ScenarioPreset::Urban: return "urban";
        case ScenarioPreset::DenseUrban: return "dense-urban";
        case ScenarioPreset::HighRiseUrban: return "high-rise-urban";
    }
    return "?";
}

void GridLayout::validate() const {
    if (!(building_width > 0.0))
        throw std::invalid_argument("W: building width must be > 0, got " +
                                    std::to_string(building_width));
    if (!(street_width >= 0.0))
        throw std::invalid_argument("S: street width must be >= 0, got " +
                                    std::to_string(street_width));
}

GridLayout derive_grid(const BuiltUpParams& params) {
    params.validate();
    const double w = 1000.0 * std::sqrt(params.alpha / params.beta);
    const double s = 1000.0 / std::sqrt(params.beta) - w;
    // alpha <= 1 guarantees s >= 0 up to rounding; clamp the dust.
    return {w, s < 0.0 ? 0.0 : s};
}

double rayleigh_pdf(double h, double gamma) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("gamma: must be > 0, got " + std::to_string(gamma));
    if (h < 0.0) return 0.0;
    const double q = h / gamma;
    return q / gamma * std::exp(-0.5 * q * q);
}

double rayleigh_from_uniform(double u, double gamma) {
    return gamma * std::sqrt(-2.0 * std::log1p(-u));
}

HeightField::HeightField(double gamma, std::uint64_t seed) : gamma_(gamma), seed_(seed) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("gamma: must be > 0, got " + std::to_string(gamma));
}

double HeightField::height(int side, std::int64_t block) const {
    if (side != 1 && side != 2) throw std::invalid_argument("side: must be 1 or 2");
    std::uint64_t key = mix64(seed_ ^ kSideSalt[side - 1]);
    key = mix64(key ^ static_cast<std::uint64_t>(block));
    // 53-bit uniform offset to the bin center: u in (0,1), so heights stay
    // strictly positive and finite.
    const double u = (static_cast<double>(key >> 11) + 0.5) * 0x1.0p-53;
    return rayleigh_from_uniform(u, gamma_);
}

HeightField sample_heights(const BuiltUpParams& params, std::uint64_t seed) {
    params.validate();
    return HeightField(params.gamma, seed);
}

double fit_rayleigh(std::span<const double> heights) {
    if (heights.empty()) throw std::invalid_argument("heights: empty sample");
    double sum_sq = 0.0;
    for (double h : heights) {
        if (h < 0.0) throw std::invalid_argument("heights: negative value " + std::to_string(h));
        sum_sq += h * h;
    }
    return std::sqrt(sum_sq / (2.0 * static_cast<double>(heights.size())));
}

}  // namespace uvprop
