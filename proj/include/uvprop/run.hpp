#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uvprop/kernels.hpp"
#include "uvprop/pathloss.hpp"
#include "uvprop/stats.hpp"

namespace uvprop::run {

/// Resolved options shared by every command. Scenario parameters may come
/// from a preset, from explicit alpha/beta/gamma, or from an explicit
/// W/S pair; explicit values win over the preset field by field.
struct RunConfig {
    std::optional<ScenarioPreset> preset;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<double> gamma;
    std::optional<double> grid_w;  ///< explicit building width, m
    std::optional<double> grid_s;  ///< explicit street width, m

    double frequency_hz = 4e9;
    double vehicle_height = 1.5;
    double gamma_b = 1.0;
    double gamma_g = 1.0;
    std::uint64_t seed = 1;
    double grid_offset = 0.0;
    kernels::Backend backend = kernels::Backend::Auto;

    /// Throw std::invalid_argument naming the missing/offending key.
    GridLayout resolve_layout() const;
    double resolve_gamma() const;
    RadioConfig radio() const;
    std::string scenario_label() const;
};

struct HSweepArgs {
    double d_from = 0.0;
    double d_to = 100.0;
    double step = 0.1;
    double altitude = 50.0;
};

struct VSweepArgs {
    double h_from = 5.0;
    double h_to = 150.0;
    double step = 0.1;
    double distance = 50.0;
};

struct CompareArgs {
    std::vector<std::string> scenarios;
    int seeds = 100;
    double d_from = 0.0;
    double d_to = 100.0;
    double step = 0.1;
    double altitude = 50.0;
};

struct ValidateArgs {
    long trials = 10000;
    int stat_seeds = 100;
    double stat_step = 0.1;
};

void cmd_sweep_h(const RunConfig& cfg, const HSweepArgs& args, std::ostream& csv);
void cmd_sweep_v(const RunConfig& cfg, const VSweepArgs& args, std::ostream& csv);
void cmd_compare(const RunConfig& cfg, const CompareArgs& args, std::ostream& ecdf_csv,
                 std::ostream& summary_csv);

/// Returns a process exit status: nonzero on any oracle mismatch.
int cmd_validate(const RunConfig& cfg, const ValidateArgs& args, std::ostream& report);

void cmd_sample_heights(const RunConfig& cfg, std::size_t n, std::ostream& csv,
                        std::ostream& info);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const PathLossSample& s);

/// "%.6g" formatting used for every CSV value.
std::string format_g6(double v);

}  // namespace uvprop::run
