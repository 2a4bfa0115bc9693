#include "uvprop/run.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "uvprop/oracle.hpp"

namespace uvprop::run {

namespace {

// Fixed constants of the large-scale statistical check run by `validate`;
// only the grid dimensions and sampling step are caller-supplied.
constexpr double kStatGamma = 87.3;
constexpr double kStatAltitude = 200.0;
constexpr double kStatVehicleHeight = 1.5;
constexpr double kStatFrequency = 4e9;
constexpr double kStatDMax = 225.0;

}  // namespace

std::string format_g6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

GridLayout RunConfig::resolve_layout() const {
    if (grid_w || grid_s) {
        if (!(grid_w && grid_s))
            throw std::invalid_argument("w/s: both --w and --s must be given together");
        GridLayout layout{*grid_w, *grid_s};
        layout.validate();
        return layout;
    }
    if (!preset && !(alpha && beta))
        throw std::invalid_argument(
            "scenario: no grid source; give --scenario, --alpha with --beta, or --w with --s");
    BuiltUpParams params{0.0, 0.0, 1.0};
    if (preset) params = preset_params(*preset);
    if (alpha) params.alpha = *alpha;
    if (beta) params.beta = *beta;
    if (gamma) params.gamma = *gamma;
    return derive_grid(params);
}

double RunConfig::resolve_gamma() const {
    if (gamma) {
        if (!(*gamma > 0.0))
            throw std::invalid_argument("gamma: must be > 0, got " + std::to_string(*gamma));
        return *gamma;
    }
    if (preset) return preset_params(*preset).gamma;
    throw std::invalid_argument("gamma: not set; give --scenario or --gamma");
}

RadioConfig RunConfig::radio() const {
    RadioConfig rc{frequency_hz, gamma_b, gamma_g};
    rc.validate();
    return rc;
}

std::string RunConfig::scenario_label() const {
    if (preset) return std::string(preset_name(*preset));
    if (grid_w && grid_s) return "custom-grid";
    return "custom";
}

void write_csv_header(std::ostream& os) {
    os << "D,H,d_los,d_ref_g,d_ref_b,num_wr,dphi_g_rad,dphi_b_rad,pl_db,clipped\n";
}

void write_csv_row(std::ostream& os, const PathLossSample& s) {
    os << format_g6(s.horizontal_distance) << ',' << format_g6(s.uav_altitude) << ','
       << format_g6(s.d_los) << ',' << format_g6(s.d_ref_g) << ',' << format_g6(s.d_ref_b) << ','
       << s.num_wr << ',' << format_g6(s.dphi_g) << ',' << format_g6(s.dphi_b) << ','
       << format_g6(s.pl_db) << ',' << (s.clipped ? 1 : 0) << '\n';
}

void cmd_sweep_h(const RunConfig& cfg, const HSweepArgs& args, std::ostream& csv) {
    kernels::set_backend(cfg.backend);
    const SweepScene scene{cfg.resolve_layout(), cfg.vehicle_height, 0.0, cfg.grid_offset};
    const HeightField heights(cfg.resolve_gamma(), cfg.seed);
    const auto samples = sweep_horizontal({args.d_from, args.d_to, args.step}, args.altitude,
                                          scene, heights, cfg.radio());
    write_csv_header(csv);
    for (const auto& s : samples) write_csv_row(csv, s);
}

void cmd_sweep_v(const RunConfig& cfg, const VSweepArgs& args, std::ostream& csv) {
    kernels::set_backend(cfg.backend);
    const SweepScene scene{cfg.resolve_layout(), cfg.vehicle_height, 0.0, cfg.grid_offset};
    const HeightField heights(cfg.resolve_gamma(), cfg.seed);
    const auto samples = sweep_vertical({args.h_from, args.h_to, args.step}, args.distance, scene,
                                        heights, cfg.radio());
    write_csv_header(csv);
    for (const auto& s : samples) write_csv_row(csv, s);
}

void cmd_compare(const RunConfig& cfg, const CompareArgs& args, std::ostream& ecdf_csv,
                 std::ostream& summary_csv) {
    kernels::set_backend(cfg.backend);
    if (args.scenarios.size() < 2)
        throw std::invalid_argument("scenarios: need at least 2, got " +
                                    std::to_string(args.scenarios.size()));
    if (args.seeds < 1)
        throw std::invalid_argument("seeds: must be >= 1, got " + std::to_string(args.seeds));

    const RadioConfig radio{cfg.frequency_hz, cfg.gamma_b, cfg.gamma_g};
    radio.validate();

    ecdf_csv << "scenario,pl_db,cum_prob\n";
    summary_csv << "scenario,samples,clipped,mu_db,sigma_db\n";

    for (const std::string& name : args.scenarios) {
        const ScenarioPreset preset = parse_preset(name);
        const BuiltUpParams params = preset_params(preset);
        const SweepScene scene{derive_grid(params), cfg.vehicle_height, 0.0, cfg.grid_offset};

        std::vector<double> pooled;
        std::size_t clipped = 0;
        for (int i = 0; i < args.seeds; ++i) {
            const HeightField heights(params.gamma, cfg.seed + static_cast<std::uint64_t>(i));
            const auto samples = sweep_horizontal({args.d_from, args.d_to, args.step},
                                                  args.altitude, scene, heights, radio);
            for (const auto& s : samples) {
                if (s.clipped)
                    clipped++;
                else
                    pooled.push_back(s.pl_db);
            }
        }

        const NormalFit fit = normal_fit(pooled);
        summary_csv << name << ',' << fit.n << ',' << clipped << ',' << format_g6(fit.mu) << ','
                    << format_g6(fit.sigma) << '\n';
        for (const auto& [value, prob] : ecdf(pooled))
            ecdf_csv << name << ',' << format_g6(value) << ',' << format_g6(prob) << '\n';
    }
}

int cmd_validate(const RunConfig& cfg, const ValidateArgs& args, std::ostream& report) {
    kernels::set_backend(cfg.backend);
    if (args.trials < 1)
        throw std::invalid_argument("trials: must be >= 1, got " + std::to_string(args.trials));
    if (args.stat_seeds < 1)
        throw std::invalid_argument("seeds: must be >= 1, got " + std::to_string(args.stat_seeds));

    const GridLayout layout = cfg.resolve_layout();
    const double gamma = cfg.resolve_gamma();
    const double hv = cfg.vehicle_height;

    report << "validation report\n";
    report << "scenario: " << cfg.scenario_label() << " W=" << format_g6(layout.building_width)
           << " S=" << format_g6(layout.street_width) << " gamma=" << format_g6(gamma)
           << " hv=" << format_g6(hv) << " grid-offset=" << format_g6(cfg.grid_offset) << "\n";
    report << "kernel backend: " << kernels::backend_name(kernels::active_backend()) << "\n";

    // Randomized image-method cross-check of the closed-form model.
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist_d(1.0, 200.0);
    std::uniform_real_distribution<double> dist_h(hv + 1.0, 300.0);

    long mismatches = 0;
    long skipped = 0;
    double max_rel_error = 0.0;
    bool los_clear = true;
    for (long t = 0; t < args.trials; ++t) {
        const double d = dist_d(rng);
        const double h = dist_h(rng);
        const std::uint64_t field_seed = rng();
        const HeightField heights(gamma, field_seed);
        const LinkGeometry g{d, h, hv, layout, 0.0, cfg.grid_offset};
        const oracle::VerifyReport vr = oracle::verify_against_analytical(g, heights);
        if (vr.skipped) {
            skipped++;
            continue;
        }
        max_rel_error = std::max(max_rel_error, vr.max_rel_error);
        los_clear = los_clear && vr.los_clear;
        if (!vr.ok()) {
            mismatches++;
            if (mismatches <= 5) {
                report << "MISMATCH trial=" << t << " D=" << format_g6(d) << " H=" << format_g6(h)
                       << " hv=" << format_g6(hv) << " seed=" << field_seed
                       << " W=" << format_g6(layout.building_width)
                       << " S=" << format_g6(layout.street_width)
                       << " analytical_wr=" << vr.analytical_wr << " traced_wr=" << vr.traced_wr
                       << " max_rel_err=" << format_g6(vr.max_rel_error)
                       << (vr.los_clear ? "" : " los_blocked") << "\n";
            }
        }
    }
    report << "oracle trials: " << args.trials << "\n";
    report << "  matches: " << (args.trials - skipped - mismatches) << "/"
           << (args.trials - skipped) << " (skipped " << skipped << ")\n";
    report << "  max relative length error: " << format_g6(max_rel_error) << "\n";
    report << "  los clear: " << (los_clear ? "yes" : "no") << "\n";

    // Large-scale statistics at the tall-building operating point; the grid
    // dimensions are whatever the caller supplied above.
    const RadioConfig radio{kStatFrequency, cfg.gamma_b, cfg.gamma_g};
    radio.validate();
    const SweepScene scene{layout, kStatVehicleHeight, 0.0, cfg.grid_offset};
    std::vector<double> pooled;
    std::size_t clipped = 0;
    for (int i = 0; i < args.stat_seeds; ++i) {
        const HeightField heights(kStatGamma, cfg.seed + static_cast<std::uint64_t>(i));
        const auto samples = sweep_horizontal({0.0, kStatDMax, args.stat_step}, kStatAltitude,
                                              scene, heights, radio);
        for (const auto& s : samples) {
            if (s.clipped)
                clipped++;
            else
                pooled.push_back(s.pl_db);
        }
    }
    const NormalFit fit = normal_fit(pooled);
    report << "statistical protocol: gamma=" << format_g6(kStatGamma)
           << " H=" << format_g6(kStatAltitude) << " hv=" << format_g6(kStatVehicleHeight)
           << " f=" << format_g6(kStatFrequency) << " D=[0," << format_g6(kStatDMax)
           << "] step=" << format_g6(args.stat_step) << " seeds=" << args.stat_seeds
           << " gamma_g=" << format_g6(cfg.gamma_g) << " gamma_b=" << format_g6(cfg.gamma_b)
           << "\n";
    report << "  mu=" << format_g6(fit.mu) << " dB sigma=" << format_g6(fit.sigma)
           << " dB n=" << fit.n << " clipped=" << clipped << "\n";

    const bool pass = mismatches == 0;
    report << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 2;
}

void cmd_sample_heights(const RunConfig& cfg, std::size_t n, std::ostream& csv,
                        std::ostream& info) {
    if (n < 2) throw std::invalid_argument("n: must be >= 2, got " + std::to_string(n));
    const double gamma = cfg.resolve_gamma();
    const HeightField heights(gamma, cfg.seed);

    std::vector<double> values;
    values.reserve(n);
    csv << "index,height_m\n";
    for (std::size_t k = 0; k < n; ++k) {
        values.push_back(heights.height(1, static_cast<std::int64_t>(k)));
        csv << k << ',' << format_g6(values.back()) << '\n';
    }
    info << "n = " << n << "\n";
    info << "gamma = " << format_g6(gamma) << "\n";
    info << "gamma_hat = " << format_g6(fit_rayleigh(values)) << "\n";
}

}  // namespace uvprop::run
