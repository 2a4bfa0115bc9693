#include "cli_app.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "uvprop/run.hpp"

namespace uvprop::cli {

namespace {

// Sink that is either an owned output file or a borrowed stream (stdout).
class OutputSink {
  public:
    explicit OutputSink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream_ = &fallback;
            return;
        }
        file_.open(path, std::ios::binary);
        if (!file_) throw std::runtime_error("out: cannot open \"" + path + "\" for writing");
        stream_ = &file_;
    }

    std::ostream& stream() { return *stream_; }

  private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"UAV-to-vehicle path loss in built-up street grids"};
    app.fallthrough();
    app.set_config("--config", "", "key=value config file; command-line flags win");
    app.require_subcommand(1);

    run::RunConfig cfg;
    std::string scenario_name;
    std::string kernel_name = "auto";
    std::string out_path;

    app.add_option("--scenario", scenario_name,
                   "Preset: suburban|urban|dense-urban|high-rise-urban");
    app.add_option("--alpha", cfg.alpha, "Built land fraction, (0,1]");
    app.add_option("--beta", cfg.beta, "Buildings per km^2");
    app.add_option("--gamma", cfg.gamma, "Rayleigh scale of building heights, m");
    app.add_option("--w", cfg.grid_w, "Explicit building width W, m");
    app.add_option("--s", cfg.grid_s, "Explicit street width S, m");
    app.add_option("--freq-hz", cfg.frequency_hz, "Carrier frequency, Hz")->capture_default_str();
    app.add_option("--hv", cfg.vehicle_height, "Vehicle antenna height, m")->capture_default_str();
    app.add_option("--gamma-b", cfg.gamma_b, "Wall reflection coefficient, [0,1]")
        ->capture_default_str();
    app.add_option("--gamma-g", cfg.gamma_g, "Ground reflection coefficient, [0,1]")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    app.add_option("--grid-offset", cfg.grid_offset, "Building pattern phase, m")
        ->capture_default_str();
    app.add_option("--kernel", kernel_name, "Field kernel backend: auto|scalar|avx2")
        ->capture_default_str();
    app.add_option("--out", out_path, "Output file (default: stdout)");

    run::HSweepArgs hargs;
    auto* sweep_h = app.add_subcommand("sweep-h", "Path loss vs horizontal distance at fixed H");
    sweep_h->add_option("--alt", hargs.altitude, "UAV altitude, m")->capture_default_str();
    sweep_h->add_option("--d-min", hargs.d_from, "Sweep start, m")->capture_default_str();
    sweep_h->add_option("--d-max", hargs.d_to, "Sweep end (inclusive), m")->capture_default_str();
    sweep_h->add_option("--step", hargs.step, "Sweep step, m")->capture_default_str();

    run::VSweepArgs vargs;
    auto* sweep_v = app.add_subcommand("sweep-v", "Path loss vs UAV altitude at fixed D");
    sweep_v->add_option("--d", vargs.distance, "Horizontal distance, m")->capture_default_str();
    sweep_v->add_option("--h-min", vargs.h_from, "Sweep start, m")->capture_default_str();
    sweep_v->add_option("--h-max", vargs.h_to, "Sweep end (inclusive), m")->capture_default_str();
    sweep_v->add_option("--step", vargs.step, "Sweep step, m")->capture_default_str();

    run::CompareArgs cargs;
    auto* compare = app.add_subcommand("compare", "Pooled ECDF and normal fit per scenario");
    compare->add_option("--scenarios", cargs.scenarios, "Comma-separated preset list")
        ->delimiter(',')
        ->required();
    compare->add_option("--seeds", cargs.seeds, "Height realizations to pool")
        ->capture_default_str();
    compare->add_option("--alt", cargs.altitude, "UAV altitude, m")->capture_default_str();
    compare->add_option("--d-min", cargs.d_from, "Sweep start, m")->capture_default_str();
    compare->add_option("--d-max", cargs.d_to, "Sweep end (inclusive), m")->capture_default_str();
    compare->add_option("--step", cargs.step, "Sweep step, m")->capture_default_str();

    run::ValidateArgs vaargs;
    auto* validate =
        app.add_subcommand("validate", "Image-method oracle check plus statistical protocol");
    validate->add_option("--trials", vaargs.trials, "Randomized oracle links")
        ->capture_default_str();
    validate->add_option("--seeds", vaargs.stat_seeds, "Seeds for the statistical protocol")
        ->capture_default_str();
    validate->add_option("--step", vaargs.stat_step, "D step for the statistical protocol, m")
        ->capture_default_str();

    std::size_t samples_n = 1000;
    auto* sample_heights =
        app.add_subcommand("sample-heights", "Draw building heights and refit the Rayleigh scale");
    sample_heights->add_option("--n", samples_n, "Number of heights")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (!scenario_name.empty()) cfg.preset = parse_preset(scenario_name);
        cfg.backend = kernels::parse_backend(kernel_name);

        if (sweep_h->parsed()) {
            OutputSink out(out_path, std::cout);
            run::cmd_sweep_h(cfg, hargs, out.stream());
            return 0;
        }
        if (sweep_v->parsed()) {
            OutputSink out(out_path, std::cout);
            run::cmd_sweep_v(cfg, vargs, out.stream());
            return 0;
        }
        if (compare->parsed()) {
            if (out_path.empty())
                throw std::invalid_argument("out: compare writes two files; --out is required");
            OutputSink ecdf_out(out_path, std::cout);
            OutputSink summary_out(out_path + ".summary.csv", std::cout);
            run::cmd_compare(cfg, cargs, ecdf_out.stream(), summary_out.stream());
            return 0;
        }
        if (validate->parsed()) {
            OutputSink out(out_path, std::cout);
            return run::cmd_validate(cfg, vaargs, out.stream());
        }
        if (sample_heights->parsed()) {
            OutputSink out(out_path, std::cout);
            run::cmd_sample_heights(cfg, samples_n, out.stream(),
                                    out_path.empty() ? std::cerr : std::cout);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace uvprop::cli
