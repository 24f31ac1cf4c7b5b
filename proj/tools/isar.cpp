#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "isar/config.hpp"
#include "isar/errors.hpp"
#include "isar/harness.hpp"
#include "isar/imaging.hpp"

namespace fs = std::filesystem;

namespace {

std::string method_list() {
    std::string out;
    for (const auto& name : isar::method_names()) out += (out.empty() ? "" : ", ") + name;
    return out;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    isar::ConfigFile cfg = isar::ConfigFile::load(config_path);
    isar::RadarParams params = isar::radar_params_from_config(cfg);
    isar::Scene scene = isar::scene_from_config(cfg);
    isar::DataMatrix echo = isar::synthesize_echo(scene, params);
    fs::create_directories(out_dir);
    isar::save_data_matrix((fs::path(out_dir) / "echo.bin").string(), echo);
    std::cout << "wrote " << (fs::path(out_dir) / "echo.bin").string() << " ("
              << params.num_angles << "x" << params.num_freqs << ")\n";
    return 0;
}

int cmd_solve(const std::string& config_path, const std::string& data_path,
              const std::string& method, int samples, double snr_db, std::uint64_t seed,
              const std::string& out_dir) {
    isar::ConfigFile cfg = isar::ConfigFile::load(config_path);
    isar::RadarParams params = isar::radar_params_from_config(cfg);
    isar::SolverConfig solver_cfg = isar::solver_config_from_config(cfg);
    isar::BaselineConfig baseline_cfg = isar::baseline_config_from_config(cfg);

    isar::DataMatrix data = isar::load_data_matrix(data_path);
    if (data.rows() != params.num_angles || data.cols() != params.num_freqs)
        throw isar::DimensionError("solve: data file does not match the configured grid");
    const int nm = params.nm();
    if (samples <= 0) samples = nm;
    isar::ApertureMask mask = isar::random_mask(nm, samples, seed);
    isar::DataMatrix z_obs = isar::add_awgn(data, mask, snr_db, seed ^ 0x9e3779b97f4a7c15ull);
    if (solver_cfg.lambda == 0.0)
        solver_cfg.lambda = isar::select_lambda(isar::noise_sigma(data, mask, snr_db), nm);

    Eigen::VectorXcd r_hat =
        isar::reconstruct(method, z_obs, mask, params, solver_cfg, baseline_cfg);
    fs::create_directories(out_dir);
    isar::save_data_matrix((fs::path(out_dir) / "r_hat.bin").string(),
                           isar::unvectorize(r_hat, params.num_angles, params.num_freqs));
    isar::IsarImage image = isar::form_image(r_hat, params);
    isar::write_pgm16((fs::path(out_dir) / "image.pgm").string(), image);
    std::cout << "wrote r_hat.bin and image.pgm under " << out_dir << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, std::uint64_t seed, bool seed_given,
              const std::string& out_dir) {
    isar::ConfigFile cfg = isar::ConfigFile::load(config_path);
    isar::Experiment exp = isar::experiment_from_config(cfg);
    if (seed_given) exp.base_seed = seed;
    isar::RadarParams params = isar::radar_params_from_config(cfg);
    isar::Scene scene = isar::scene_from_config(cfg);
    isar::SolverConfig solver_cfg = isar::solver_config_from_config(cfg);
    isar::BaselineConfig baseline_cfg = isar::baseline_config_from_config(cfg);
    fs::create_directories(out_dir);
    std::ofstream out((fs::path(out_dir) / "sweep.csv").string());
    isar::run_sweep(exp, scene, params, solver_cfg, baseline_cfg, out);
    std::cout << "wrote " << (fs::path(out_dir) / "sweep.csv").string() << "\n";
    return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_dir) {
    isar::ConfigFile cfg = isar::ConfigFile::load(config_path);
    isar::Experiment exp = isar::experiment_from_config(cfg);
    isar::RadarParams params = isar::radar_params_from_config(cfg);
    isar::Scene scene = isar::scene_from_config(cfg);
    isar::SolverConfig solver_cfg = isar::solver_config_from_config(cfg);
    isar::BaselineConfig baseline_cfg = isar::baseline_config_from_config(cfg);
    fs::create_directories(out_dir);
    std::ofstream out((fs::path(out_dir) / "bench.csv").string());
    isar::run_bench(exp, scene, params, solver_cfg, baseline_cfg, out);
    std::cout << "wrote " << (fs::path(out_dir) / "bench.csv").string() << "\n";
    return 0;
}

int cmd_render(const std::string& config_path, const std::string& data_path,
               int zero_pad, const std::string& out_dir) {
    isar::ConfigFile cfg = isar::ConfigFile::load(config_path);
    isar::RadarParams params = isar::radar_params_from_config(cfg);
    isar::DataMatrix data = isar::load_data_matrix(data_path);
    if (data.rows() != params.num_angles || data.cols() != params.num_freqs)
        throw isar::DimensionError("render: data file does not match the configured grid");
    isar::IsarImage image = isar::form_image(isar::vectorize(data), params, zero_pad);
    fs::create_directories(out_dir);
    isar::write_pgm16((fs::path(out_dir) / "image.pgm").string(), image);
    std::cout << "wrote " << (fs::path(out_dir) / "image.pgm").string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse-aperture ISAR simulation and reconstruction toolkit"};
    app.require_subcommand(1);

    std::string config_path, data_path, out_dir = ".", method = "frand";
    int samples = 0;
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 1;
    bool seed_given = false;
    int zero_pad = 4;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Configuration file")->required();
        sub->add_option("--out", out_dir, "Output directory");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "Synthesize a noiseless echo matrix");
    add_common(simulate);

    CLI::App* solve_cmd = app.add_subcommand("solve", "Reconstruct from masked noisy data");
    add_common(solve_cmd);
    solve_cmd->add_option("--data", data_path, "DataMatrix binary file")->required();
    solve_cmd->add_option("--method", method, "One of: " + method_list());
    solve_cmd->add_option("--samples", samples, "Observed sample count (default: all)");
    solve_cmd->add_option("--snr", snr_db, "SNR in dB (default: noiseless)");
    solve_cmd->add_option("--seed", seed, "Mask/noise seed");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run the Monte-Carlo sweep");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--seed", seed, "Override base_seed")->each([&](const std::string&) {
        seed_given = true;
    });

    CLI::App* bench_cmd = app.add_subcommand("bench", "Run the timing benchmark");
    add_common(bench_cmd);

    CLI::App* render_cmd = app.add_subcommand("render", "Render a data file as a PGM image");
    add_common(render_cmd);
    render_cmd->add_option("--data", data_path, "DataMatrix binary file")->required();
    render_cmd->add_option("--zero-pad", zero_pad, "Zero-padding factor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(config_path, out_dir);
        if (solve_cmd->parsed()) {
            if (std::find(isar::method_names().begin(), isar::method_names().end(),
                          method) == isar::method_names().end()) {
                std::cerr << "unknown method '" << method << "'; valid methods: "
                          << method_list() << "\n";
                return 1;
            }
            return cmd_solve(config_path, data_path, method, samples, snr_db, seed, out_dir);
        }
        if (sweep_cmd->parsed()) return cmd_sweep(config_path, seed, seed_given, out_dir);
        if (bench_cmd->parsed()) return cmd_bench(config_path, out_dir);
        if (render_cmd->parsed()) return cmd_render(config_path, data_path, zero_pad, out_dir);
    } catch (const isar::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
