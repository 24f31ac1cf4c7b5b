#ifndef ISAR_HARNESS_HPP
#define ISAR_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "isar/baselines.hpp"
#include "isar/frand.hpp"
#include "isar/model.hpp"

namespace isar {

/// Monte-Carlo sweep description.  Per-trial seed = base_seed + trial index;
/// the noise stream is decorrelated from the mask stream by a fixed xor
/// constant, so a (config, base_seed) pair fully determines every output.
struct Experiment {
    std::vector<std::string> methods;
    std::vector<double> snr_grid;      // dB; +inf means noiseless
    std::vector<int> sample_grid;      // observed sample counts
    int trials = 1;
    std::uint64_t base_seed = 1;
    int workers = 1;
    int zero_pad = 4;                  // image formation for the image metrics
    bool timing = false;               // when false the seconds column is 0
    double lambda_calibration = 1.0;   // scales the AST lambda rule for FRAND
    int bench_reps = 5;
    std::string output_dir = ".";

    void validate() const;
};

/// Dispatch shared by the sweep, the bench, and the CLI.  Only the requested
/// method's code path is touched.
Eigen::VectorXcd reconstruct(const std::string& method, const DataMatrix& z_obs,
                             const ApertureMask& mask, const RadarParams& params,
                             const SolverConfig& solver_cfg, const BaselineConfig& baseline_cfg);

/// Valid method names, for dispatch errors and CLI usage messages.
const std::vector<std::string>& method_names();

/// Monte-Carlo sweep: per-trial rows plus one aggregate row per cell, CSV
/// schema "method,snr_db,n_samples,trial,mse_data,mse_image,psnr_db,ssim,seconds,status".
/// Byte-identical output for identical (experiment, scene, params, configs).
void run_sweep(const Experiment& exp, const Scene& scene, const RadarParams& params,
               const SolverConfig& solver_cfg, const BaselineConfig& baseline_cfg,
               std::ostream& out);

/// Timing benchmark: median of bench_reps repetitions per (method, n_samples)
/// after one discarded warm-up, with the repetition variance.
void run_bench(const Experiment& exp, const Scene& scene, const RadarParams& params,
               const SolverConfig& solver_cfg, const BaselineConfig& baseline_cfg,
               std::ostream& out);

/// Noise standard deviation implied by an SNR relative to the observed
/// signal power; 0 for +inf dB.
double noise_sigma(const DataMatrix& truth, const ApertureMask& mask, double snr_db);

}  // namespace isar

#endif
