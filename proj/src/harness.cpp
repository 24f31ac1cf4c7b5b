#include "isar/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "isar/errors.hpp"
#include "isar/imaging.hpp"
#include "isar/metrics.hpp"

namespace isar {

namespace {

constexpr std::uint64_t kNoiseStreamSalt = 0x9e3779b97f4a7c15ull;

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct SweepRow {
    std::string method;
    double snr_db = 0.0;
    int n_samples = 0;
    int trial = 0;
    double mse_data = std::numeric_limits<double>::quiet_NaN();
    double mse_image = std::numeric_limits<double>::quiet_NaN();
    double psnr_db = std::numeric_limits<double>::quiet_NaN();
    double ssim_value = std::numeric_limits<double>::quiet_NaN();
    double seconds = 0.0;
    std::string status = "ok";
};

void write_row(std::ostream& out, const SweepRow& row, const std::string& trial_label) {
    out << row.method << ',' << fmt(row.snr_db) << ',' << row.n_samples << ','
        << trial_label << ',' << fmt(row.mse_data) << ',' << fmt(row.mse_image) << ','
        << fmt(row.psnr_db) << ',' << fmt(row.ssim_value) << ',' << fmt(row.seconds)
        << ',' << row.status << '\n';
}

}  // namespace

void Experiment::validate() const {
    if (methods.empty()) throw ParameterError("Experiment: methods list is empty");
    if (snr_grid.empty()) throw ParameterError("Experiment: snr grid is empty");
    if (sample_grid.empty()) throw ParameterError("Experiment: sample grid is empty");
    if (trials < 1) throw ParameterError("Experiment: trials must be >= 1");
    if (workers < 1) throw ParameterError("Experiment: workers must be >= 1");
    if (zero_pad < 1) throw ParameterError("Experiment: zero_pad must be >= 1");
    if (bench_reps < 5) throw ParameterError("Experiment: bench_reps must be >= 5");
    for (const auto& m : methods)
        if (std::find(method_names().begin(), method_names().end(), m) ==
            method_names().end())
            throw ParameterError("Experiment: unknown method '" + m + "'");
}

const std::vector<std::string>& method_names() {
    static const std::vector<std::string> names = {"frand", "music", "cadzow", "sl0"};
    return names;
}

Eigen::VectorXcd reconstruct(const std::string& method, const DataMatrix& z_obs,
                             const ApertureMask& mask, const RadarParams& params,
                             const SolverConfig& solver_cfg,
                             const BaselineConfig& baseline_cfg) {
    if (method == "frand") return solve(z_obs, mask, solver_cfg).r_hat;
    if (method == "music") return music2d(z_obs, mask, params, baseline_cfg).second;
    if (method == "cadzow") return cadzow(z_obs, mask, baseline_cfg);
    if (method == "sl0") return sl0(z_obs, mask, baseline_cfg).second;
    std::string valid;
    for (const auto& name : method_names()) valid += (valid.empty() ? "" : ", ") + name;
    throw ParameterError("reconstruct: unknown method '" + method + "'; valid: " + valid);
}

double noise_sigma(const DataMatrix& truth, const ApertureMask& mask, double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0) return 0.0;
    double power = 0.0;
    const int num_freqs = static_cast<int>(truth.cols());
    for (int idx : mask.observed)
        power += std::norm(truth(idx / num_freqs, idx % num_freqs));
    power /= static_cast<double>(mask.observed.size());
    return std::sqrt(power * std::pow(10.0, -snr_db / 10.0));
}

void run_sweep(const Experiment& exp, const Scene& scene, const RadarParams& params,
               const SolverConfig& solver_cfg, const BaselineConfig& baseline_cfg,
               std::ostream& out) {
    exp.validate();
    params.validate();
    const DataMatrix truth = synthesize_echo(scene, params);
    const Eigen::VectorXcd truth_vec = vectorize(truth);
    const IsarImage truth_image = form_image(truth_vec, params, exp.zero_pad);
    const int nm = params.nm();

    struct Job {
        size_t cell;
        int trial;
    };
    struct Cell {
        std::string method;
        double snr_db;
        int n_samples;
    };
    std::vector<Cell> cells;
    for (const auto& method : exp.methods)
        for (double snr : exp.snr_grid)
            for (int samples : exp.sample_grid) {
                if (samples < 1 || samples > nm)
                    throw ParameterError("run_sweep: sample count out of range");
                cells.push_back({method, snr, samples});
            }
    std::vector<Job> jobs;
    for (size_t c = 0; c < cells.size(); ++c)
        for (int trial = 0; trial < exp.trials; ++trial) jobs.push_back({c, trial});

    std::vector<SweepRow> rows(jobs.size());
    std::atomic<size_t> next_job{0};
    auto worker = [&]() {
        for (;;) {
            size_t j = next_job.fetch_add(1);
            if (j >= jobs.size()) return;
            const Cell& cell = cells[jobs[j].cell];
            const int trial = jobs[j].trial;
            SweepRow& row = rows[j];
            row.method = cell.method;
            row.snr_db = cell.snr_db;
            row.n_samples = cell.n_samples;
            row.trial = trial;
            try {
                std::uint64_t seed = exp.base_seed + static_cast<std::uint64_t>(trial);
                ApertureMask mask = random_mask(nm, cell.n_samples, seed);
                DataMatrix z_obs = add_awgn(truth, mask, cell.snr_db, seed ^ kNoiseStreamSalt);
                SolverConfig cfg = solver_cfg;
                cfg.lambda = select_lambda(noise_sigma(truth, mask, cell.snr_db), nm,
                                           exp.lambda_calibration);
                auto t0 = std::chrono::steady_clock::now();
                Eigen::VectorXcd r_hat =
                    reconstruct(cell.method, z_obs, mask, params, cfg, baseline_cfg);
                auto t1 = std::chrono::steady_clock::now();
                row.mse_data = mse(truth_vec, r_hat);
                IsarImage est_image = form_image(r_hat, params, exp.zero_pad);
                row.mse_image = mse(truth_image.pixels, est_image.pixels);
                row.psnr_db = psnr(truth_image.pixels, est_image.pixels);
                row.ssim_value = ssim(truth_image.pixels, est_image.pixels);
                if (exp.timing)
                    row.seconds = std::chrono::duration<double>(t1 - t0).count();
            } catch (const std::exception& e) {
                row.status = std::string("error:") + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < exp.workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    out << "# isar sweep csv schema v1\n";
    out << "method,snr_db,n_samples,trial,mse_data,mse_image,psnr_db,ssim,seconds,status\n";
    for (size_t c = 0; c < cells.size(); ++c) {
        SweepRow agg;
        agg.method = cells[c].method;
        agg.snr_db = cells[c].snr_db;
        agg.n_samples = cells[c].n_samples;
        double sum_mse = 0, sum_mse_img = 0, sum_psnr = 0, sum_ssim = 0, sum_sec = 0;
        int ok = 0;
        for (size_t j = 0; j < jobs.size(); ++j) {
            if (jobs[j].cell != c) continue;
            write_row(out, rows[j], std::to_string(rows[j].trial));
            if (rows[j].status == "ok") {
                sum_mse += rows[j].mse_data;
                sum_mse_img += rows[j].mse_image;
                sum_psnr += rows[j].psnr_db;
                sum_ssim += rows[j].ssim_value;
                sum_sec += rows[j].seconds;
                ++ok;
            }
        }
        if (ok > 0) {
            agg.mse_data = sum_mse / ok;
            agg.mse_image = sum_mse_img / ok;
            agg.psnr_db = sum_psnr / ok;
            agg.ssim_value = sum_ssim / ok;
            agg.seconds = sum_sec / ok;
            agg.status = ok == exp.trials ? "ok" : "partial";
        } else {
            agg.status = "error";
        }
        write_row(out, agg, "mean");
    }
}

void run_bench(const Experiment& exp, const Scene& scene, const RadarParams& params,
               const SolverConfig& solver_cfg, const BaselineConfig& baseline_cfg,
               std::ostream& out) {
    exp.validate();
    params.validate();
    const DataMatrix truth = synthesize_echo(scene, params);
    const int nm = params.nm();
    const double snr_db = exp.snr_grid.front();

    out << "# isar bench csv schema v1\n";
    out << "method,n_samples,median_seconds,mean_seconds,variance,reps\n";
    for (const auto& method : exp.methods)
        for (int samples : exp.sample_grid) {
            ApertureMask mask = random_mask(nm, samples, exp.base_seed);
            DataMatrix z_obs = add_awgn(truth, mask, snr_db, exp.base_seed ^ kNoiseStreamSalt);
            SolverConfig cfg = solver_cfg;
            cfg.lambda = select_lambda(noise_sigma(truth, mask, snr_db), nm,
                                       exp.lambda_calibration);
            std::vector<double> times;
            for (int rep = 0; rep <= exp.bench_reps; ++rep) {  // rep 0 = warm-up
                auto t0 = std::chrono::steady_clock::now();
                reconstruct(method, z_obs, mask, params, cfg, baseline_cfg);
                auto t1 = std::chrono::steady_clock::now();
                if (rep > 0)
                    times.push_back(std::chrono::duration<double>(t1 - t0).count());
            }
            std::sort(times.begin(), times.end());
            double median = times[times.size() / 2];
            double mean = 0;
            for (double t : times) mean += t;
            mean /= static_cast<double>(times.size());
            double variance = 0;
            for (double t : times) variance += (t - mean) * (t - mean);
            variance /= static_cast<double>(times.size());
            out << method << ',' << samples << ',' << fmt(median) << ',' << fmt(mean)
                << ',' << fmt(variance) << ',' << times.size() << '\n';
        }
}

}  // namespace isar
