#include "isar/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>

#include "isar/errors.hpp"
#include "isar/rng.hpp"

namespace isar {

namespace {
constexpr double kPi = std::numbers::pi;
}

void RadarParams::validate() const {
    if (num_freqs < 1 || num_angles < 1)
        throw ParameterError("RadarParams: M and N must be >= 1");
    if (f0 <= 0.0) throw ParameterError("RadarParams: f0 must be positive");
    if (delta_f < 0.0) throw ParameterError("RadarParams: delta_f must be non-negative");
    if (theta_span <= 0.0) throw ParameterError("RadarParams: theta_span must be positive");
    if (c <= 0.0) throw ParameterError("RadarParams: c must be positive");
}

double RadarParams::theta(int n) const {
    if (num_angles == 1) return 0.0;
    return n * theta_span / (num_angles - 1);
}

double RadarParams::cross_range_slope() const {
    if (num_angles == 1) return 0.0;
    return 4.0 * kPi * f0 / c * theta_span / (num_angles - 1);
}

void Scene::validate() const {
    for (const auto& s : scatterers)
        if (s.sigma <= 0.0) throw ParameterError("Scene: reflectivity must be positive");
}

void ApertureMask::validate() const {
    if (observed.empty()) throw ParameterError("ApertureMask: at least one observed index");
    if (!std::is_sorted(observed.begin(), observed.end()))
        throw ParameterError("ApertureMask: indices must be ascending");
    if (std::adjacent_find(observed.begin(), observed.end()) != observed.end())
        throw ParameterError("ApertureMask: duplicate index");
    if (observed.front() < 0 || observed.back() >= nm_total)
        throw ParameterError("ApertureMask: index out of range");
}

ApertureMask ApertureMask::full(int nm_total) {
    ApertureMask mask;
    mask.nm_total = nm_total;
    mask.observed.resize(nm_total);
    for (int i = 0; i < nm_total; ++i) mask.observed[i] = i;
    return mask;
}

Eigen::VectorXcd vectorize(const DataMatrix& data) {
    Eigen::VectorXcd v(data.rows() * data.cols());
    for (Eigen::Index n = 0; n < data.rows(); ++n)
        for (Eigen::Index m = 0; m < data.cols(); ++m)
            v[n * data.cols() + m] = data(n, m);
    return v;
}

DataMatrix unvectorize(const Eigen::VectorXcd& vec, int num_angles, int num_freqs) {
    if (vec.size() != static_cast<Eigen::Index>(num_angles) * num_freqs)
        throw DimensionError("unvectorize: length mismatch");
    DataMatrix data(num_angles, num_freqs);
    for (int n = 0; n < num_angles; ++n)
        for (int m = 0; m < num_freqs; ++m) data(n, m) = vec[flat_index(n, m, num_freqs)];
    return data;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> angle_freq_params(const RadarParams& params) {
    params.validate();
    Eigen::VectorXd h_n(params.num_angles), h_m(params.num_freqs);
    for (int n = 0; n < params.num_angles; ++n)
        h_n[n] = 4.0 * kPi * params.f0 / params.c * params.theta(n);
    for (int m = 0; m < params.num_freqs; ++m) h_m[m] = 4.0 * kPi * params.freq(m) / params.c;
    return {h_n, h_m};
}

DataMatrix synthesize_echo(const Scene& scene, const RadarParams& params) {
    params.validate();
    scene.validate();
    auto [h_n, h_m] = angle_freq_params(params);
    DataMatrix data = DataMatrix::Zero(params.num_angles, params.num_freqs);
    for (const auto& s : scene.scatterers) {
        Eigen::VectorXcd row_phase(params.num_angles), col_phase(params.num_freqs);
        for (int n = 0; n < params.num_angles; ++n)
            row_phase[n] = std::polar(1.0, -h_n[n] * s.x);
        for (int m = 0; m < params.num_freqs; ++m)
            col_phase[m] = std::polar(1.0, -h_m[m] * s.y);
        data.noalias() += s.sigma * row_phase * col_phase.transpose();
    }
    return data;
}

ApertureMask random_mask(int nm_total, int n_observed, std::uint64_t seed) {
    if (nm_total < 1) throw ParameterError("random_mask: nm_total must be >= 1");
    if (n_observed < 1 || n_observed > nm_total)
        throw ParameterError("random_mask: n_observed out of range");
    // Partial Fisher-Yates: the first n_observed slots are a uniform subset.
    std::vector<int> pool(nm_total);
    for (int i = 0; i < nm_total; ++i) pool[i] = i;
    Rng rng(seed);
    for (int i = 0; i < n_observed; ++i) {
        int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(nm_total - i)));
        std::swap(pool[i], pool[j]);
    }
    ApertureMask mask;
    mask.nm_total = nm_total;
    mask.observed.assign(pool.begin(), pool.begin() + n_observed);
    std::sort(mask.observed.begin(), mask.observed.end());
    mask.validate();
    return mask;
}

DataMatrix add_awgn(const DataMatrix& data, const ApertureMask& mask, double snr_db,
                    std::uint64_t seed) {
    mask.validate();
    if (mask.nm_total != data.size())
        throw DimensionError("add_awgn: mask does not match data dimensions");
    const int num_freqs = static_cast<int>(data.cols());
    Eigen::VectorXcd v = vectorize(data);

    DataMatrix out = DataMatrix::Zero(data.rows(), data.cols());
    if (std::isinf(snr_db)) {
        for (int idx : mask.observed)
            out(idx / num_freqs, idx % num_freqs) = v[idx];
        return out;
    }

    double signal_power = 0.0;
    for (int idx : mask.observed) signal_power += std::norm(v[idx]);
    signal_power /= static_cast<double>(mask.observed.size());
    if (signal_power == 0.0)
        throw ParameterError("add_awgn: zero signal power on the observed set");

    double noise_var = signal_power / std::pow(10.0, snr_db / 10.0);
    double comp_std = std::sqrt(noise_var / 2.0);  // per real component
    Rng rng(seed);
    for (int idx : mask.observed) {
        std::complex<double> noise(comp_std * rng.gaussian(), comp_std * rng.gaussian());
        out(idx / num_freqs, idx % num_freqs) = v[idx] + noise;
    }
    return out;
}

Scene quadcopter_scene() {
    // Cross of 4 arms plus a small center body, 28 scatterers in a 1 m box.
    // Reflectivities cycle through [0.5, 1.5] deterministically.
    Scene scene;
    auto add = [&scene](double x, double y, double sigma) {
        scene.scatterers.push_back({x, y, sigma});
    };
    const int arm_points = 6;
    const double arm_len = 0.45;
    double sigma_cycle[7] = {1.5, 0.8, 1.2, 0.6, 1.0, 1.4, 0.5};
    int k = 0;
    for (int arm = 0; arm < 4; ++arm) {
        double dx = (arm == 0) ? 1 : (arm == 1) ? -1 : 0;
        double dy = (arm == 2) ? 1 : (arm == 3) ? -1 : 0;
        for (int i = 1; i <= arm_points; ++i) {
            double t = arm_len * i / arm_points;
            add(dx * t, dy * t, sigma_cycle[k++ % 7]);
        }
    }
    add(0.0, 0.0, 1.5);
    add(0.05, 0.05, 0.9);
    add(-0.05, 0.05, 0.9);
    add(0.0, -0.07, 0.7);
    return scene;
}

namespace {
constexpr char kMagic[8] = {'I', 'S', 'A', 'R', 'E', 'C', 'H', 'O'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::ofstream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

void put_f64(std::ofstream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}
}  // namespace

void save_data_matrix(const std::string& path, const DataMatrix& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("save_data_matrix: cannot open " + path);
    out.write(kMagic, 8);
    put_u32(out, kFormatVersion);
    put_u32(out, 0);  // reserved, pads the header to 16 bytes
    put_u32(out, static_cast<std::uint32_t>(data.rows()));
    put_u32(out, static_cast<std::uint32_t>(data.cols()));
    for (Eigen::Index n = 0; n < data.rows(); ++n)
        for (Eigen::Index m = 0; m < data.cols(); ++m) {
            put_f64(out, data(n, m).real());
            put_f64(out, data(n, m).imag());
        }
    if (!out) throw IoError("save_data_matrix: write failed for " + path);
}

DataMatrix load_data_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("load_data_matrix: cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw IoError("load_data_matrix: bad magic in " + path);
    std::uint32_t version = get_u32(in);
    if (version != kFormatVersion)
        throw IoError("load_data_matrix: unsupported version in " + path);
    get_u32(in);  // reserved
    std::uint32_t rows = get_u32(in), cols = get_u32(in);
    if (!in || rows == 0 || cols == 0) throw IoError("load_data_matrix: bad header in " + path);
    DataMatrix data(rows, cols);
    for (std::uint32_t n = 0; n < rows; ++n)
        for (std::uint32_t m = 0; m < cols; ++m) {
            double re = get_f64(in);
            double im = get_f64(in);
            data(n, m) = {re, im};
        }
    if (!in) throw IoError("load_data_matrix: truncated file " + path);
    return data;
}

}  // namespace isar
