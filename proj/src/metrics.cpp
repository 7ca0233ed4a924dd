#include "bitflux/metrics.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bitflux {

double exact_dot(std::span<const double> x, std::span<const double> w) {
    if (x.size() != w.size()) throw std::domain_error("exact_dot: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * w[i];
    return acc;
}

void CompensatedSum::add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
        comp_ += (sum_ - t) + v;
    else
        comp_ += (v - t) + sum_;
    sum_ = t;
}

std::int64_t draw_raw(std::uint64_t random64, int width_bits, Polarity polarity) {
    const auto offset = static_cast<std::int64_t>(random64 >> (64 - width_bits));
    return min_raw(width_bits, polarity) + offset;
}

ErrorReport mac_benchmark(const MacConfig& cfg, std::int64_t samples, std::uint64_t seed) {
    cfg.validate();
    if (samples < 1) throw std::domain_error("benchmark needs at least one sample");

    std::mt19937_64 rng(seed);
    const auto m = static_cast<std::size_t>(cfg.fan_in);
    std::vector<BinaryWord> x, w;
    x.reserve(m);
    w.reserve(m);

    CompensatedSum sum_e, sum_e2;
    for (std::int64_t s = 0; s < samples; ++s) {
        x.clear();
        w.clear();
        for (std::size_t i = 0; i < m; ++i)
            x.emplace_back(draw_raw(rng(), cfg.width_bits, cfg.polarity), cfg.width_bits, cfg.polarity);
        for (std::size_t i = 0; i < m; ++i)
            w.emplace_back(draw_raw(rng(), cfg.width_bits, cfg.polarity), cfg.width_bits, cfg.polarity);
        MacConfig sample_cfg = cfg;
        sample_cfg.seed = seed + static_cast<std::uint64_t>(s);
        const double e = mac_run(sample_cfg, x, w).error;
        sum_e.add(e);
        sum_e2.add(e * e);
    }

    const double n = static_cast<double>(samples);
    const double mean = sum_e.value() / n;
    const double mean_sq = sum_e2.value() / n;
    ErrorReport r;
    r.variant = cfg.variant;
    r.polarity = cfg.polarity;
    r.width_bits = cfg.width_bits;
    r.fan_in = cfg.fan_in;
    r.samples = samples;
    r.seed = seed;
    r.rmse_pct = 100.0 * std::sqrt(mean_sq);
    r.sde_pct = 100.0 * std::sqrt(std::max(0.0, mean_sq - mean * mean));
    return r;
}

double psnr_from_rmse(double rmse) {
    if (rmse == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(1.0 / rmse);
}

ImageMetrics image_metrics(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::domain_error("image_metrics: dimension mismatch");
    if (a.size() == 0) throw std::domain_error("image_metrics: empty image");
    CompensatedSum acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.pixels()[i] - b.pixels()[i];
        acc.add(d * d);
    }
    ImageMetrics m;
    m.rmse = std::sqrt(acc.value() / static_cast<double>(a.size()));
    m.psnr_db = psnr_from_rmse(m.rmse);
    return m;
}

nlohmann::ordered_json to_json(const ErrorReport& r) {
    nlohmann::ordered_json j;
    j["variant"] = to_string(r.variant);
    j["polarity"] = to_string(r.polarity);
    j["bits"] = r.width_bits;
    j["fan_in"] = r.fan_in;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["rmse_pct"] = r.rmse_pct;
    j["sde_pct"] = r.sde_pct;
    return j;
}

std::string csv_header() { return "variant,polarity,bits,fan_in,samples,seed,rmse_pct,sde_pct"; }

std::string to_csv_row(const ErrorReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << to_string(r.variant) << ',' << to_string(r.polarity) << ',' << r.width_bits << ','
       << r.fan_in << ',' << r.samples << ',' << r.seed << ',' << r.rmse_pct << ',' << r.sde_pct;
    return os.str();
}

nlohmann::ordered_json to_json(const ImageMetrics& m) {
    nlohmann::ordered_json j;
    j["rmse"] = m.rmse;
    // JSON has no infinity; identical images report psnr_db as null
    if (std::isinf(m.psnr_db))
        j["psnr_db"] = nullptr;
    else
        j["psnr_db"] = m.psnr_db;
    return j;
}

}  // namespace bitflux
