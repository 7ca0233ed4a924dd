#pragma once

#include <cstdint>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "bitflux/image.hpp"
#include "bitflux/mac.hpp"

namespace bitflux {

/// Accuracy of one MAC configuration over a batch of random operand sets.
///
/// Errors are taken on the raw dot-product value (natural [0,1] / [-1,1]
/// operand units, no division by fan-in) and reported in percent.
struct ErrorReport {
    Variant variant = Variant::Emba;
    Polarity polarity = Polarity::Unipolar;
    int width_bits = 8;
    int fan_in = 4;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    double rmse_pct = 0.0;
    double sde_pct = 0.0;
};

struct ImageMetrics {
    double rmse = 0.0;
    double psnr_db = 0.0;  // +inf when rmse == 0
};

double exact_dot(std::span<const double> x, std::span<const double> w);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Uniform raw in [min_raw, max_raw] from the top N bits of a 64-bit draw.
std::int64_t draw_raw(std::uint64_t random64, int width_bits, Polarity polarity);

/// Draws `samples` operand sets from a mt19937_64 seeded with `seed`; every
/// element is uniform over the representable raws. The MUX variant seeds
/// sample i's LFSR with seed + i. cfg.seed is ignored.
ErrorReport mac_benchmark(const MacConfig& cfg, std::int64_t samples, std::uint64_t seed);

/// Throws std::domain_error on a dimension mismatch.
ImageMetrics image_metrics(const ImageBuffer& a, const ImageBuffer& b);

/// 20*log10(1/rmse), +inf for rmse == 0.
double psnr_from_rmse(double rmse);

nlohmann::ordered_json to_json(const ErrorReport& r);
std::string csv_header();
std::string to_csv_row(const ErrorReport& r);

nlohmann::ordered_json to_json(const ImageMetrics& m);

}  // namespace bitflux
