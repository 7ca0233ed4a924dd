#include "bitflux/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bitflux {

FirKernel gaussian_taps(double sigma, int width_bits) {
    if (!(sigma > 0.0)) throw std::domain_error("gaussian_taps: sigma must be > 0");
    std::array<double, kFirTaps> w{};
    double sum = 0.0;
    for (int k = 0; k < kFirTaps; ++k) {
        const double t = (k - 2.5) / sigma;
        w[k] = std::exp(-0.5 * t * t);
        sum += w[k];
    }
    FirKernel kernel;
    for (double v : w) kernel.taps.push_back(quantize(v / sum, width_bits, Polarity::Unipolar));
    return kernel;
}

ImageBuffer fir_filter(const ImageBuffer& img, const FirKernel& kernel, const MacConfig& cfg) {
    cfg.validate();
    if (cfg.polarity != Polarity::Unipolar) throw std::domain_error("FIR runs in unipolar mode");
    if (cfg.fan_in != kFirTaps || kernel.taps.size() != kFirTaps)
        throw std::domain_error("FIR needs fan-in 6 and six taps");

    ImageBuffer out(img.width(), img.height());
    std::vector<BinaryWord> window;
    window.reserve(kFirTaps);
    for (std::size_t r = 0; r < img.height(); ++r) {
        Lfsr lfsr = Lfsr::from_seed(cfg.seed ^ r);
        for (std::size_t c = 0; c < img.width(); ++c) {
            window.clear();
            for (int k = 0; k < kFirTaps; ++k) {
                const double px = img.at_clamped(r, static_cast<std::ptrdiff_t>(c) - 2 + k);
                window.push_back(quantize(px, cfg.width_bits, Polarity::Unipolar));
            }
            out.set(r, c, mac_run(cfg, window, kernel.taps, lfsr).value);
        }
    }
    return out;
}

DctReal dct8_real() {
    DctReal c{};
    for (int k = 0; k < kDctPoints; ++k) {
        const double alpha = k == 0 ? std::sqrt(1.0 / kDctPoints) : std::sqrt(2.0 / kDctPoints);
        for (int n = 0; n < kDctPoints; ++n)
            c[k][n] = alpha * std::cos(std::numbers::pi * (2 * n + 1) * k / (2.0 * kDctPoints));
    }
    return c;
}

DctMatrix dct8_matrix(int width_bits) {
    const auto real = dct8_real();
    DctMatrix m;
    m.coeff.resize(kDctPoints);
    for (int k = 0; k < kDctPoints; ++k)
        for (int n = 0; n < kDctPoints; ++n)
            m.coeff[k].push_back(quantize(real[k][n], width_bits, Polarity::Bipolar));
    return m;
}

std::string_view to_string(DctMode m) { return m == DctMode::Rows1D ? "1d" : "2d"; }

DctMode parse_dct_mode(std::string_view s) {
    if (s == "1d") return DctMode::Rows1D;
    if (s == "2d") return DctMode::Separable2D;
    throw std::invalid_argument("unknown DCT mode: " + std::string(s));
}

Mac8 split_mac8(const MacConfig& cfg) {
    MacConfig four = cfg;
    four.fan_in = 4;
    four.validate();
    if (four.polarity != Polarity::Bipolar) throw std::domain_error("DCT runs in bipolar mode");
    return [four](std::span<const BinaryWord> x, std::span<const BinaryWord> w, Lfsr& lfsr) {
        return mac_run(four, x.first(4), w.first(4), lfsr).value +
               mac_run(four, x.subspan(4, 4), w.subspan(4, 4), lfsr).value;
    };
}

Mac8 oracle_mac8() {
    return [](std::span<const BinaryWord> x, std::span<const BinaryWord> w, Lfsr&) {
        return exact_mac(x, w);
    };
}

namespace {

constexpr double kInterScale = 4.0;

BinaryWord to_bipolar(double v, int width_bits) {
    return quantize(std::clamp(v, -1.0, 1.0), width_bits, Polarity::Bipolar);
}

std::size_t round_up8(std::size_t v) { return (v + kDctPoints - 1) / kDctPoints * kDctPoints; }

// Strided view of 8 consecutive samples along a row or a column.
struct Line {
    std::size_t start;
    std::size_t stride;
    std::size_t index(int i) const { return start + static_cast<std::size_t>(i) * stride; }
};

class Transformer {
public:
    Transformer(const Mac8& mac, int width_bits, std::uint64_t seed)
        : mac_(mac), width_(width_bits), seed_(seed), matrix_(dct8_matrix(width_bits)),
          real_(dct8_real()) {
        columns_.resize(kDctPoints);
        for (int n = 0; n < kDctPoints; ++n)
            for (int k = 0; k < kDctPoints; ++k) columns_[n].push_back(matrix_.coeff[k][n]);
    }

    // y_k = C[k] . x through the MAC, scaled by 1/4 and requantized in place.
    void forward(std::vector<BinaryWord>& grid, Line line, Lfsr& lfsr) const {
        gather(grid, line);
        for (int k = 0; k < kDctPoints; ++k)
            grid[line.index(k)] = to_bipolar(mac_(block_, matrix_.coeff[k], lfsr) / kInterScale, width_);
    }

    // x_n = 4 * C[:,n] . z through the MAC.
    void inverse_mac(const std::vector<BinaryWord>& grid, Line line, Lfsr& lfsr,
                     std::vector<double>& out) const {
        gather(grid, line);
        for (int n = 0; n < kDctPoints; ++n)
            out[line.index(n)] = kInterScale * mac_(block_, columns_[n], lfsr);
    }

    // Same in double precision with the unquantized basis.
    void inverse_exact(std::vector<double>& values, Line line) const {
        std::array<double, kDctPoints> z{};
        for (int k = 0; k < kDctPoints; ++k) z[k] = values[line.index(k)];
        for (int n = 0; n < kDctPoints; ++n) {
            double acc = 0.0;
            for (int k = 0; k < kDctPoints; ++k) acc += real_[k][n] * z[k];
            values[line.index(n)] = kInterScale * acc;
        }
    }

    Lfsr line_lfsr(std::uint64_t line_id) const { return Lfsr::from_seed(seed_ ^ line_id); }

private:
    void gather(const std::vector<BinaryWord>& grid, Line line) const {
        block_.clear();
        for (int i = 0; i < kDctPoints; ++i) block_.push_back(grid[line.index(i)]);
    }

    const Mac8& mac_;
    int width_;
    std::uint64_t seed_;
    DctMatrix matrix_;
    DctReal real_;
    std::vector<std::vector<BinaryWord>> columns_;
    mutable std::vector<BinaryWord> block_;
};

}  // namespace

std::string_view to_string(DctInverse m) { return m == DctInverse::Exact ? "exact" : "mac"; }

DctInverse parse_dct_inverse(std::string_view s) {
    if (s == "exact") return DctInverse::Exact;
    if (s == "mac") return DctInverse::Accelerated;
    throw std::invalid_argument("unknown DCT inverse mode: " + std::string(s));
}

DctOutcome dct_pipeline(const ImageBuffer& img, const Mac8& mac, int width_bits, std::uint64_t seed,
                        const DctOptions& opts) {
    if (img.size() == 0) throw std::domain_error("dct_pipeline: empty image");
    const bool two_d = opts.mode == DctMode::Separable2D;
    const bool exact_inverse = opts.inverse == DctInverse::Exact;
    const Transformer xf(mac, width_bits, seed);
    const std::size_t w8 = round_up8(img.width());
    const std::size_t h8 = two_d ? round_up8(img.height()) : img.height();

    std::vector<BinaryWord> grid;
    grid.reserve(w8 * h8);
    for (std::size_t r = 0; r < h8; ++r)
        for (std::size_t c = 0; c < w8; ++c) {
            const double p = img.at_clamped(std::min(r, img.height() - 1), static_cast<std::ptrdiff_t>(c));
            grid.push_back(to_bipolar(2.0 * p - 1.0, width_bits));
        }

    // Rows use line ids [0, h8), columns [h8, h8 + w8).
    auto for_rows = [&](auto&& fn) {
        for (std::size_t r = 0; r < h8; ++r) {
            Lfsr lfsr = xf.line_lfsr(r);
            for (std::size_t c0 = 0; c0 < w8; c0 += kDctPoints) fn(Line{r * w8 + c0, 1}, lfsr);
        }
    };
    auto for_cols = [&](auto&& fn) {
        for (std::size_t c = 0; c < w8; ++c) {
            Lfsr lfsr = xf.line_lfsr(h8 + c);
            for (std::size_t r0 = 0; r0 < h8; r0 += kDctPoints) fn(Line{r0 * w8 + c, w8}, lfsr);
        }
    };

    for_rows([&](Line l, Lfsr& lfsr) { xf.forward(grid, l, lfsr); });
    if (two_d) for_cols([&](Line l, Lfsr& lfsr) { xf.forward(grid, l, lfsr); });

    std::vector<double> samples(w8 * h8);
    if (exact_inverse) {
        for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = dequantize(grid[i]);
        if (two_d) for_cols([&](Line l, Lfsr&) { xf.inverse_exact(samples, l); });
        for_rows([&](Line l, Lfsr&) { xf.inverse_exact(samples, l); });
    } else {
        if (two_d) {
            for_cols([&](Line l, Lfsr& lfsr) { xf.inverse_mac(grid, l, lfsr, samples); });
            for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = to_bipolar(samples[i], width_bits);
        }
        for_rows([&](Line l, Lfsr& lfsr) { xf.inverse_mac(grid, l, lfsr, samples); });
    }

    DctOutcome out{ImageBuffer(img.width(), img.height()), {}};
    for (std::size_t r = 0; r < img.height(); ++r)
        for (std::size_t c = 0; c < img.width(); ++c)
            out.reconstructed.set(r, c, (samples[r * w8 + c] + 1.0) / 2.0);
    out.metrics = image_metrics(img, out.reconstructed);
    return out;
}

DctOutcome dct_pipeline(const ImageBuffer& img, const MacConfig& cfg, const DctOptions& opts) {
    return dct_pipeline(img, split_mac8(cfg), cfg.width_bits, cfg.seed, opts);
}

// ---------------------------------------------------------------------------
// synthetic images

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double lattice(std::uint64_t seed, int octave, std::int64_t ix, std::int64_t iy) {
    const std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(octave) * 0x1000193ull ^
                                                         splitmix64(static_cast<std::uint64_t>(ix) * 0x632BE5ABull ^
                                                                    static_cast<std::uint64_t>(iy))));
    return static_cast<double>(h >> 11) / 9007199254740992.0;
}

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

double value_noise(std::uint64_t seed, int octave, double x, double y) {
    const double fx = std::floor(x), fy = std::floor(y);
    const auto ix = static_cast<std::int64_t>(fx), iy = static_cast<std::int64_t>(fy);
    const double tx = smooth(x - fx), ty = smooth(y - fy);
    const double a = lattice(seed, octave, ix, iy), b = lattice(seed, octave, ix + 1, iy);
    const double c = lattice(seed, octave, ix, iy + 1), d = lattice(seed, octave, ix + 1, iy + 1);
    return (a + (b - a) * tx) * (1 - ty) + (c + (d - c) * tx) * ty;
}

ImageBuffer normalize(std::size_t width, std::size_t height, std::vector<double> v, double lo_out,
                      double hi_out) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    const double lo = *mn, span = std::max(*mx - *mn, 1e-12);
    for (double& p : v) p = lo_out + (hi_out - lo_out) * (p - lo) / span;
    return ImageBuffer(width, height, std::move(v));
}

}  // namespace

ImageBuffer synth_gradient(std::size_t width, std::size_t height) {
    std::vector<double> v(width * height);
    for (std::size_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < width; ++c) {
            const double u = width > 1 ? static_cast<double>(c) / (width - 1) : 0.0;
            const double t = height > 1 ? static_cast<double>(r) / (height - 1) : 0.0;
            v[r * width + c] = 0.1 + 0.6 * u + 0.2 * t;
        }
    return ImageBuffer(width, height, std::move(v));
}

ImageBuffer synth_texture(std::size_t width, std::size_t height, std::uint64_t seed, double roughness,
                          double cell) {
    if (!(cell >= 1.0)) throw std::domain_error("synth_texture: cell must be >= 1 pixel");
    std::vector<double> v(width * height, 0.0);
    const double base = cell;
    for (std::size_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < width; ++c) {
            double amp = 1.0, freq = 1.0 / base, acc = 0.0;
            for (int o = 0; o < 6; ++o) {
                acc += amp * value_noise(seed, o, c * freq, r * freq);
                amp *= roughness;
                freq *= 2.0;
            }
            v[r * width + c] = acc;
        }
    return normalize(width, height, std::move(v), 0.05, 0.95);
}

ImageBuffer synth_scene(std::size_t width, std::size_t height, std::uint64_t seed) {
    auto tex = synth_texture(width, height, seed, 0.5);
    std::vector<double> v = tex.pixels();
    const double w = static_cast<double>(width), h = static_cast<double>(height);
    for (std::size_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < width; ++c) {
            const double x = c / w, y = r / h;
            double p = 0.35 + 0.3 * x + 0.25 * (v[r * width + c] - 0.5);
            // disc
            const double dx = x - 0.3, dy = y - 0.35;
            if (dx * dx + dy * dy < 0.04) p = 0.85 - 0.2 * y;
            // rectangle
            if (x > 0.55 && x < 0.85 && y > 0.5 && y < 0.8) p = 0.15 + 0.1 * x;
            // stripes
            if (y > 0.82) p = (static_cast<int>(c / 3) % 2) ? 0.8 : 0.25;
            v[r * width + c] = std::clamp(p, 0.0, 1.0);
        }
    return ImageBuffer(width, height, std::move(v));
}

}  // namespace bitflux
