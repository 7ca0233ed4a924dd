#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "bitflux/encodings.hpp"
#include "bitflux/image.hpp"
#include "bitflux/mac.hpp"
#include "bitflux/metrics.hpp"

namespace bitflux {

inline constexpr int kFirTaps = 6;
inline constexpr int kDctPoints = 8;

struct FirKernel {
    std::vector<BinaryWord> taps;  // kFirTaps entries
};

/// Gaussian window w[k] = exp(-0.5*((k-2.5)/sigma)^2), normalized to unit sum,
/// quantized unipolar. Throws std::domain_error for sigma <= 0.
FirKernel gaussian_taps(double sigma = 1.0, int width_bits = 8);

/// Horizontal 6-tap filter: out[r][c] = MAC(taps, px[r][c-2 .. c+3]) with
/// edge-replicated borders. Pixels are quantized unipolar before encoding and
/// the result is clamped to [0, 1]. Needs a unipolar config with fan-in 6.
/// The MUX variant seeds row r with cfg.seed ^ r.
ImageBuffer fir_filter(const ImageBuffer& img, const FirKernel& kernel, const MacConfig& cfg);

/// Unquantized orthonormal DCT-II basis, rows = frequency.
using DctReal = std::array<std::array<double, kDctPoints>, kDctPoints>;
DctReal dct8_real();

struct DctMatrix {
    std::vector<std::vector<BinaryWord>> coeff;  // [k][n], 8x8
};

/// DCT-II coefficients quantized bipolar at `width_bits`.
DctMatrix dct8_matrix(int width_bits = 8);

enum class DctMode { Rows1D, Separable2D };
std::string_view to_string(DctMode m);
DctMode parse_dct_mode(std::string_view s);

/// Computes one 8-term dot product; the default uses two M=4 MACs summed at
/// binary readout. `lfsr` carries MUX selects across calls within a line.
using Mac8 = std::function<double(std::span<const BinaryWord> x, std::span<const BinaryWord> w,
                                  Lfsr& lfsr)>;

/// The 8-term product as two cfg.fan_in=4 mac_run calls.
Mac8 split_mac8(const MacConfig& cfg);

/// Exact double-precision dot product of the dequantized operands.
Mac8 oracle_mac8();

struct DctOutcome {
    ImageBuffer reconstructed;
    ImageMetrics metrics;  // against the original image
};

/// Where the inverse transform runs: in double precision (the accelerator
/// computes the forward transform only) or on the same MAC as the forward pass.
enum class DctInverse { Exact, Accelerated };
std::string_view to_string(DctInverse m);
DctInverse parse_dct_inverse(std::string_view s);

struct DctOptions {
    DctMode mode = DctMode::Rows1D;
    DctInverse inverse = DctInverse::Exact;
};

/// 8-point DCT-II round trip.
///
/// Pixels map to 2p-1 and are quantized bipolar. Each forward output goes
/// through `mac`, is scaled by 1/4 and requantized. The inverse uses the
/// transposed basis and is scaled back by 4 before mapping to [0, 1]. Width
/// (and height in 2-D mode) is padded by edge replication to a multiple of 8
/// and cropped afterwards. Row r seeds its select LFSR with seed ^ r, column c
/// with seed ^ (padded_height + c).
DctOutcome dct_pipeline(const ImageBuffer& img, const Mac8& mac, int width_bits,
                        std::uint64_t seed, const DctOptions& opts = {});

/// Bipolar cfg, two 4-input MACs per forward output sample.
DctOutcome dct_pipeline(const ImageBuffer& img, const MacConfig& cfg, const DctOptions& opts = {});

/// Deterministic synthetic test images.
ImageBuffer synth_gradient(std::size_t width, std::size_t height);
/// Sum of octave value-noise layers; each octave halves the cell size and
/// scales amplitude by `roughness`. `cell` is the coarsest cell in pixels.
ImageBuffer synth_texture(std::size_t width, std::size_t height, std::uint64_t seed,
                          double roughness = 0.6, double cell = 32.0);
/// Shapes, edges and stripes over a shaded background.
ImageBuffer synth_scene(std::size_t width, std::size_t height, std::uint64_t seed);

}  // namespace bitflux
