#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "bitflux/encodings.hpp"
#include "bitflux/generators.hpp"

namespace bitflux {

enum class Variant { Cbsc, MuxHtc, Emba, Dtsa };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view s);

struct MacConfig {
    Variant variant = Variant::Emba;
    Polarity polarity = Polarity::Unipolar;
    int width_bits = 8;
    int fan_in = 4;
    std::uint64_t seed = Lfsr::kDefaultSeed;  // MUX select source only

    /// Throws std::domain_error unless M >= 2 and N in [2, 16].
    void validate() const;
};

struct MacResult {
    double value = 0.0;
    double exact = 0.0;
    double error = 0.0;
    // variant-specific bookkeeping
    std::int64_t total_ones = 0;  // EMBA accumulator / DTSA final ones / MUX output ones
    std::int64_t y_ones = 0;      // DTSA only
    std::int64_t remainder = 0;   // DTSA only
    std::int64_t cycles = 0;      // CBSC: summed counted cycles; others: stream length
};

/// exact = sum of dequantized products.
double exact_mac(std::span<const BinaryWord> x, std::span<const BinaryWord> w);

/// One M-input MAC. x feeds the RB (counted) side, w the TB (counting) side.
/// The MUX variant draws selects from an LFSR seeded from cfg.seed.
MacResult mac_run(const MacConfig& cfg, std::span<const BinaryWord> x,
                  std::span<const BinaryWord> w);

/// Same, but the MUX variant consumes selects from `select_source`, which is
/// left advanced. Other variants ignore it.
MacResult mac_run(const MacConfig& cfg, std::span<const BinaryWord> x,
                  std::span<const BinaryWord> w, Lfsr& select_source);

/// K = size/M blocks of mac_run summed at binary readout. MUX block k uses
/// seed cfg.seed + k.
MacResult mac_tiled(const MacConfig& cfg, std::span<const BinaryWord> x,
                    std::span<const BinaryWord> w);

struct ChainResult {
    MacResult result;
    std::vector<Bitstream> chained_tb;  // stage-1 Y streams after GB->TB packing
    std::vector<std::int64_t> dropped_remainders;
};

/// Two DTSA stages. Stage 1 runs M DTSA MACs over x1/w1 (M*M words, block j
/// is words [j*M, (j+1)*M)). Each Y stream is packed to TB, so its remainder
/// is dropped, and multiplied against RB(w2[j]) in a stage-2 DTSA MAC.
///
/// result.exact = sum_j dequantize(w2[j]) * (stage-1 exact_j / M), the value
/// the scaled stage-1 streams stand for.
ChainResult mac_chain_dtsa(const MacConfig& cfg, std::span<const BinaryWord> x1,
                           std::span<const BinaryWord> w1, std::span<const BinaryWord> w2);

}  // namespace bitflux
