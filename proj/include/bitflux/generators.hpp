#pragma once

#include <cstdint>
#include <vector>

#include "bitflux/encodings.hpp"

namespace bitflux {

/// Number of ones the word occupies in a 2^N-cycle stream:
/// raw (unipolar) or raw + 2^(N-1) (bipolar).
std::int64_t ones_budget(const BinaryWord& word);

/// Regulated-bitstream bit for counter value `cycle`.
///
/// With k = trailing ones of the cycle counter, the generator emits bit
/// (N-1-k) of `budget`, and a forced 0 on the all-ones counter value. Bit
/// u_(N-1) therefore appears 2^(N-1) times, u_(N-2) 2^(N-2) times and so on.
std::uint8_t rb_bit(std::uint64_t budget, int width_bits, std::uint64_t cycle);

Bitstream rb_generate(const BinaryWord& word);
Bitstream tb_generate(const BinaryWord& word);

/// Unipolar RB of an arbitrary budget in [0, 2^N - 1].
Bitstream rb_from_budget(std::uint64_t budget, int width_bits, Polarity tag = Polarity::Unipolar);
Bitstream tb_from_budget(std::uint64_t budget, int width_bits, Polarity tag = Polarity::Unipolar);

/// Counts ones, then packs them at the front. Polarity and width are kept.
Bitstream gb_to_tb(const Bitstream& stream);

/// Cycle-by-cycle RB source driven by an up-counter.
class RbGenerator {
public:
    explicit RbGenerator(const BinaryWord& word);
    std::uint8_t next();
    std::uint64_t cycle() const { return cycle_; }

private:
    std::uint64_t budget_;
    int width_;
    std::uint64_t cycle_ = 0;
};

/// Cycle-by-cycle TB source: ones for the first ones_budget cycles.
class TbGenerator {
public:
    explicit TbGenerator(const BinaryWord& word);
    std::uint8_t next();
    std::uint64_t cycle() const { return cycle_; }

private:
    std::uint64_t budget_;
    std::uint64_t length_;
    std::uint64_t cycle_ = 0;
};

/// 16-bit Fibonacci LFSR, polynomial x^16 + x^14 + x^13 + x^11 + 1.
///
/// Each step outputs the pre-shift LSB, then shifts right and inserts the
/// feedback bit at the MSB. Period is 2^16 - 1 for any nonzero seed.
class Lfsr {
public:
    static constexpr std::uint16_t kDefaultSeed = 0xACE1;

    /// Throws std::domain_error for a zero seed.
    explicit Lfsr(std::uint16_t seed = kDefaultSeed);

    /// Folds a 64-bit seed into a nonzero 16-bit register value.
    static Lfsr from_seed(std::uint64_t seed);

    std::uint8_t next_bit();

    /// Advances `nbits` steps (1..16); bits are returned oldest-first.
    std::vector<std::uint8_t> next_bits(int nbits);

    /// Advances `nbits` steps and packs the outputs, oldest bit as MSB.
    std::uint32_t next_word(int nbits);

    std::uint16_t state() const { return reg_; }

    friend bool operator==(const Lfsr&, const Lfsr&) = default;

private:
    std::uint16_t reg_;
};

}  // namespace bitflux
