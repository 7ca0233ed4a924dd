#include "bitflux/generators.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace bitflux {

std::int64_t ones_budget(const BinaryWord& word) {
    if (word.polarity() == Polarity::Unipolar) return word.raw();
    return word.raw() + (std::int64_t{1} << (word.width_bits() - 1));
}

std::uint8_t rb_bit(std::uint64_t budget, int width_bits, std::uint64_t cycle) {
    if (width_bits < 1 || width_bits > 63)
        throw std::domain_error("rb_bit: width out of range");
    const std::uint64_t length = std::uint64_t{1} << width_bits;
    if (budget >= length || cycle >= length)
        throw std::domain_error("rb_bit: budget " + std::to_string(budget) + " or cycle " +
                                std::to_string(cycle) + " out of range for N=" +
                                std::to_string(width_bits));
    const int k = std::countr_one(cycle);
    if (k >= width_bits) return 0;
    return static_cast<std::uint8_t>((budget >> (width_bits - 1 - k)) & 1u);
}

Bitstream rb_from_budget(std::uint64_t budget, int width_bits, Polarity tag) {
    const std::uint64_t length = std::uint64_t{1} << width_bits;
    std::vector<std::uint8_t> bits(length);
    for (std::uint64_t c = 0; c < length; ++c) bits[c] = rb_bit(budget, width_bits, c);
    return Bitstream(std::move(bits), StreamFormat::RB, tag, width_bits);
}

Bitstream tb_from_budget(std::uint64_t budget, int width_bits, Polarity tag) {
    const std::uint64_t length = std::uint64_t{1} << width_bits;
    if (budget > length) throw std::domain_error("tb budget exceeds stream length");
    std::vector<std::uint8_t> bits(length, 0);
    std::fill_n(bits.begin(), budget, std::uint8_t{1});
    return Bitstream(std::move(bits), StreamFormat::TB, tag, width_bits);
}

Bitstream rb_generate(const BinaryWord& word) {
    return rb_from_budget(static_cast<std::uint64_t>(ones_budget(word)), word.width_bits(),
                          word.polarity());
}

Bitstream tb_generate(const BinaryWord& word) {
    return tb_from_budget(static_cast<std::uint64_t>(ones_budget(word)), word.width_bits(),
                          word.polarity());
}

Bitstream gb_to_tb(const Bitstream& stream) {
    return tb_from_budget(static_cast<std::uint64_t>(ones_count(stream)), stream.width_bits(),
                          stream.polarity());
}

RbGenerator::RbGenerator(const BinaryWord& word)
    : budget_(static_cast<std::uint64_t>(ones_budget(word))), width_(word.width_bits()) {}

std::uint8_t RbGenerator::next() {
    const auto bit = rb_bit(budget_, width_, cycle_);
    cycle_ = (cycle_ + 1) & ((std::uint64_t{1} << width_) - 1);
    return bit;
}

TbGenerator::TbGenerator(const BinaryWord& word)
    : budget_(static_cast<std::uint64_t>(ones_budget(word))),
      length_(std::uint64_t{1} << word.width_bits()) {}

std::uint8_t TbGenerator::next() {
    const std::uint8_t bit = cycle_ < budget_ ? 1 : 0;
    cycle_ = (cycle_ + 1) % length_;
    return bit;
}

Lfsr::Lfsr(std::uint16_t seed) : reg_(seed) {
    if (seed == 0) throw std::domain_error("LFSR seed must be nonzero");
}

Lfsr Lfsr::from_seed(std::uint64_t seed) {
    const auto folded =
        static_cast<std::uint16_t>(seed ^ (seed >> 16) ^ (seed >> 32) ^ (seed >> 48));
    return Lfsr(folded == 0 ? kDefaultSeed : folded);
}

std::uint8_t Lfsr::next_bit() {
    const auto out = static_cast<std::uint8_t>(reg_ & 1u);
    // taps 16,14,13,11 -> register bits 0,2,3,5 in the right-shifting form
    const unsigned fb = (reg_ ^ (reg_ >> 2) ^ (reg_ >> 3) ^ (reg_ >> 5)) & 1u;
    reg_ = static_cast<std::uint16_t>((reg_ >> 1) | (fb << 15));
    return out;
}

std::vector<std::uint8_t> Lfsr::next_bits(int nbits) {
    if (nbits < 1 || nbits > 16) throw std::domain_error("nbits must be in [1, 16]");
    std::vector<std::uint8_t> out(static_cast<std::size_t>(nbits));
    for (auto& b : out) b = next_bit();
    return out;
}

std::uint32_t Lfsr::next_word(int nbits) {
    if (nbits < 1 || nbits > 16) throw std::domain_error("nbits must be in [1, 16]");
    std::uint32_t v = 0;
    for (int i = 0; i < nbits; ++i) v = (v << 1) | next_bit();
    return v;
}

}  // namespace bitflux
