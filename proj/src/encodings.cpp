#include "bitflux/encodings.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bitflux {

std::string_view to_string(Polarity p) {
    return p == Polarity::Unipolar ? "unipolar" : "bipolar";
}

std::string_view to_string(StreamFormat f) {
    switch (f) {
        case StreamFormat::GB: return "GB";
        case StreamFormat::RB: return "RB";
        case StreamFormat::TB: return "TB";
    }
    return "?";
}

Polarity parse_polarity(std::string_view s) {
    if (s == "unipolar") return Polarity::Unipolar;
    if (s == "bipolar") return Polarity::Bipolar;
    throw std::invalid_argument("unknown polarity: " + std::string(s));
}

static void check_width(int width_bits) {
    if (width_bits < kMinWidth || width_bits > kMaxWidth)
        throw std::domain_error("width_bits must be in [2, 16], got " + std::to_string(width_bits));
}

std::int64_t min_raw(int width_bits, Polarity polarity) {
    return polarity == Polarity::Unipolar ? 0 : -(std::int64_t{1} << (width_bits - 1));
}

std::int64_t max_raw(int width_bits, Polarity polarity) {
    return polarity == Polarity::Unipolar ? (std::int64_t{1} << width_bits) - 1
                                          : (std::int64_t{1} << (width_bits - 1)) - 1;
}

std::int64_t value_denominator(int width_bits, Polarity polarity) {
    return polarity == Polarity::Unipolar ? std::int64_t{1} << width_bits
                                          : std::int64_t{1} << (width_bits - 1);
}

BinaryWord::BinaryWord(std::int64_t raw, int width_bits, Polarity polarity)
    : raw_(raw), width_(width_bits), polarity_(polarity) {
    check_width(width_bits);
    if (raw < bitflux::min_raw(width_bits, polarity) || raw > bitflux::max_raw(width_bits, polarity))
        throw std::domain_error("raw value " + std::to_string(raw) + " out of range for " +
                                std::to_string(width_bits) + "-bit " +
                                std::string(to_string(polarity)) + " word");
}

std::int64_t BinaryWord::min_raw() const { return bitflux::min_raw(width_, polarity_); }
std::int64_t BinaryWord::max_raw() const { return bitflux::max_raw(width_, polarity_); }

Bitstream::Bitstream(std::vector<std::uint8_t> bits, StreamFormat format, Polarity polarity,
                     int width_bits)
    : bits_(std::move(bits)), format_(format), polarity_(polarity), width_(width_bits) {
    check_width(width_bits);
    if (bits_.size() != (std::size_t{1} << width_bits))
        throw std::domain_error("bitstream length " + std::to_string(bits_.size()) +
                                " != 2^" + std::to_string(width_bits));
    for (auto& b : bits_)
        if (b > 1) throw std::domain_error("bitstream entries must be 0 or 1");
    if (format_ == StreamFormat::TB && !std::is_sorted(bits_.rbegin(), bits_.rend()))
        throw std::domain_error("TB stream must have all ones before all zeros");
}

Bitstream Bitstream::from_string(std::string_view text, StreamFormat format, Polarity polarity) {
    if (text.size() < 4 || !std::has_single_bit(text.size()))
        throw std::domain_error("bitstream string length must be a power of two >= 4");
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1')
            throw std::domain_error("bitstream string may only contain '0' and '1'");
        bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    const int width = std::countr_zero(text.size());
    return Bitstream(std::move(bits), format, polarity, width);
}

std::string Bitstream::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) s[i] = '1';
    return s;
}

BinaryWord quantize(double value, int width_bits, Polarity polarity) {
    check_width(width_bits);
    const double lo = polarity == Polarity::Unipolar ? 0.0 : -1.0;
    if (!(value >= lo && value <= 1.0))
        throw std::domain_error("value " + std::to_string(value) + " outside " +
                                std::string(to_string(polarity)) + " domain");
    const double scaled = value * static_cast<double>(value_denominator(width_bits, polarity));
    // std::round is half-away-from-zero
    auto raw = static_cast<std::int64_t>(std::round(scaled));
    raw = std::clamp(raw, min_raw(width_bits, polarity), max_raw(width_bits, polarity));
    return BinaryWord(raw, width_bits, polarity);
}

double dequantize(const BinaryWord& word) {
    return static_cast<double>(word.raw()) /
           static_cast<double>(value_denominator(word.width_bits(), word.polarity()));
}

std::int64_t ones_count(std::span<const std::uint8_t> bits) {
    return std::accumulate(bits.begin(), bits.end(), std::int64_t{0});
}

std::int64_t ones_count(const Bitstream& stream) { return ones_count(stream.bits()); }

double decode_stream(const Bitstream& stream) {
    const double p = static_cast<double>(ones_count(stream)) / static_cast<double>(stream.length());
    return stream.polarity() == Polarity::Unipolar ? p : 2.0 * p - 1.0;
}

}  // namespace bitflux
