#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bitflux {

enum class Polarity { Unipolar, Bipolar };

/// GB: arbitrary arrangement, RB: regulated (weight-distributed), TB: temporal (ones first).
enum class StreamFormat { GB, RB, TB };

std::string_view to_string(Polarity p);
std::string_view to_string(StreamFormat f);
Polarity parse_polarity(std::string_view s);

inline constexpr int kMinWidth = 2;
inline constexpr int kMaxWidth = 16;

/// An N-bit fractional operand.
///
/// Unipolar words hold raw in [0, 2^N - 1] and represent raw / 2^N.
/// Bipolar words hold a two's-complement raw in [-2^(N-1), 2^(N-1) - 1]
/// and represent raw / 2^(N-1).
class BinaryWord {
public:
    /// Throws std::domain_error when raw or width is out of range.
    BinaryWord(std::int64_t raw, int width_bits, Polarity polarity);

    std::int64_t raw() const { return raw_; }
    int width_bits() const { return width_; }
    Polarity polarity() const { return polarity_; }

    std::int64_t min_raw() const;
    std::int64_t max_raw() const;

    friend bool operator==(const BinaryWord&, const BinaryWord&) = default;

private:
    std::int64_t raw_;
    int width_;
    Polarity polarity_;
};

std::int64_t min_raw(int width_bits, Polarity polarity);
std::int64_t max_raw(int width_bits, Polarity polarity);

/// Denominator of the value map: 2^N (unipolar) or 2^(N-1) (bipolar).
std::int64_t value_denominator(int width_bits, Polarity polarity);

/// A bit sequence of length 2^N, index 0 = cycle 0.
class Bitstream {
public:
    Bitstream(std::vector<std::uint8_t> bits, StreamFormat format, Polarity polarity,
              int width_bits);

    /// Parses a '0'/'1' string; length must be a power of two >= 4.
    static Bitstream from_string(std::string_view text, StreamFormat format = StreamFormat::GB,
                                 Polarity polarity = Polarity::Unipolar);

    std::size_t length() const { return bits_.size(); }
    int width_bits() const { return width_; }
    StreamFormat format() const { return format_; }
    Polarity polarity() const { return polarity_; }

    std::uint8_t operator[](std::size_t cycle) const { return bits_[cycle]; }
    std::span<const std::uint8_t> bits() const { return bits_; }

    std::string to_string() const;

    friend bool operator==(const Bitstream&, const Bitstream&) = default;

private:
    std::vector<std::uint8_t> bits_;
    StreamFormat format_;
    Polarity polarity_;
    int width_;
};

/// Rounds half away from zero and saturates to the representable range.
/// Throws std::domain_error for values outside [0,1] / [-1,1].
BinaryWord quantize(double value, int width_bits, Polarity polarity);

double dequantize(const BinaryWord& word);

std::int64_t ones_count(const Bitstream& stream);
std::int64_t ones_count(std::span<const std::uint8_t> bits);

/// ones/L (unipolar) or 2*ones/L - 1 (bipolar).
double decode_stream(const Bitstream& stream);

}  // namespace bitflux
