#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bitflux/encodings.hpp"
#include "bitflux/generators.hpp"

namespace bitflux {

/// ceil(log2(v)) for v >= 1; a register holding [0, max] needs ceil_log2(max + 1) bits.
int ceil_log2(std::uint64_t v);

/// Number of '1' product bits in one cycle.
int cycle_sum(std::span<const std::uint8_t> product_bits);

/// Bits of every stream at `cycle`, in stream order.
std::vector<std::uint8_t> column(std::span<const Bitstream> streams, std::size_t cycle);

// ---------------------------------------------------------------------------
// EMBA: exact multi-input binary accumulator

class EmbaState {
public:
    EmbaState(int fan_in, std::size_t length);

    /// Adds one cycle's product bits; returns the cycle sum.
    int step(std::span<const std::uint8_t> product_bits);

    std::int64_t accumulator() const { return accumulator_; }
    int fan_in() const { return fan_in_; }
    std::size_t length() const { return length_; }

    /// ceil(log2(M+1)) and ceil(log2(M*L+1)).
    int cycle_sum_bits() const;
    int accumulator_bits() const;

private:
    int fan_in_;
    std::size_t length_;
    std::size_t cycles_ = 0;
    std::int64_t accumulator_ = 0;
};

/// Total ones over all streams; throws std::domain_error on ragged lengths.
std::int64_t emba_accumulate(std::span<const Bitstream> streams);

/// total/L (unipolar) or 2*total/L - M (bipolar).
double emba_mac_out(std::int64_t total, std::int64_t length, int fan_in, Polarity polarity);

// ---------------------------------------------------------------------------
// DTSA: deterministic threshold-based scaled adder

struct DtsaCycle {
    int cycle_sum = 0;
    std::int64_t q_reg = 0;
    std::int64_t a = 0;
    std::uint8_t y = 0;
    std::int64_t q_next = 0;
};

class DtsaState {
public:
    DtsaState(int fan_in, std::size_t length);

    DtsaCycle step(std::span<const std::uint8_t> product_bits);

    std::int64_t q_reg() const { return q_reg_; }
    std::int64_t y_count() const { return y_count_; }
    int fan_in() const { return fan_in_; }
    std::size_t length() const { return length_; }

    /// ceil(log2(M)) residual bits and ceil(log2(L+1)) output-counter bits.
    int residual_bits() const;
    int output_counter_bits() const;

private:
    int fan_in_;
    std::size_t length_;
    std::size_t cycles_ = 0;
    std::int64_t q_reg_ = 0;
    std::int64_t y_count_ = 0;
};

struct DtsaResult {
    Bitstream y;
    std::int64_t remainder = 0;
    std::vector<DtsaCycle> trace;
};

/// Runs the threshold adder over every cycle. M*ones(Y) + remainder equals
/// the total product ones.
DtsaResult dtsa_run(std::span<const Bitstream> streams);

/// (M*y_ones + remainder) mapped like emba_mac_out.
double dtsa_mac_out(std::int64_t y_ones, std::int64_t remainder, std::int64_t length, int fan_in,
                    Polarity polarity);

// ---------------------------------------------------------------------------
// MUX scaled adder (stochastic baseline)

/// Per cycle draws ceil(log2 M) LFSR bits as a select index (reduced modulo M
/// when M is not a power of two) and forwards that stream's bit. Needs M >= 2.
Bitstream mux_add_stream(std::span<const Bitstream> streams, Lfsr& lfsr);

}  // namespace bitflux
