#include "bitflux/adders.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace bitflux {

namespace {

std::size_t common_length(std::span<const Bitstream> streams) {
    if (streams.empty()) throw std::domain_error("adder needs at least one input stream");
    const std::size_t length = streams.front().length();
    for (const auto& s : streams)
        if (s.length() != length)
            throw std::domain_error("adder inputs have mismatched lengths (" +
                                    std::to_string(length) + " vs " +
                                    std::to_string(s.length()) + ")");
    return length;
}

void check_width(std::int64_t value, int bits, const char* what) {
    if (value < 0 || (bits < 63 && value >= (std::int64_t{1} << bits)))
        throw std::logic_error(std::string(what) + " exceeds its " + std::to_string(bits) +
                               "-bit budget");
}

}  // namespace

int ceil_log2(std::uint64_t v) {
    if (v <= 1) return 0;
    return std::bit_width(v - 1);
}

int cycle_sum(std::span<const std::uint8_t> product_bits) {
    int s = 0;
    for (auto b : product_bits) s += b;
    return s;
}

std::vector<std::uint8_t> column(std::span<const Bitstream> streams, std::size_t cycle) {
    std::vector<std::uint8_t> col(streams.size());
    for (std::size_t i = 0; i < streams.size(); ++i) col[i] = streams[i][cycle];
    return col;
}

EmbaState::EmbaState(int fan_in, std::size_t length) : fan_in_(fan_in), length_(length) {
    if (fan_in < 1) throw std::domain_error("EMBA fan-in must be >= 1");
}

int EmbaState::cycle_sum_bits() const { return ceil_log2(static_cast<std::uint64_t>(fan_in_) + 1); }

int EmbaState::accumulator_bits() const {
    return ceil_log2(static_cast<std::uint64_t>(fan_in_) * length_ + 1);
}

int EmbaState::step(std::span<const std::uint8_t> product_bits) {
    if (product_bits.size() != static_cast<std::size_t>(fan_in_))
        throw std::domain_error("EMBA step: expected " + std::to_string(fan_in_) + " bits");
    if (cycles_ >= length_) throw std::logic_error("EMBA stepped past stream length");
    const int sum = cycle_sum(product_bits);
    check_width(sum, cycle_sum_bits(), "EMBA cycle sum");
    accumulator_ += sum;
    check_width(accumulator_, accumulator_bits(), "EMBA accumulator");
    ++cycles_;
    return sum;
}

std::int64_t emba_accumulate(std::span<const Bitstream> streams) {
    const std::size_t length = common_length(streams);
    EmbaState state(static_cast<int>(streams.size()), length);
    std::vector<std::uint8_t> col(streams.size());
    for (std::size_t c = 0; c < length; ++c) {
        for (std::size_t i = 0; i < streams.size(); ++i) col[i] = streams[i][c];
        state.step(col);
    }
    return state.accumulator();
}

double emba_mac_out(std::int64_t total, std::int64_t length, int fan_in, Polarity polarity) {
    if (total < 0 || total > static_cast<std::int64_t>(fan_in) * length)
        throw std::domain_error("EMBA total out of range");
    const double p = static_cast<double>(total) / static_cast<double>(length);
    return polarity == Polarity::Unipolar ? p : 2.0 * p - fan_in;
}

DtsaState::DtsaState(int fan_in, std::size_t length) : fan_in_(fan_in), length_(length) {
    if (fan_in < 1) throw std::domain_error("DTSA fan-in must be >= 1");
}

int DtsaState::residual_bits() const { return ceil_log2(static_cast<std::uint64_t>(fan_in_)); }

int DtsaState::output_counter_bits() const { return ceil_log2(length_ + 1); }

DtsaCycle DtsaState::step(std::span<const std::uint8_t> product_bits) {
    if (product_bits.size() != static_cast<std::size_t>(fan_in_))
        throw std::domain_error("DTSA step: expected " + std::to_string(fan_in_) + " bits");
    if (cycles_ >= length_) throw std::logic_error("DTSA stepped past stream length");
    DtsaCycle row;
    row.cycle_sum = cycle_sum(product_bits);
    row.q_reg = q_reg_;
    row.a = q_reg_ + row.cycle_sum;
    // A <= 2M-1, so one subtraction always lands below M
    if (row.a >= fan_in_) {
        row.y = 1;
        row.q_next = row.a - fan_in_;
    } else {
        row.y = 0;
        row.q_next = row.a;
    }
    q_reg_ = row.q_next;
    y_count_ += row.y;
    ++cycles_;
    if (q_reg_ >= fan_in_) throw std::logic_error("DTSA residual not below fan-in");
    check_width(q_reg_, residual_bits(), "DTSA residual");
    check_width(y_count_, output_counter_bits(), "DTSA output counter");
    return row;
}

DtsaResult dtsa_run(std::span<const Bitstream> streams) {
    const std::size_t length = common_length(streams);
    DtsaState state(static_cast<int>(streams.size()), length);
    std::vector<std::uint8_t> y(length);
    std::vector<DtsaCycle> trace;
    trace.reserve(length);
    std::vector<std::uint8_t> col(streams.size());
    for (std::size_t c = 0; c < length; ++c) {
        for (std::size_t i = 0; i < streams.size(); ++i) col[i] = streams[i][c];
        trace.push_back(state.step(col));
        y[c] = trace.back().y;
    }
    const auto& first = streams.front();
    return DtsaResult{Bitstream(std::move(y), StreamFormat::GB, first.polarity(), first.width_bits()),
                      state.q_reg(), std::move(trace)};
}

double dtsa_mac_out(std::int64_t y_ones, std::int64_t remainder, std::int64_t length, int fan_in,
                    Polarity polarity) {
    if (remainder < 0 || remainder >= fan_in) throw std::domain_error("DTSA remainder must be < M");
    const std::int64_t final_ones = static_cast<std::int64_t>(fan_in) * y_ones + remainder;
    return emba_mac_out(final_ones, length, fan_in, polarity);
}

Bitstream mux_add_stream(std::span<const Bitstream> streams, Lfsr& lfsr) {
    const std::size_t length = common_length(streams);
    const auto fan_in = static_cast<std::uint32_t>(streams.size());
    if (fan_in < 2) throw std::domain_error("MUX adder needs fan-in >= 2");
    const int select_bits = ceil_log2(fan_in);
    std::vector<std::uint8_t> out(length);
    for (std::size_t c = 0; c < length; ++c) {
        const std::uint32_t select = lfsr.next_word(select_bits) % fan_in;
        out[c] = streams[select][c];
    }
    const auto& first = streams.front();
    return Bitstream(std::move(out), StreamFormat::GB, first.polarity(), first.width_bits());
}

}  // namespace bitflux
