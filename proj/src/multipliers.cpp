#include "bitflux/multipliers.hpp"

#include <cstdlib>
#include <stdexcept>

#include "bitflux/generators.hpp"

namespace bitflux {

namespace {

void require_compatible(const BinaryWord& x, const BinaryWord& w) {
    if (x.width_bits() != w.width_bits() || x.polarity() != w.polarity())
        throw std::domain_error("multiplier operands must share width and polarity");
}

}  // namespace

Bitstream htc_combine(const Bitstream& rb, const Bitstream& tb) {
    if (rb.length() != tb.length() || rb.polarity() != tb.polarity())
        throw std::domain_error("htc_combine: streams must share length and polarity");
    std::vector<std::uint8_t> out(rb.length());
    if (rb.polarity() == Polarity::Unipolar) {
        for (std::size_t c = 0; c < out.size(); ++c) out[c] = rb[c] & tb[c];
    } else {
        for (std::size_t c = 0; c < out.size(); ++c) out[c] = (rb[c] ^ tb[c]) ^ 1u;
    }
    return Bitstream(std::move(out), StreamFormat::GB, rb.polarity(), rb.width_bits());
}

Bitstream htc_mul_stream(const BinaryWord& x, const BinaryWord& w) {
    require_compatible(x, w);
    return htc_combine(rb_generate(x), tb_generate(w));
}

CbscProduct cbsc_mul_unipolar(const BinaryWord& x, const BinaryWord& w) {
    require_compatible(x, w);
    if (x.polarity() != Polarity::Unipolar)
        throw std::domain_error("cbsc_mul_unipolar needs unipolar operands");
    const int n = x.width_bits();
    const auto budget_x = static_cast<std::uint64_t>(x.raw());
    // down counter loaded with W * 2^N
    const std::int64_t cycles = w.raw();

    CbscProduct p;
    for (std::int64_t c = 0; c < cycles; ++c)
        p.ones += rb_bit(budget_x, n, static_cast<std::uint64_t>(c));
    p.cycles_used = cycles;
    p.counter = p.ones;
    p.value = static_cast<double>(p.ones) / static_cast<double>(std::int64_t{1} << n);
    return p;
}

CbscProduct cbsc_mul_bipolar(const BinaryWord& x, const BinaryWord& w) {
    require_compatible(x, w);
    if (x.polarity() != Polarity::Bipolar)
        throw std::domain_error("cbsc_mul_bipolar needs bipolar operands");
    const int n = x.width_bits();
    const std::int64_t half = std::int64_t{1} << (n - 1);
    const std::int64_t length = std::int64_t{1} << n;

    const bool negative = (x.raw() < 0) != (w.raw() < 0);
    const std::int64_t mag_x = std::llabs(x.raw());
    const std::int64_t mag_w = std::llabs(w.raw());
    // bipolar ones budget of +|x|; 2^N means the all-ones stream
    const std::int64_t budget_x = mag_x + half;

    CbscProduct p;
    for (std::int64_t c = 0; c < mag_w; ++c) {
        const bool one = budget_x == length ||
                         rb_bit(static_cast<std::uint64_t>(budget_x), n,
                                static_cast<std::uint64_t>(c)) != 0;
        p.counter += one ? 1 : -1;
        p.ones += one ? 1 : 0;
    }
    p.cycles_used = mag_w;
    const double magnitude = static_cast<double>(p.counter) / static_cast<double>(half);
    p.value = negative ? -magnitude : magnitude;
    return p;
}

CbscProduct cbsc_mul(const BinaryWord& x, const BinaryWord& w) {
    return x.polarity() == Polarity::Unipolar ? cbsc_mul_unipolar(x, w) : cbsc_mul_bipolar(x, w);
}

}  // namespace bitflux
