#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "bitflux/generators.hpp"
#include "bitflux/multipliers.hpp"

using namespace bitflux;

namespace {
constexpr auto U = Polarity::Unipolar;
constexpr auto B = Polarity::Bipolar;

std::int64_t prefix_ones(const Bitstream& s, std::int64_t m) {
    std::int64_t n = 0;
    for (std::int64_t c = 0; c < m; ++c) n += s[static_cast<std::size_t>(c)];
    return n;
}
}  // namespace

TEST_CASE("htc unipolar worked example") {
    const auto p = htc_mul_stream(BinaryWord(6, 3, U), BinaryWord(6, 3, U));
    CHECK(p.to_string() == "11101100");
    CHECK(ones_count(p) == 5);
    CHECK(decode_stream(p) == 0.625);
    CHECK(p.format() == StreamFormat::GB);
    CHECK(ones_count(htc_mul_stream(BinaryWord(5, 3, U), BinaryWord(0, 3, U))) == 0);
}

TEST_CASE("htc bipolar with x = -1 inverts tb(w)") {
    for (std::int64_t w = -4; w <= 3; ++w) {
        const BinaryWord ww(w, 3, B);
        const auto p = htc_mul_stream(BinaryWord(-4, 3, B), ww);
        CHECK(decode_stream(p) == -dequantize(ww));
    }
}

TEST_CASE("htc rejects mismatched operands") {
    CHECK_THROWS_AS(htc_mul_stream(BinaryWord(1, 3, U), BinaryWord(1, 4, U)), std::domain_error);
    CHECK_THROWS_AS(htc_mul_stream(BinaryWord(1, 3, U), BinaryWord(1, 3, B)), std::domain_error);
    CHECK_THROWS_AS(cbsc_mul(BinaryWord(1, 3, U), BinaryWord(1, 3, B)), std::domain_error);
}

TEST_CASE("htc unipolar error bound N/2^N") {
    for (int n = 2; n <= 6; ++n)
        for (std::int64_t a = 0; a < (1 << n); ++a)
            for (std::int64_t b = 0; b < (1 << n); ++b) {
                const BinaryWord x(a, n, U), w(b, n, U);
                const double err = decode_stream(htc_mul_stream(x, w)) - dequantize(x) * dequantize(w);
                REQUIRE(std::abs(err) <= n / std::ldexp(1.0, n));
            }
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20000; ++i) {
        const BinaryWord x(static_cast<std::int64_t>(rng() % 256), 8, U);
        const BinaryWord w(static_cast<std::int64_t>(rng() % 256), 8, U);
        const double err = decode_stream(htc_mul_stream(x, w)) - dequantize(x) * dequantize(w);
        REQUIRE(std::abs(err) <= 8.0 / 256.0);
    }
}

TEST_CASE("cbsc unipolar examples") {
    const auto p = cbsc_mul_unipolar(BinaryWord(6, 3, U), BinaryWord(6, 3, U));
    CHECK(p.ones == 5);
    CHECK(p.value == 0.625);
    CHECK(p.cycles_used == 6);

    const auto z = cbsc_mul_unipolar(BinaryWord(0, 3, U), BinaryWord(5, 3, U));
    CHECK(z.ones == 0);
    CHECK(z.value == 0.0);

    // w at its maximum counts every cycle except the forced-zero slot
    for (std::int64_t a = 0; a < 256; ++a) {
        const BinaryWord x(a, 8, U);
        const auto full = cbsc_mul_unipolar(x, BinaryWord(255, 8, U));
        REQUIRE(full.ones == a);
        REQUIRE(std::abs(full.value - dequantize(x)) <= 1.0 / 256);
    }
}

TEST_CASE("cbsc unipolar equals htc exhaustively for N <= 6") {
    for (int n = 2; n <= 6; ++n)
        for (std::int64_t a = 0; a < (1 << n); ++a)
            for (std::int64_t b = 0; b < (1 << n); ++b) {
                const BinaryWord x(a, n, U), w(b, n, U);
                const auto c = cbsc_mul_unipolar(x, w);
                REQUIRE(c.ones == ones_count(htc_mul_stream(x, w)));
                REQUIRE(c.ones == prefix_ones(rb_generate(x), b));
            }
}

TEST_CASE("cbsc bipolar examples") {
    const auto zero = cbsc_mul_bipolar(BinaryWord(3, 3, B), BinaryWord(0, 3, B));
    CHECK(zero.cycles_used == 0);
    CHECK(zero.value == 0.0);

    const auto pole = cbsc_mul_bipolar(BinaryWord(-4, 3, B), BinaryWord(-4, 3, B));
    CHECK(pole.cycles_used == 4);
    CHECK(pole.ones == 4);
    CHECK(pole.value == 1.0);

    // |x| = 0.5 drives the bipolar RB of budget 2 + 4 = 6 ("11101110"); two
    // cycles of it count +1 +1
    const auto half = cbsc_mul_bipolar(BinaryWord(2, 3, B), BinaryWord(-2, 3, B));
    CHECK(half.ones == 2);
    CHECK(half.counter == 2);
    CHECK(half.value == -0.5);
}

TEST_CASE("cbsc bipolar counter identity, sign rule and error bound") {
    for (int n = 2; n <= 7; ++n) {
        const std::int64_t h = std::int64_t{1} << (n - 1);
        for (std::int64_t a = -h; a < h; ++a)
            for (std::int64_t b = -h; b < h; ++b) {
                const BinaryWord x(a, n, B), w(b, n, B);
                const auto p = cbsc_mul_bipolar(x, w);
                const std::int64_t mw = std::llabs(b);
                REQUIRE(p.cycles_used == mw);
                REQUIRE(p.counter == 2 * p.ones - mw);
                // oracle: count the magnitude stream prefix directly
                const std::int64_t budget = std::llabs(a) + h;
                std::int64_t ones = 0;
                for (std::int64_t c = 0; c < mw; ++c)
                    ones += budget == 2 * h ? 1 : rb_bit(static_cast<std::uint64_t>(budget), n,
                                                         static_cast<std::uint64_t>(c));
                REQUIRE(p.ones == ones);
                const double exact = dequantize(x) * dequantize(w);
                if (exact != 0.0 && p.value != 0.0) REQUIRE((exact < 0) == (p.value < 0));
                REQUIRE(std::abs(p.value - exact) * static_cast<double>(h) <= n / 2.0);
                if (a == -h) REQUIRE(p.value == exact);  // pole exactness
            }
    }
}
