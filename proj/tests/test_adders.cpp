#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <array>
#include <string>
#include <vector>

#include "bitflux/adders.hpp"

using namespace bitflux;

namespace {
constexpr auto U = Polarity::Unipolar;
constexpr auto B = Polarity::Bipolar;

// columns of the worked DTSA table, one string per product stream
std::vector<Bitstream> table_streams() {
    return {Bitstream::from_string("10111111"), Bitstream::from_string("10001101"),
            Bitstream::from_string("11101111"), Bitstream::from_string("10111101")};
}

std::vector<Bitstream> random_streams(std::mt19937_64& rng, int m, int n) {
    std::vector<Bitstream> s;
    const double density = static_cast<double>(rng() % 1001) / 1000.0;
    std::bernoulli_distribution bit(density);
    for (int i = 0; i < m; ++i) {
        std::vector<std::uint8_t> bits(std::size_t{1} << n);
        for (auto& b : bits) b = bit(rng) ? 1 : 0;
        s.emplace_back(std::move(bits), StreamFormat::GB, U, n);
    }
    return s;
}
}  // namespace

TEST_CASE("ceil_log2") {
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(3) == 2);
    CHECK(ceil_log2(4) == 2);
    CHECK(ceil_log2(5) == 3);
    CHECK(ceil_log2(33) == 6);
}

TEST_CASE("cycle_sum") {
    const std::vector<std::uint8_t> a{1, 1, 1, 1}, b{0, 0, 1, 0}, z{0, 0, 0, 0};
    CHECK(cycle_sum(a) == 4);
    CHECK(cycle_sum(b) == 1);
    CHECK(cycle_sum(z) == 0);
}

TEST_CASE("emba on the worked table") {
    const auto s = table_streams();
    CHECK(emba_accumulate(s) == 24);
    CHECK(emba_mac_out(24, 8, 4, U) == 3.0);
    CHECK(emba_mac_out(32, 8, 4, U) == 4.0);
    CHECK(emba_mac_out(16, 8, 4, B) == 0.0);

    std::vector<Bitstream> ones(4, Bitstream::from_string("11111111"));
    CHECK(emba_accumulate(ones) == 32);
    std::vector<Bitstream> zeros(4, Bitstream::from_string("00000000"));
    CHECK(emba_accumulate(zeros) == 0);

    EmbaState st(4, 8);
    const std::vector<int> sums{4, 1, 3, 2, 4, 4, 2, 4};
    for (std::size_t c = 0; c < 8; ++c) CHECK(st.step(column(s, c)) == sums[c]);
    CHECK(st.accumulator() == 24);
    CHECK(st.cycle_sum_bits() == 3);
    CHECK(st.accumulator_bits() == 6);
}

TEST_CASE("ragged inputs are rejected") {
    std::vector<Bitstream> s{Bitstream::from_string("1010"), Bitstream::from_string("10101010")};
    CHECK_THROWS_AS(emba_accumulate(s), std::domain_error);
    CHECK_THROWS_AS(dtsa_run(s), std::domain_error);
    Lfsr l;
    CHECK_THROWS_AS(mux_add_stream(s, l), std::domain_error);
    EmbaState st(4, 8);
    const std::vector<std::uint8_t> three{1, 1, 1};
    CHECK_THROWS(st.step(three));
}

TEST_CASE("dtsa step examples") {
    DtsaState a(4, 8);
    const std::vector<std::uint8_t> all{1, 1, 1, 1}, one{0, 0, 1, 0};
    auto c = a.step(all);
    CHECK(c.a == 4);
    CHECK(c.y == 1);
    CHECK(c.q_next == 0);
    c = a.step(one);
    CHECK(c.a == 1);
    CHECK(c.y == 0);
    CHECK(c.q_next == 1);
}

TEST_CASE("dtsa on the worked table") {
    const auto s = table_streams();
    const auto r = dtsa_run(s);
    CHECK(r.y.to_string() == "10101111");
    CHECK(r.remainder == 0);
    const std::vector<std::array<std::int64_t, 5>> rows{
        {4, 0, 4, 1, 0}, {1, 0, 1, 0, 1}, {3, 1, 4, 1, 0}, {2, 0, 2, 0, 2},
        {4, 2, 6, 1, 2}, {4, 2, 6, 1, 2}, {2, 2, 4, 1, 0}, {4, 0, 4, 1, 0}};
    REQUIRE(r.trace.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(r.trace[i].cycle_sum == rows[i][0]);
        CHECK(r.trace[i].q_reg == rows[i][1]);
        CHECK(r.trace[i].a == rows[i][2]);
        CHECK(r.trace[i].y == rows[i][3]);
        CHECK(r.trace[i].q_next == rows[i][4]);
    }
    CHECK(dtsa_mac_out(6, 0, 8, 4, U) == 3.0);
}

TEST_CASE("dtsa small cases") {
    std::vector<Bitstream> zeros(4, Bitstream::from_string("00000000"));
    const auto z = dtsa_run(zeros);
    CHECK(ones_count(z.y) == 0);
    CHECK(z.remainder == 0);

    // seven ones spread over four streams
    std::vector<Bitstream> seven{
        Bitstream::from_string("11000000"), Bitstream::from_string("00110000"),
        Bitstream::from_string("00001100"), Bitstream::from_string("00000010")};
    const auto r = dtsa_run(seven);
    CHECK(ones_count(r.y) == 1);
    CHECK(r.remainder == 3);
    CHECK(dtsa_mac_out(0, 3, 8, 4, U) == 0.375);
    CHECK(dtsa_mac_out(4, 0, 8, 4, B) == 0.0);
    CHECK_THROWS_AS(dtsa_mac_out(1, 4, 8, 4, U), std::domain_error);
}

TEST_CASE("dtsa conservation, residual bound and emba equivalence") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 3000; ++t) {
        const int m = 2 + static_cast<int>(rng() % 7);
        const int n = 3 + static_cast<int>(rng() % 6);
        const auto s = random_streams(rng, m, n);
        std::int64_t total = 0;  // oracle: count bit by bit
        for (const auto& st : s)
            for (auto b : st.bits()) total += b;
        const auto r = dtsa_run(s);
        REQUIRE(m * ones_count(r.y) + r.remainder == total);
        REQUIRE(emba_accumulate(s) == total);
        for (const auto& c : r.trace) {
            REQUIRE(c.q_next < m);
            REQUIRE(c.q_next >= 0);
        }
        const auto len = static_cast<std::int64_t>(s[0].length());
        for (auto pol : {U, B})
            REQUIRE(dtsa_mac_out(ones_count(r.y), r.remainder, len, m, pol) ==
                    emba_mac_out(total, len, m, pol));
    }
}

TEST_CASE("width budgets") {
    DtsaState d(6, 256);
    CHECK(d.residual_bits() == 3);
    CHECK(d.output_counter_bits() == 9);
    EmbaState e(6, 256);
    CHECK(e.cycle_sum_bits() == 3);
    CHECK(e.accumulator_bits() == 11);
}

TEST_CASE("mux adder") {
    Lfsr l;
    std::vector<Bitstream> one{Bitstream::from_string("1010")};
    CHECK_THROWS_AS(mux_add_stream(one, l), std::domain_error);

    // selection among identical streams is the stream itself
    const auto s = Bitstream::from_string("1101001110100101");
    for (int m = 2; m <= 8; ++m) {
        std::vector<Bitstream> same(static_cast<std::size_t>(m), s);
        Lfsr lf(static_cast<std::uint16_t>(0x100 + m));
        CHECK(mux_add_stream(same, lf).bits()[0] == s[0]);
        Lfsr lf2(static_cast<std::uint16_t>(0x100 + m));
        CHECK(mux_add_stream(same, lf2).to_string() == s.to_string());
    }
}

TEST_CASE("mux adder follows the select recurrence") {
    const auto s = table_streams();
    Lfsr l, oracle;
    const auto out = mux_add_stream(s, l);
    std::string expect;
    for (std::size_t c = 0; c < 8; ++c) {
        const int hi = oracle.next_bit();
        const int lo = oracle.next_bit();
        expect += char('0' + s[static_cast<std::size_t>(hi * 2 + lo)][c]);
    }
    CHECK(out.to_string() == expect);
    CHECK(out.to_string() == "10011101");  // pinned from the first run
    CHECK(l == oracle);
}

TEST_CASE("mux adder non-power-of-two fan-in reduces modulo M") {
    std::mt19937_64 rng(4);
    const auto s = random_streams(rng, 6, 6);
    Lfsr l(0x4321), oracle(0x4321);
    const auto out = mux_add_stream(s, l);
    for (std::size_t c = 0; c < out.length(); ++c) {
        const std::uint32_t sel = oracle.next_word(3) % 6;
        REQUIRE(out[c] == s[sel][c]);
    }
}

TEST_CASE("mux adder is unbiased over seeds") {
    // four streams with known values; average decode over many seeds
    std::vector<Bitstream> s{
        Bitstream::from_string(std::string(64, '1')),
        Bitstream::from_string(std::string(16, '1') + std::string(48, '0')),
        Bitstream::from_string(std::string(40, '1') + std::string(24, '0')),
        Bitstream::from_string(std::string(64, '0'))};
    const double target = (64.0 + 16 + 40 + 0) / (4 * 64.0);
    const int seeds = 2000;
    double sum = 0.0;
    for (int k = 1; k <= seeds; ++k) {
        auto l = Lfsr::from_seed(static_cast<std::uint64_t>(k) * 7919);
        sum += decode_stream(mux_add_stream(s, l));
    }
    const double mean = sum / seeds;
    // each output bit is a fair draw with p = target
    const double sigma = std::sqrt(target * (1 - target) / (64.0 * seeds));
    CHECK(std::abs(mean - target) <= 3 * sigma);
}
