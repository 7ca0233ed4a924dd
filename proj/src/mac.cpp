#include "bitflux/mac.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "bitflux/adders.hpp"
#include "bitflux/multipliers.hpp"

namespace bitflux {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::Cbsc: return "cbsc";
        case Variant::MuxHtc: return "mux";
        case Variant::Emba: return "emba";
        case Variant::Dtsa: return "dtsa";
    }
    return "?";
}

Variant parse_variant(std::string_view s) {
    if (s == "cbsc") return Variant::Cbsc;
    if (s == "mux") return Variant::MuxHtc;
    if (s == "emba") return Variant::Emba;
    if (s == "dtsa") return Variant::Dtsa;
    throw std::invalid_argument("unknown MAC variant: " + std::string(s));
}

void MacConfig::validate() const {
    if (fan_in < 2) throw std::domain_error("MAC fan-in must be >= 2");
    if (width_bits < kMinWidth || width_bits > kMaxWidth)
        throw std::domain_error("MAC width must be in [2, 16]");
}

namespace {

void check_operands(const MacConfig& cfg, std::span<const BinaryWord> x,
                    std::span<const BinaryWord> w, std::size_t expected) {
    if (x.size() != expected || w.size() != expected)
        throw std::domain_error("MAC expects " + std::to_string(expected) +
                                " operand pairs, got " + std::to_string(x.size()) + "/" +
                                std::to_string(w.size()));
    auto ok = [&](const BinaryWord& b) {
        return b.width_bits() == cfg.width_bits && b.polarity() == cfg.polarity;
    };
    for (std::size_t i = 0; i < expected; ++i)
        if (!ok(x[i]) || !ok(w[i]))
            throw std::domain_error("MAC operand width/polarity does not match config");
}

std::vector<Bitstream> product_streams(std::span<const BinaryWord> x,
                                       std::span<const BinaryWord> w) {
    std::vector<Bitstream> products;
    products.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) products.push_back(htc_mul_stream(x[i], w[i]));
    return products;
}

MacResult run_impl(const MacConfig& cfg, std::span<const BinaryWord> x,
                   std::span<const BinaryWord> w, Lfsr* select_source) {
    cfg.validate();
    check_operands(cfg, x, w, static_cast<std::size_t>(cfg.fan_in));

    MacResult r;
    r.exact = exact_mac(x, w);
    const std::int64_t length = std::int64_t{1} << cfg.width_bits;

    switch (cfg.variant) {
        case Variant::Cbsc: {
            // exact binary adders after the counting multipliers
            for (std::size_t i = 0; i < x.size(); ++i) {
                const auto p = cbsc_mul(x[i], w[i]);
                r.value += p.value;
                r.total_ones += p.ones;
                r.cycles += p.cycles_used;
            }
            break;
        }
        case Variant::Emba: {
            const auto products = product_streams(x, w);
            r.total_ones = emba_accumulate(products);
            r.value = emba_mac_out(r.total_ones, length, cfg.fan_in, cfg.polarity);
            r.cycles = length;
            break;
        }
        case Variant::Dtsa: {
            const auto products = product_streams(x, w);
            const auto d = dtsa_run(products);
            r.y_ones = ones_count(d.y);
            r.remainder = d.remainder;
            r.total_ones = cfg.fan_in * r.y_ones + r.remainder;
            r.value = dtsa_mac_out(r.y_ones, r.remainder, length, cfg.fan_in, cfg.polarity);
            r.cycles = length;
            break;
        }
        case Variant::MuxHtc: {
            const auto products = product_streams(x, w);
            Lfsr local = Lfsr::from_seed(cfg.seed);
            Lfsr& lfsr = select_source ? *select_source : local;
            const auto out = mux_add_stream(products, lfsr);
            r.total_ones = ones_count(out);
            r.value = cfg.fan_in * decode_stream(out);
            r.cycles = length;
            break;
        }
    }
    r.error = r.value - r.exact;
    return r;
}

}  // namespace

double exact_mac(std::span<const BinaryWord> x, std::span<const BinaryWord> w) {
    if (x.size() != w.size()) throw std::domain_error("exact_mac: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += dequantize(x[i]) * dequantize(w[i]);
    return acc;
}

MacResult mac_run(const MacConfig& cfg, std::span<const BinaryWord> x,
                  std::span<const BinaryWord> w) {
    return run_impl(cfg, x, w, nullptr);
}

MacResult mac_run(const MacConfig& cfg, std::span<const BinaryWord> x,
                  std::span<const BinaryWord> w, Lfsr& select_source) {
    return run_impl(cfg, x, w, &select_source);
}

MacResult mac_tiled(const MacConfig& cfg, std::span<const BinaryWord> x,
                    std::span<const BinaryWord> w) {
    cfg.validate();
    const auto m = static_cast<std::size_t>(cfg.fan_in);
    if (x.size() != w.size() || x.empty() || x.size() % m != 0)
        throw std::domain_error("mac_tiled: input length must be a nonzero multiple of M");
    MacResult total;
    for (std::size_t k = 0; k * m < x.size(); ++k) {
        MacConfig block = cfg;
        block.seed = cfg.seed + k;
        const auto r = mac_run(block, x.subspan(k * m, m), w.subspan(k * m, m));
        total.value += r.value;
        total.exact += r.exact;
        total.total_ones += r.total_ones;
        total.y_ones += r.y_ones;
        total.remainder += r.remainder;
        total.cycles += r.cycles;
    }
    total.error = total.value - total.exact;
    return total;
}

ChainResult mac_chain_dtsa(const MacConfig& cfg, std::span<const BinaryWord> x1,
                           std::span<const BinaryWord> w1, std::span<const BinaryWord> w2) {
    cfg.validate();
    if (cfg.variant != Variant::Dtsa) throw std::domain_error("mac_chain_dtsa needs the DTSA variant");
    const auto m = static_cast<std::size_t>(cfg.fan_in);
    check_operands(cfg, x1, w1, m * m);
    if (w2.size() != m) throw std::domain_error("mac_chain_dtsa: stage-2 needs M weights");
    check_operands(cfg, w2, w2, m);

    ChainResult out;
    std::vector<Bitstream> stage2;
    double exact = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const auto xs = x1.subspan(j * m, m);
        const auto ws = w1.subspan(j * m, m);
        const auto d = dtsa_run(product_streams(xs, ws));
        out.chained_tb.push_back(gb_to_tb(d.y));
        out.dropped_remainders.push_back(d.remainder);
        stage2.push_back(htc_combine(rb_generate(w2[j]), out.chained_tb.back()));
        exact += dequantize(w2[j]) * exact_mac(xs, ws) / static_cast<double>(m);
    }

    const std::int64_t length = std::int64_t{1} << cfg.width_bits;
    const auto d2 = dtsa_run(stage2);
    auto& r = out.result;
    r.y_ones = ones_count(d2.y);
    r.remainder = d2.remainder;
    r.total_ones = cfg.fan_in * r.y_ones + r.remainder;
    r.value = dtsa_mac_out(r.y_ones, r.remainder, length, cfg.fan_in, cfg.polarity);
    r.exact = exact;
    r.error = r.value - r.exact;
    r.cycles = 2 * length;
    return out;
}

}  // namespace bitflux
