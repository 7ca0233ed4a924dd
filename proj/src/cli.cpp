#include "bitflux/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bitflux/adders.hpp"
#include "bitflux/dsp.hpp"
#include "bitflux/generators.hpp"
#include "bitflux/mac.hpp"
#include "bitflux/metrics.hpp"
#include "bitflux/multipliers.hpp"

#ifndef BITFLUX_VERSION
#define BITFLUX_VERSION "dev"
#endif

namespace bitflux::cli {

namespace {

using json = nlohmann::ordered_json;

/// A failure the user caused with their flags; maps to exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& text) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(text, &used, 0);
    } catch (const std::exception&) {
        throw UsageError("invalid seed '" + text + "'");
    }
    if (used != text.size()) throw UsageError("invalid seed '" + text + "'");
    return v;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json decisions_json() {
    json d;
    d["error_normalization"] = "raw dot-product error x100, no division by fan-in";
    d["operand_distribution"] = "uniform over representable raws";
    d["rb_mapping"] = "trailing-ones counter mapping";
    d["lfsr"] = "16-bit Fibonacci x^16+x^14+x^13+x^11+1";
    d["mux_select"] = "ceil(log2 M) successive LFSR bits, modulo M";
    d["bipolar_cbsc"] = "sign-magnitude; bipolar RB of |x|; up/down counter over |w| cycles";
    d["dct_inverse"] = "forward DCT on the MAC; inverse in double precision unless --inverse mac";
    return d;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json manifest(const std::string& command, json config, std::uint64_t seed,
              const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
    json m;
    m["command"] = command;
    m["tool_version"] = BITFLUX_VERSION;
    m["timestamp"] = utc_timestamp();
    m["seed"] = seed;
    m["config"] = std::move(config);
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    m["decisions"] = decisions_json();
    return m;
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

// ---------------------------------------------------------------------------

struct BenchOpts {
    std::string variant = "emba";
    std::string polarity = "unipolar";
    int bits = 8;
    int fanin = 4;
    std::int64_t samples = 10000;
    std::string seed = std::to_string(Lfsr::kDefaultSeed);
    std::string format = "json";
    std::string out;
};

int cmd_mac_bench(const BenchOpts& o, std::ostream& out) {
    MacConfig cfg;
    cfg.variant = parse_variant(o.variant);
    cfg.polarity = parse_polarity(o.polarity);
    cfg.width_bits = o.bits;
    cfg.fan_in = o.fanin;
    const std::uint64_t seed = parse_seed(o.seed);
    const auto report = mac_benchmark(cfg, o.samples, seed);

    std::string text;
    if (o.format == "json")
        text = to_json(report).dump(2) + "\n";
    else
        text = csv_header() + "\n" + to_csv_row(report) + "\n";

    if (o.out.empty()) {
        out << text;
        return kExitOk;
    }
    {
        std::ofstream f(o.out);
        if (!f) throw std::runtime_error("cannot write " + o.out);
        f << text;
    }
    json config{{"variant", o.variant}, {"polarity", o.polarity}, {"bits", o.bits},
                {"fan_in", o.fanin},    {"samples", o.samples},   {"format", o.format}};
    write_json_file(o.out + ".manifest.json", manifest("mac-bench", config, seed, {}, {o.out}));
    out << "wrote " << o.out << "\n";
    return kExitOk;
}

struct ImageOpts {
    std::string in;
    std::string variant = "emba";
    std::string seed = std::to_string(Lfsr::kDefaultSeed);
    int bits = 8;
    double sigma = 1.0;
    std::string mode = "1d";
    std::string inverse = "exact";
    std::string out_prefix;
};

int write_image_outputs(const std::string& command, const ImageOpts& o, const ImageBuffer& result,
                        const ImageMetrics& metrics, json config, std::uint64_t seed,
                        std::ostream& out) {
    const std::string pgm = o.out_prefix + ".pgm";
    const std::string met = o.out_prefix + ".metrics.json";
    const std::string man = o.out_prefix + ".manifest.json";
    pgm_write(result, pgm);
    json mj = to_json(metrics);
    mj["variant"] = o.variant;
    mj["reference"] = "original";
    for (auto& [k, v] : config.items())
        if (k == "sigma" || k == "mode" || k == "inverse") mj[k] = v;
    write_json_file(met, mj);
    write_json_file(man, manifest(command, std::move(config), seed, {o.in}, {pgm, met}));
    out << command << " " << o.variant << ": rmse=" << fmt_double(metrics.rmse)
        << " psnr_db=" << fmt_double(metrics.psnr_db) << "\n";
    return kExitOk;
}

int cmd_fir(const ImageOpts& o, std::ostream& out) {
    const auto img = pgm_read(o.in);
    MacConfig cfg;
    cfg.variant = parse_variant(o.variant);
    cfg.polarity = Polarity::Unipolar;
    cfg.width_bits = o.bits;
    cfg.fan_in = kFirTaps;
    cfg.seed = parse_seed(o.seed);
    const auto kernel = gaussian_taps(o.sigma, o.bits);
    const auto filtered = fir_filter(img, kernel, cfg);
    const auto metrics = image_metrics(img, filtered);
    json taps = json::array();
    for (const auto& t : kernel.taps) taps.push_back(t.raw());
    json config{{"variant", o.variant}, {"bits", o.bits}, {"fan_in", kFirTaps},
                {"sigma", o.sigma},     {"taps_raw", taps}};
    return write_image_outputs("fir", o, filtered, metrics, std::move(config), cfg.seed, out);
}

int cmd_dct(const ImageOpts& o, std::ostream& out) {
    const auto img = pgm_read(o.in);
    MacConfig cfg;
    cfg.variant = parse_variant(o.variant);
    cfg.polarity = Polarity::Bipolar;
    cfg.width_bits = o.bits;
    cfg.fan_in = 4;
    cfg.seed = parse_seed(o.seed);
    DctOptions opts;
    opts.mode = parse_dct_mode(o.mode);
    opts.inverse = parse_dct_inverse(o.inverse);
    const auto result = dct_pipeline(img, cfg, opts);
    json config{{"variant", o.variant}, {"bits", o.bits},       {"fan_in", 4},
                {"mode", o.mode},       {"inverse", o.inverse}, {"intermediate_scale", 0.25}};
    return write_image_outputs("dct", o, result.reconstructed, result.metrics, std::move(config),
                               cfg.seed, out);
}

struct EncodeOpts {
    std::int64_t value = 0;
    int bits = 8;
    std::string polarity = "unipolar";
    std::string format = "rb";
};

int cmd_encode(const EncodeOpts& o, std::ostream& out) {
    const auto pol = parse_polarity(o.polarity);
    if (o.value < min_raw(o.bits, pol) || o.value > max_raw(o.bits, pol))
        throw UsageError("raw value " + std::to_string(o.value) + " out of range [" +
                         std::to_string(min_raw(o.bits, pol)) + ", " +
                         std::to_string(max_raw(o.bits, pol)) + "]");
    const BinaryWord word(o.value, o.bits, pol);
    const auto stream = o.format == "rb" ? rb_generate(word) : tb_generate(word);
    out << stream.to_string() << "\n";
    out << "decoded=" << fmt_double(decode_stream(stream)) << " ones=" << ones_count(stream)
        << " length=" << stream.length() << "\n";
    return kExitOk;
}

struct TraceOpts {
    std::vector<std::string> streams;
    std::vector<std::int64_t> x;
    std::vector<std::int64_t> w;
    int bits = 3;
    std::string polarity = "unipolar";
};

int cmd_trace(const TraceOpts& o, std::ostream& out) {
    const auto pol = parse_polarity(o.polarity);
    std::vector<Bitstream> streams;
    if (!o.streams.empty()) {
        if (!o.x.empty() || !o.w.empty()) throw UsageError("use either --streams or --x/--w");
        for (const auto& s : o.streams)
            if (s.size() != o.streams.front().size())
                throw UsageError("ragged stream lengths: " + std::to_string(o.streams.front().size()) +
                                 " vs " + std::to_string(s.size()));
        try {
            for (const auto& s : o.streams) streams.push_back(Bitstream::from_string(s, StreamFormat::GB, pol));
        } catch (const std::domain_error& e) {
            throw UsageError(e.what());
        }
    } else {
        if (o.x.empty() || o.x.size() != o.w.size())
            throw UsageError("trace needs --streams, or --x and --w lists of equal length");
        try {
            for (std::size_t i = 0; i < o.x.size(); ++i)
                streams.push_back(
                    htc_mul_stream(BinaryWord(o.x[i], o.bits, pol), BinaryWord(o.w[i], o.bits, pol)));
        } catch (const std::domain_error& e) {
            throw UsageError(e.what());
        }
    }

    const auto m = static_cast<int>(streams.size());
    const auto length = static_cast<std::int64_t>(streams.front().length());
    const auto d = dtsa_run(streams);

    out << std::setw(5) << "Cycle";
    for (int i = 1; i <= m; ++i) out << std::setw(4) << ("M" + std::to_string(i));
    out << std::setw(10) << "CycleSum" << std::setw(7) << "Q_reg" << std::setw(5) << "A"
        << std::setw(3) << "Y" << std::setw(8) << "Q_next" << "\n";
    for (std::size_t c = 0; c < d.trace.size(); ++c) {
        const auto& row = d.trace[c];
        out << std::setw(5) << c + 1;
        for (const auto& s : streams) out << std::setw(4) << static_cast<int>(s[c]);
        out << std::setw(10) << row.cycle_sum << std::setw(7) << row.q_reg << std::setw(5) << row.a
            << std::setw(3) << static_cast<int>(row.y) << std::setw(8) << row.q_next << "\n";
    }
    const auto total = emba_accumulate(streams);
    const auto y_ones = ones_count(d.y);
    out << "Y=" << d.y.to_string() << "\n";
    out << "total_ones=" << total << " y_ones=" << y_ones << " remainder=" << d.remainder << "\n";
    out << "conservation: " << m << "*" << y_ones << "+" << d.remainder << "="
        << m * y_ones + d.remainder << (m * y_ones + d.remainder == total ? " OK" : " MISMATCH")
        << "\n";
    out << "emba_mac_out=" << fmt_double(emba_mac_out(total, length, m, pol))
        << " dtsa_mac_out=" << fmt_double(dtsa_mac_out(y_ones, d.remainder, length, m, pol)) << "\n";
    return kExitOk;
}

struct SynthOpts {
    std::string kind = "texture";
    std::size_t width = 256;
    std::size_t height = 256;
    std::uint64_t seed = 1;
    double roughness = 0.6;
    double cell = 32.0;
    std::string out;
};

int cmd_synth(const SynthOpts& o, std::ostream& out) {
    ImageBuffer img;
    if (o.kind == "gradient")
        img = synth_gradient(o.width, o.height);
    else if (o.kind == "texture")
        img = synth_texture(o.width, o.height, o.seed, o.roughness, o.cell);
    else
        img = synth_scene(o.width, o.height, o.seed);
    pgm_write(img, o.out);
    out << "wrote " << o.out << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bitflux: bit-true emulator of hybrid temporal computing MAC units"};
    app.require_subcommand(1);
    app.set_version_flag("--version", BITFLUX_VERSION);

    const auto variants = CLI::IsMember({"cbsc", "mux", "emba", "dtsa"});
    const auto polarities = CLI::IsMember({"unipolar", "bipolar"});
    const auto widths = CLI::Range(kMinWidth, kMaxWidth);

    BenchOpts bench;
    auto* sc_bench = app.add_subcommand("mac-bench", "RMSE/SDE of one MAC variant over random operands");
    sc_bench->add_option("--variant", bench.variant)->check(variants)->capture_default_str();
    sc_bench->add_option("--polarity", bench.polarity)->check(polarities)->capture_default_str();
    sc_bench->add_option("--bits", bench.bits, "operand width N")->check(widths)->capture_default_str();
    sc_bench->add_option("--fanin", bench.fanin, "MAC fan-in M")->check(CLI::Range(2, 64))->capture_default_str();
    sc_bench->add_option("--samples", bench.samples)->check(CLI::PositiveNumber)->capture_default_str();
    sc_bench->add_option("--seed", bench.seed)->envname("BITFLUX_SEED")->capture_default_str();
    sc_bench->add_option("--format", bench.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sc_bench->add_option("--out", bench.out, "report path (stdout when omitted)");

    ImageOpts fir;
    auto* sc_fir = app.add_subcommand("fir", "6-tap Gaussian FIR blur of a P5 PGM image");
    sc_fir->add_option("--in", fir.in)->required();
    sc_fir->add_option("--variant", fir.variant)->check(variants)->capture_default_str();
    sc_fir->add_option("--seed", fir.seed)->envname("BITFLUX_SEED")->capture_default_str();
    sc_fir->add_option("--bits", fir.bits)->check(widths)->capture_default_str();
    sc_fir->add_option("--sigma", fir.sigma)->check(CLI::PositiveNumber)->capture_default_str();
    sc_fir->add_option("--out-prefix", fir.out_prefix)->required();

    ImageOpts dct;
    auto* sc_dct = app.add_subcommand("dct", "8-point DCT/iDCT round trip of a P5 PGM image");
    sc_dct->add_option("--in", dct.in)->required();
    sc_dct->add_option("--variant", dct.variant)->check(variants)->capture_default_str();
    sc_dct->add_option("--seed", dct.seed)->envname("BITFLUX_SEED")->capture_default_str();
    sc_dct->add_option("--bits", dct.bits)->check(widths)->capture_default_str();
    sc_dct->add_option("--mode", dct.mode)->check(CLI::IsMember({"1d", "2d"}))->capture_default_str();
    sc_dct->add_option("--inverse", dct.inverse, "exact: double-precision iDCT; mac: iDCT on the same MAC")
        ->check(CLI::IsMember({"exact", "mac"}))
        ->capture_default_str();
    sc_dct->add_option("--out-prefix", dct.out_prefix)->required();

    EncodeOpts enc;
    auto* sc_enc = app.add_subcommand("encode", "print the RB or TB stream of a raw operand");
    sc_enc->add_option("--value", enc.value, "raw two's-complement / unsigned value")->required();
    sc_enc->add_option("--bits", enc.bits)->check(widths)->capture_default_str();
    sc_enc->add_option("--polarity", enc.polarity)->check(polarities)->capture_default_str();
    sc_enc->add_option("--format", enc.format)->check(CLI::IsMember({"rb", "tb"}))->capture_default_str();

    TraceOpts trace;
    auto* sc_trace = app.add_subcommand("trace", "cycle-by-cycle DTSA table for product streams");
    sc_trace->add_option("--streams", trace.streams, "product bitstreams, cycle 0 first");
    sc_trace->add_option("--x", trace.x, "RB operand raws");
    sc_trace->add_option("--w", trace.w, "TB operand raws");
    sc_trace->add_option("--bits", trace.bits)->check(widths)->capture_default_str();
    sc_trace->add_option("--polarity", trace.polarity)->check(polarities)->capture_default_str();

    SynthOpts synth;
    auto* sc_synth = app.add_subcommand("synth", "write a deterministic synthetic test image");
    sc_synth->add_option("--kind", synth.kind)->check(CLI::IsMember({"gradient", "texture", "scene"}))->capture_default_str();
    sc_synth->add_option("--width", synth.width)->check(CLI::Range(1, 8192))->capture_default_str();
    sc_synth->add_option("--height", synth.height)->check(CLI::Range(1, 8192))->capture_default_str();
    sc_synth->add_option("--seed", synth.seed)->capture_default_str();
    sc_synth->add_option("--roughness", synth.roughness, "texture: amplitude ratio between octaves")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sc_synth->add_option("--cell", synth.cell, "texture: coarsest noise cell in pixels")
        ->check(CLI::Range(1.0, 4096.0))
        ->capture_default_str();
    sc_synth->add_option("--out", synth.out)->required();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sc_bench->parsed()) return cmd_mac_bench(bench, out);
        if (sc_fir->parsed()) return cmd_fir(fir, out);
        if (sc_dct->parsed()) return cmd_dct(dct, out);
        if (sc_enc->parsed()) return cmd_encode(enc, out);
        if (sc_trace->parsed()) return cmd_trace(trace, out);
        if (sc_synth->parsed()) return cmd_synth(synth, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PgmParseError& e) {
        err << "error: " << e.what() << " (byte offset " << e.offset() << ")\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace bitflux::cli
