#include "bitflux/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>

namespace bitflux {

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), pixels_(width * height, std::clamp(fill, 0.0, 1.0)) {}

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (pixels_.size() != width * height)
        throw std::domain_error("image pixel count does not match width*height");
    for (double p : pixels_)
        if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("image pixel outside [0, 1]");
}

double ImageBuffer::at_clamped(std::size_t row, std::ptrdiff_t col) const {
    const auto last = static_cast<std::ptrdiff_t>(width_) - 1;
    return at(row, static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(col, 0, last)));
}

void ImageBuffer::set(std::size_t row, std::size_t col, double v) {
    pixels_[row * width_ + col] = std::clamp(v, 0.0, 1.0);
}

PgmParseError::PgmParseError(const std::string& what, std::size_t offset)
    : std::runtime_error("PGM parse error at byte " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5));
}

namespace {

class HeaderReader {
public:
    explicit HeaderReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::size_t number(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        std::size_t v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 1'000'000) throw PgmParseError(std::string(what) + " too large", start);
            ++pos_;
        }
        if (pos_ == start) throw PgmParseError(std::string("expected ") + what, start);
        return v;
    }

    std::size_t pos() const { return pos_; }
    void advance(std::size_t n) { pos_ += n; }

private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

ImageBuffer pgm_decode(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') throw PgmParseError("missing 'P' magic", 0);
    if (bytes[1] != '5') {
        if (bytes[1] == '2') throw PgmParseError("ASCII PGM (P2) is not supported", 1);
        throw PgmParseError("unsupported magic 'P" + std::string(1, static_cast<char>(bytes[1])) + "'", 1);
    }
    HeaderReader rd(bytes);
    rd.advance(2);
    const std::size_t width = rd.number("width");
    const std::size_t height = rd.number("height");
    const std::size_t maxval_at = rd.pos();
    const std::size_t maxval = rd.number("maxval");
    if (maxval != 255) throw PgmParseError("maxval must be 255, got " + std::to_string(maxval), maxval_at);
    if (width == 0 || height == 0) throw PgmParseError("zero image dimension", maxval_at);
    // exactly one whitespace byte separates the header from the raster
    if (rd.pos() >= bytes.size() || !std::isspace(bytes[rd.pos()]))
        throw PgmParseError("expected whitespace after maxval", rd.pos());
    rd.advance(1);
    const std::size_t need = width * height;
    if (bytes.size() - rd.pos() < need)
        throw PgmParseError("truncated raster: need " + std::to_string(need) + " bytes, have " +
                                std::to_string(bytes.size() - rd.pos()),
                            bytes.size());
    std::vector<double> px(need);
    for (std::size_t i = 0; i < need; ++i) px[i] = bytes[rd.pos() + i] / 255.0;
    return ImageBuffer(width, height, std::move(px));
}

std::vector<std::uint8_t> pgm_encode(const ImageBuffer& img) {
    const std::string header =
        "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + img.size());
    for (double p : img.pixels()) out.push_back(to_byte(p));
    return out;
}

ImageBuffer pgm_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return pgm_decode(bytes);
}

void pgm_write(const ImageBuffer& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    const auto bytes = pgm_encode(img);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace bitflux
