#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace bitflux {

/// Row-major grayscale image with pixels in [0, 1].
class ImageBuffer {
public:
    ImageBuffer() = default;
    ImageBuffer(std::size_t width, std::size_t height, double fill = 0.0);
    /// Throws std::domain_error if the size does not match or a pixel leaves [0, 1].
    ImageBuffer(std::size_t width, std::size_t height, std::vector<double> pixels);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return pixels_.size(); }

    double at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }
    /// Column index clamped to [0, width-1] (edge replication).
    double at_clamped(std::size_t row, std::ptrdiff_t col) const;
    /// Clamps the value into [0, 1].
    void set(std::size_t row, std::size_t col, double v);

    const std::vector<double>& pixels() const { return pixels_; }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> pixels_;
};

/// Malformed PGM input; offset() is the byte position where parsing failed.
class PgmParseError : public std::runtime_error {
public:
    PgmParseError(const std::string& what, std::size_t offset);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Binary P5 with maxval 255 only. Pixels become byte / 255.
ImageBuffer pgm_decode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> pgm_encode(const ImageBuffer& img);

ImageBuffer pgm_read(const std::filesystem::path& path);
void pgm_write(const ImageBuffer& img, const std::filesystem::path& path);

/// round-half-up of v*255 after clamping to [0, 1]
std::uint8_t to_byte(double v);

}  // namespace bitflux
