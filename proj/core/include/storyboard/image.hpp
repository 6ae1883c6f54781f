#ifndef STORYBOARD_IMAGE_HPP
#define STORYBOARD_IMAGE_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace storyboard {

/// 8-bit grayscale pixel grid, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 255);

    std::uint8_t at(int x, int y) const { return pixels[std::size_t(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[std::size_t(y) * width + x]; }

    /// Fills the intersection of the rectangle with the image.
    void fill_rect(int x, int y, int w, int h, std::uint8_t value);

    friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

struct Similarity {
    double mae = 0;
    double mse = 0;
    double similarity_pct = 100;
};

/// Pixel-wise mean absolute and mean squared error; similarity is
/// (1 - MAE/255) * 100. Throws MetricError on a size mismatch.
Similarity image_similarity(const GrayImage& a, const GrayImage& b);

/// Binary PGM (P5, maxval 255).
void write_pgm(std::ostream& out, const GrayImage& img);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);
/// Throws ParseError on anything but an 8-bit P5 file, IOError if unreadable.
GrayImage read_pgm(const std::filesystem::path& path);
GrayImage read_pgm(std::istream& in, const std::string& name);

} // namespace storyboard

#endif
