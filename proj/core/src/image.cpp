#include "storyboard/image.hpp"

#include "storyboard/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

namespace storyboard {

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(std::size_t(w) * std::size_t(h), fill)
{
}

void GrayImage::fill_rect(int x, int y, int w, int h, std::uint8_t value)
{
    int x0 = std::max(x, 0), y0 = std::max(y, 0);
    int x1 = std::min(x + w, width), y1 = std::min(y + h, height);
    for (int yy = y0; yy < y1; ++yy) {
        std::fill_n(pixels.begin() + std::ptrdiff_t(yy) * width + x0,
                    std::max(0, x1 - x0), value);
    }
}

Similarity image_similarity(const GrayImage& a, const GrayImage& b)
{
    if (a.width != b.width || a.height != b.height) {
        throw MetricError("image sizes differ: "
                          + std::to_string(a.width) + "x"
                          + std::to_string(a.height) + " vs "
                          + std::to_string(b.width) + "x"
                          + std::to_string(b.height));
    }
    if (a.pixels.empty()) {
        return {};
    }
    std::uint64_t abs_sum = 0, sq_sum = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        int d = int(a.pixels[i]) - int(b.pixels[i]);
        abs_sum += std::uint64_t(d < 0 ? -d : d);
        sq_sum += std::uint64_t(d * d);
    }
    auto n = double(a.pixels.size());
    Similarity s;
    s.mae = double(abs_sum) / n;
    s.mse = double(sq_sum) / n;
    s.similarity_pct = (1.0 - s.mae / 255.0) * 100.0;
    return s;
}

void write_pgm(std::ostream& out, const GrayImage& img)
{
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              std::streamsize(img.pixels.size()));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IOError("cannot write " + path.string());
    }
    write_pgm(out, img);
    if (!out) {
        throw IOError("write failed: " + path.string());
    }
}

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string header_token(std::istream& in)
{
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) {
                break;
            }
            continue;
        }
        tok.push_back(char(c));
    }
    return tok;
}

} // namespace

GrayImage read_pgm(std::istream& in, const std::string& name)
{
    if (header_token(in) != "P5") {
        throw ParseError(name, 1, "not a binary PGM (P5) file");
    }
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(header_token(in));
        h = std::stoi(header_token(in));
        maxval = std::stoi(header_token(in));
    }
    catch (const std::exception&) {
        throw ParseError(name, 1, "malformed PGM header");
    }
    if (w <= 0 || h <= 0 || maxval != 255) {
        throw ParseError(name, 1, "unsupported PGM dimensions or maxval");
    }
    GrayImage img(w, h, 0);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            std::streamsize(img.pixels.size()));
    if (in.gcount() != std::streamsize(img.pixels.size())) {
        throw ParseError(name, 1, "truncated PGM pixel data");
    }
    return img;
}

GrayImage read_pgm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IOError("cannot read " + path.string());
    }
    return read_pgm(in, path.string());
}

} // namespace storyboard
