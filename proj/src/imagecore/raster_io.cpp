#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

#include "texroi/imagecore.hpp"

namespace texroi::imagecore {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

[[noreturn]] void png_throw(png_structp, png_const_charp msg) {
    throw error(std::string("png: ") + msg);
}

void png_warn(png_structp, png_const_charp) {}

GrayImage load_png(const std::filesystem::path& path, double spacing_mm) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) throw error("cannot open raster file: " + path.string());

    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_throw, png_warn);
    if (!png) throw error("png: failed to allocate read struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw error("png: failed to allocate info struct");
    }
    try {
        png_init_io(png, file.get());
        png_read_info(png, info);

        const png_uint_32 w = png_get_image_width(png, info);
        const png_uint_32 h = png_get_image_height(png, info);
        const int depth = png_get_bit_depth(png, info);
        const int color = png_get_color_type(png, info);

        if (color != PNG_COLOR_TYPE_GRAY)
            throw error("png: only single-channel grayscale input is supported: " + path.string());
        if (depth != 8 && depth != 16)
            throw error("png: only 8- or 16-bit input is supported: " + path.string());
        if (depth == 16) png_set_swap(png);  // stored big-endian in the file

        png_read_update_info(png, info);
        const size_t rowbytes = png_get_rowbytes(png, info);
        std::vector<uint8_t> raw(static_cast<size_t>(h) * rowbytes);
        std::vector<png_bytep> rows(h);
        for (png_uint_32 y = 0; y < h; ++y) rows[y] = raw.data() + y * rowbytes;
        png_read_image(png, rows.data());
        png_read_end(png, nullptr);
        png_destroy_read_struct(&png, &info, nullptr);

        GrayImage img(static_cast<int>(w), static_cast<int>(h), spacing_mm);
        if (depth == 8) {
            for (size_t i = 0; i < img.size(); ++i) img.pixels[i] = raw[i] / 255.0;
        } else {
            const auto* p16 = reinterpret_cast<const uint16_t*>(raw.data());
            for (size_t i = 0; i < img.size(); ++i) img.pixels[i] = p16[i] / 65535.0;
        }
        return img;
    } catch (...) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw;
    }
}

void skip_pnm_whitespace(std::istream& in) {
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            in.get();
        } else {
            return;
        }
    }
}

GrayImage load_pgm(const std::filesystem::path& path, double spacing_mm) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open raster file: " + path.string());
    char magic[2] = {};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5')
        throw error("pgm: only binary P5 is supported: " + path.string());
    long w = 0, h = 0, maxval = 0;
    skip_pnm_whitespace(in);
    in >> w;
    skip_pnm_whitespace(in);
    in >> h;
    skip_pnm_whitespace(in);
    in >> maxval;
    in.get();  // single whitespace before the raster
    if (!in || w < 1 || h < 1) throw error("pgm: malformed header: " + path.string());
    if (maxval < 1 || maxval > 65535) throw error("pgm: unsupported maxval: " + path.string());

    GrayImage img(static_cast<int>(w), static_cast<int>(h), spacing_mm);
    const size_t n = img.size();
    if (maxval <= 255) {
        std::vector<uint8_t> raw(n);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
        if (!in) throw error("pgm: truncated raster: " + path.string());
        for (size_t i = 0; i < n; ++i) img.pixels[i] = raw[i] / static_cast<double>(maxval);
    } else {
        std::vector<uint8_t> raw(n * 2);  // big-endian 16-bit samples
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * 2));
        if (!in) throw error("pgm: truncated raster: " + path.string());
        for (size_t i = 0; i < n; ++i) {
            uint16_t v = static_cast<uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);
            img.pixels[i] = v / static_cast<double>(maxval);
        }
    }
    return img;
}

void write_png_gray(const std::filesystem::path& path, int width, int height, int depth,
                    const uint8_t* data) {
    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) throw error("cannot open file for writing: " + path.string());
    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_throw, png_warn);
    if (!png) throw error("png: failed to allocate write struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw error("png: failed to allocate info struct");
    }
    try {
        png_init_io(png, file.get());
        png_set_IHDR(png, info, width, height, depth, PNG_COLOR_TYPE_GRAY,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                     PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        if (depth == 16) png_set_swap(png);
        const size_t rowbytes = static_cast<size_t>(width) * (depth / 8);
        for (int y = 0; y < height; ++y)
            png_write_row(png, const_cast<png_bytep>(data + y * rowbytes));
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
}

uint8_t quantize255(double v) {
    double q = std::floor(v * 255.0 + 0.5);
    if (q < 0.0) q = 0.0;
    if (q > 255.0) q = 255.0;
    return static_cast<uint8_t>(q);
}

}  // namespace

GrayImage load_raster(const std::filesystem::path& path, double spacing_mm) {
    if (!(spacing_mm > 0.0)) throw error("load_raster: spacing must be > 0");
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw error("cannot open raster file: " + path.string());
    unsigned char sig[8] = {};
    probe.read(reinterpret_cast<char*>(sig), 8);
    probe.close();
    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (std::memcmp(sig, png_sig, 8) == 0) return load_png(path, spacing_mm);
    if (sig[0] == 'P' && sig[1] == '5') return load_pgm(path, spacing_mm);
    throw error("unsupported raster format (expect PNG or PGM P5): " + path.string());
}

void save_raster(const GrayImage& img, const std::filesystem::path& path) {
    std::vector<uint8_t> raw(img.size());
    for (size_t i = 0; i < img.size(); ++i) raw[i] = quantize255(img.pixels[i]);
    const std::string ext = path.extension().string();
    if (ext == ".pgm") {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw error("cannot open file for writing: " + path.string());
        out << "P5\n" << img.width << " " << img.height << "\n255\n";
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
        if (!out) throw error("failed writing: " + path.string());
        return;
    }
    write_png_gray(path, img.width, img.height, 8, raw.data());
}

void write_png16(const std::filesystem::path& path, int width, int height,
                 const std::vector<uint16_t>& values) {
    if (values.size() != static_cast<size_t>(width) * height)
        throw error("write_png16: value count does not match dimensions");
    write_png_gray(path, width, height, 16,
                   reinterpret_cast<const uint8_t*>(values.data()));
}

void write_png8(const std::filesystem::path& path, int width, int height,
                const std::vector<uint8_t>& values) {
    if (values.size() != static_cast<size_t>(width) * height)
        throw error("write_png8: value count does not match dimensions");
    write_png_gray(path, width, height, 8, values.data());
}

}  // namespace texroi::imagecore
