#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "qhosvd/errors.hpp"
#include "qhosvd/image.hpp"

namespace qhosvd {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

unsigned char quantize(double v) {
    const double q = std::round(std::min(std::max(v, 0.0), 255.0));
    return static_cast<unsigned char>(q);
}

RgbImage load_png(const std::string& path, std::FILE* fp) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png: allocation failure");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw IoError("png: allocation failure");
    }
    std::vector<png_bytep> row_ptrs;
    std::vector<unsigned char> pixels;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("png: failed to read " + path);
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    if ((color_type & PNG_COLOR_MASK_ALPHA) || png_get_valid(png, info, PNG_INFO_tRNS)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("png: " + path + " has an alpha channel; only 8-bit RGB is accepted");
    }
    if (bit_depth == 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("png: " + path + " is 16-bit; only 8-bit RGB is accepted");
    }
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY) {
        if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        png_set_gray_to_rgb(png);
    }
    png_read_update_info(png, info);

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    pixels.assign(rowbytes * height, 0);
    row_ptrs.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) row_ptrs[y] = pixels.data() + y * rowbytes;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    RgbImage img(height, width);
    for (std::size_t y = 0; y < height; ++y) {
        const unsigned char* row = pixels.data() + y * rowbytes;
        for (std::size_t x = 0; x < width; ++x) {
            const std::size_t idx = y * width + x;
            img.r[idx] = row[3 * x + 0];
            img.g[idx] = row[3 * x + 1];
            img.b[idx] = row[3 * x + 2];
        }
    }
    return img;
}

RgbImage load_ppm(const std::string& path, std::FILE* fp) {
    auto next_token = [&]() -> std::string {
        std::string tok;
        int ch;
        while ((ch = std::fgetc(fp)) != EOF) {
            if (ch == '#') { // comment to end of line
                while ((ch = std::fgetc(fp)) != EOF && ch != '\n') {}
                continue;
            }
            if (std::isspace(ch)) {
                if (!tok.empty()) break;
                continue;
            }
            tok.push_back(static_cast<char>(ch));
        }
        if (tok.empty()) throw IoError("ppm: truncated header in " + path);
        return tok;
    };
    if (next_token() != "P6") throw IoError("ppm: " + path + " is not binary P6");
    const long width = std::stol(next_token());
    const long height = std::stol(next_token());
    const long maxval = std::stol(next_token());
    if (width <= 0 || height <= 0) throw IoError("ppm: bad dimensions in " + path);
    if (maxval != 255) throw IoError("ppm: only maxval 255 supported (" + path + ")");

    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<unsigned char> pixels(3 * n);
    if (std::fread(pixels.data(), 1, pixels.size(), fp) != pixels.size())
        throw IoError("ppm: truncated pixel data in " + path);
    RgbImage img(height, width);
    for (std::size_t i = 0; i < n; ++i) {
        img.r[i] = pixels[3 * i + 0];
        img.g[i] = pixels[3 * i + 1];
        img.b[i] = pixels[3 * i + 2];
    }
    return img;
}

void save_png(const RgbImage& img, const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot open " + path + " for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("png: allocation failure");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png: allocation failure");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("png: failed to write " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<unsigned char> row(3 * img.width);
    for (std::size_t y = 0; y < img.height; ++y) {
        for (std::size_t x = 0; x < img.width; ++x) {
            const std::size_t idx = y * img.width + x;
            row[3 * x + 0] = quantize(img.r[idx]);
            row[3 * x + 1] = quantize(img.g[idx]);
            row[3 * x + 2] = quantize(img.b[idx]);
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void save_ppm(const RgbImage& img, const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot open " + path + " for writing");
    std::fprintf(fp.get(), "P6\n%zu %zu\n255\n", img.width, img.height);
    std::vector<unsigned char> row(3 * img.width);
    for (std::size_t y = 0; y < img.height; ++y) {
        for (std::size_t x = 0; x < img.width; ++x) {
            const std::size_t idx = y * img.width + x;
            row[3 * x + 0] = quantize(img.r[idx]);
            row[3 * x + 1] = quantize(img.g[idx]);
            row[3 * x + 2] = quantize(img.b[idx]);
        }
        if (std::fwrite(row.data(), 1, row.size(), fp.get()) != row.size())
            throw IoError("ppm: short write to " + path);
    }
}

} // namespace

RgbImage load_image(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open " + path);
    unsigned char sig[8] = {};
    const std::size_t got = std::fread(sig, 1, sizeof(sig), fp.get());
    std::rewind(fp.get());
    if (got >= 8 && png_sig_cmp(sig, 0, 8) == 0) return load_png(path, fp.get());
    if (got >= 2 && sig[0] == 'P' && sig[1] == '6') return load_ppm(path, fp.get());
    throw IoError(path + ": unrecognized image format (PNG or binary PPM expected)");
}

void save_image(const RgbImage& img, const std::string& path) {
    if (img.size() == 0) throw ShapeError("save_image: empty image");
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".ppm") == 0)
        save_ppm(img, path);
    else
        save_png(img, path);
}

} // namespace qhosvd
