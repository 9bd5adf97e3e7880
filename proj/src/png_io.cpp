#include "depthlang/png_io.hpp"

#include "depthlang/error.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <memory>

namespace depthlang {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    if (std::strchr(mode, 'w') && !path.parent_path().empty()) {
        std::filesystem::create_directories(path.parent_path());
    }
    FilePtr f(std::fopen(path.string().c_str(), mode));
    if (!f) {
        throw FormatError("cannot open '" + path.string() + "'");
    }
    return f;
}

[[noreturn]] void png_error_handler(png_structp png, png_const_charp msg) {
    auto* out = static_cast<std::string*>(png_get_error_ptr(png));
    if (out) *out = msg ? msg : "unknown libpng error";
    longjmp(png_jmpbuf(png), 1);
}

void png_warning_handler(png_structp, png_const_charp) {
    // libpng warnings (e.g. unknown chunks) are not actionable here
}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::string error_msg;

    PngReader() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error_msg,
                                     png_error_handler, png_warning_handler);
        if (png) info = png_create_info_struct(png);
        if (!png || !info) throw FormatError("libpng allocation failed");
    }
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
    PngReader(const PngReader&) = delete;
    PngReader& operator=(const PngReader&) = delete;
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::string error_msg;

    PngWriter() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error_msg,
                                      png_error_handler, png_warning_handler);
        if (png) info = png_create_info_struct(png);
        if (!png || !info) throw FormatError("libpng allocation failed");
    }
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
    PngWriter(const PngWriter&) = delete;
    PngWriter& operator=(const PngWriter&) = delete;
};

void check_signature(std::FILE* f, const std::filesystem::path& path) {
    unsigned char sig[8];
    if (std::fread(sig, 1, 8, f) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        throw FormatError("'" + path.string() + "': not a PNG file (bad signature at byte 0)");
    }
}

}  // namespace

Gray16Image read_png_gray16(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    check_signature(f.get(), path);

    PngReader r;
    if (setjmp(png_jmpbuf(r.png))) {
        throw FormatError("'" + path.string() + "': " + r.error_msg);
    }
    png_init_io(r.png, f.get());
    png_set_sig_bytes(r.png, 8);
    png_read_info(r.png, r.info);

    const int bit_depth = png_get_bit_depth(r.png, r.info);
    const int color_type = png_get_color_type(r.png, r.info);
    if (color_type != PNG_COLOR_TYPE_GRAY || bit_depth != 16) {
        throw FormatError("'" + path.string() + "': expected 16-bit grayscale PNG, got bit depth " +
                          std::to_string(bit_depth) + ", color type " + std::to_string(color_type));
    }

    Gray16Image img;
    img.width = static_cast<int>(png_get_image_width(r.png, r.info));
    img.height = static_cast<int>(png_get_image_height(r.png, r.info));
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);

    png_set_swap(r.png);  // PNG is big-endian on disk
    png_set_interlace_handling(r.png);
    png_read_update_info(r.png, r.info);

    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y) {
        rows[y] = reinterpret_cast<png_bytep>(img.pixels.data() + static_cast<std::size_t>(y) * img.width);
    }
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);
    return img;
}

void write_png_gray16(const std::filesystem::path& path, const Gray16Image& image) {
    if (image.width <= 0 || image.height <= 0 ||
        image.pixels.size() != static_cast<std::size_t>(image.width) * image.height) {
        throw ArgumentError("write_png_gray16: inconsistent image dimensions");
    }
    FilePtr f = open_file(path, "wb");

    PngWriter w;
    if (setjmp(png_jmpbuf(w.png))) {
        throw FormatError("'" + path.string() + "': " + w.error_msg);
    }
    png_init_io(w.png, f.get());
    png_set_IHDR(w.png, w.info, image.width, image.height, 16, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(w.png, 6);
    png_set_filter(w.png, 0, PNG_FILTER_NONE);
    png_write_info(w.png, w.info);
    png_set_swap(w.png);

    for (int y = 0; y < image.height; ++y) {
        png_write_row(w.png, reinterpret_cast<png_const_bytep>(
                                 image.pixels.data() + static_cast<std::size_t>(y) * image.width));
    }
    png_write_end(w.png, nullptr);
}

RgbImage read_png_rgb8(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");
    check_signature(f.get(), path);

    PngReader r;
    if (setjmp(png_jmpbuf(r.png))) {
        throw FormatError("'" + path.string() + "': " + r.error_msg);
    }
    png_init_io(r.png, f.get());
    png_set_sig_bytes(r.png, 8);
    png_read_info(r.png, r.info);

    const int bit_depth = png_get_bit_depth(r.png, r.info);
    if (bit_depth == 16) {
        throw FormatError("'" + path.string() + "': expected 8-bit color PNG, got 16-bit");
    }
    const int color_type = png_get_color_type(r.png, r.info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
        if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(r.png);
        png_set_gray_to_rgb(r.png);
    }
    if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
    png_set_strip_alpha(r.png);
    png_set_interlace_handling(r.png);
    png_read_update_info(r.png, r.info);

    RgbImage img(static_cast<int>(png_get_image_width(r.png, r.info)),
                 static_cast<int>(png_get_image_height(r.png, r.info)));
    if (png_get_rowbytes(r.png, r.info) != static_cast<std::size_t>(img.width) * 3) {
        throw FormatError("'" + path.string() + "': unsupported channel layout");
    }

    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y) {
        rows[y] = img.pixels.data() + static_cast<std::size_t>(y) * img.width * 3;
    }
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);
    return img;
}

void write_png_rgb8(const std::filesystem::path& path, const RgbImage& image) {
    if (image.width <= 0 || image.height <= 0 ||
        image.pixels.size() != static_cast<std::size_t>(image.width) * image.height * 3) {
        throw ArgumentError("write_png_rgb8: inconsistent image dimensions");
    }
    FilePtr f = open_file(path, "wb");

    PngWriter w;
    if (setjmp(png_jmpbuf(w.png))) {
        throw FormatError("'" + path.string() + "': " + w.error_msg);
    }
    png_init_io(w.png, f.get());
    png_set_IHDR(w.png, w.info, image.width, image.height, 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(w.png, 6);
    png_set_filter(w.png, 0, PNG_FILTER_NONE);
    png_write_info(w.png, w.info);

    for (int y = 0; y < image.height; ++y) {
        png_write_row(w.png, image.pixels.data() + static_cast<std::size_t>(y) * image.width * 3);
    }
    png_write_end(w.png, nullptr);
}

}  // namespace depthlang
