#include "jndmix/image_io.hpp"

#include <cstdio>

#include <jpeglib.h>
#include <png.h>

#include <bit>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "fs_util.hpp"

namespace fs = std::filesystem;

namespace jndmix {
namespace {

using detail::AtomicWriter;
using detail::FileHandle;

constexpr char kJndmMagic[4] = {'J', 'N', 'D', 'M'};
constexpr std::uint16_t kJndmVersion = 1;
constexpr std::size_t kJndmHeaderSize = 16;

struct PngRead {
    png_structp png = nullptr;
    png_infop info = nullptr;
    PngRead() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
        if (!png || !info) throw IoError("libpng allocation failed");
    }
    ~PngRead() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWrite {
    png_structp png = nullptr;
    png_infop info = nullptr;
    PngWrite() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
        if (!png || !info) throw IoError("libpng allocation failed");
    }
    ~PngWrite() { png_destroy_write_struct(&png, &info); }
};

enum class Magic { png, jpeg, jndm, unknown };

Magic sniff(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    unsigned char head[8] = {};
    in.read(reinterpret_cast<char*>(head), sizeof(head));
    if (in.gcount() >= 8 && png_sig_cmp(head, 0, 8) == 0) return Magic::png;
    if (in.gcount() >= 2 && head[0] == 0xFF && head[1] == 0xD8) return Magic::jpeg;
    if (in.gcount() >= 4 && std::memcmp(head, kJndmMagic, 4) == 0) return Magic::jndm;
    return Magic::unknown;
}

// Raw PNG decode. Palette and sub-byte gray are expanded, alpha is dropped.
// Returns 8- or 16-bit samples; 16-bit rows stay in PNG (big-endian) order.
struct RawPng {
    int width = 0;
    int height = 0;
    int channels = 0;
    int bit_depth = 0;
    std::vector<std::uint8_t> rows;  // height * row_bytes
    std::size_t row_bytes = 0;
};

RawPng decode_png(const fs::path& path) {
    FileHandle file(path, "rb");
    if (!file.fp) throw IoError("cannot open: " + path.string());
    PngRead r;
    RawPng out;
    std::vector<png_bytep> row_ptrs;
    if (setjmp(png_jmpbuf(r.png)))
        throw IoError("undecodable PNG: " + path.string());
    png_init_io(r.png, file.fp);
    png_read_info(r.png, r.info);

    const int color_type = png_get_color_type(r.png, r.info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(r.png, r.info) < 8)
        png_set_expand_gray_1_2_4_to_8(r.png);
    if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
    png_set_strip_alpha(r.png);
    png_read_update_info(r.png, r.info);

    out.width = static_cast<int>(png_get_image_width(r.png, r.info));
    out.height = static_cast<int>(png_get_image_height(r.png, r.info));
    out.channels = png_get_channels(r.png, r.info);
    out.bit_depth = png_get_bit_depth(r.png, r.info);
    out.row_bytes = png_get_rowbytes(r.png, r.info);
    out.rows.resize(out.row_bytes * static_cast<std::size_t>(out.height));
    row_ptrs.resize(out.height);
    for (int y = 0; y < out.height; ++y)
        row_ptrs[y] = out.rows.data() + static_cast<std::size_t>(y) * out.row_bytes;
    png_read_image(r.png, row_ptrs.data());
    png_read_end(r.png, nullptr);
    return out;
}

Image load_jpeg(const fs::path& path) {
    FileHandle file(path, "rb");
    if (!file.fp) throw IoError("cannot open: " + path.string());

    struct ErrorMgr {
        jpeg_error_mgr mgr;
        std::jmp_buf env;
    } err;
    jpeg_decompress_struct cinfo;
    cinfo.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = [](j_common_ptr ci) {
        std::longjmp(reinterpret_cast<ErrorMgr*>(ci->err)->env, 1);
    };

    Image image;
    if (setjmp(err.env)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError("undecodable JPEG: " + path.string());
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, file.fp);
    jpeg_read_header(&cinfo, TRUE);
    if (cinfo.data_precision > 8) {
        jpeg_destroy_decompress(&cinfo);
        throw ValidationError("unsupported JPEG bit depth " +
                              std::to_string(cinfo.data_precision) + ": " + path.string());
    }
    cinfo.out_color_space =
        cinfo.jpeg_color_space == JCS_GRAYSCALE ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);

    image.width = static_cast<int>(cinfo.output_width);
    image.height = static_cast<int>(cinfo.output_height);
    image.channels = cinfo.output_components;
    image.data.resize(sample_count(image.width, image.height, image.channels));
    const std::size_t stride = image.data.size() / image.height;
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = image.data.data() + cinfo.output_scanline * stride;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    check_image(image);
    return image;
}

std::uint16_t read_u16le(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t read_u32le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

JndMap load_jndm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (bytes.size() < kJndmHeaderSize || std::memcmp(bytes.data(), kJndmMagic, 4) != 0)
        throw ValidationError("bad JNDM magic: " + path.string());
    const std::uint16_t version = read_u16le(bytes.data() + 4);
    if (version != kJndmVersion)
        throw ValidationError("unsupported JNDM version " + std::to_string(version) + ": " +
                              path.string());
    JndMap map;
    map.width = static_cast<int>(read_u32le(bytes.data() + 6));
    map.height = static_cast<int>(read_u32le(bytes.data() + 10));
    map.channels = read_u16le(bytes.data() + 14);
    if (map.width <= 0 || map.height <= 0 || map.channels <= 0)
        throw ValidationError("bad JNDM dimensions: " + path.string());
    const std::size_t n = sample_count(map.width, map.height, map.channels);
    if (bytes.size() != kJndmHeaderSize + n * 4)
        throw ValidationError("JNDM payload length does not match header dimensions: " +
                              path.string());
    map.data.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const float t = std::bit_cast<float>(read_u32le(bytes.data() + kJndmHeaderSize + 4 * i));
        if (!std::isfinite(t) || t < 0.0f)
            throw ValidationError("JNDM threshold must be finite and non-negative: " +
                                  path.string());
        map.data[i] = t;
    }
    return map;
}

// 16-bit PNG import path: threshold = sample / 256.
JndMap load_jnd_png(const fs::path& path) {
    RawPng raw = decode_png(path);
    if (raw.bit_depth != 16)
        throw ValidationError("JND PNG must be 16-bit, got " + std::to_string(raw.bit_depth) +
                              "-bit: " + path.string());
    JndMap map;
    map.width = raw.width;
    map.height = raw.height;
    map.channels = raw.channels;
    map.data.resize(sample_count(map.width, map.height, map.channels));
    const std::size_t per_row = static_cast<std::size_t>(raw.width) * raw.channels;
    for (int y = 0; y < raw.height; ++y) {
        const std::uint8_t* row = raw.rows.data() + static_cast<std::size_t>(y) * raw.row_bytes;
        for (std::size_t i = 0; i < per_row; ++i) {
            // PNG stores 16-bit samples big-endian.
            const std::uint16_t v = static_cast<std::uint16_t>((row[2 * i] << 8) | row[2 * i + 1]);
            map.data[static_cast<std::size_t>(y) * per_row + i] = static_cast<float>(v) / 256.0f;
        }
    }
    return map;
}

} // namespace

Image load_image(const fs::path& path) {
    if (!fs::exists(path)) throw IoError("no such file: " + path.string());
    switch (sniff(path)) {
        case Magic::jpeg:
            return load_jpeg(path);
        case Magic::png: {
            RawPng raw = decode_png(path);
            if (raw.bit_depth > 8)
                throw ValidationError("unsupported bit depth " + std::to_string(raw.bit_depth) +
                                      " (>8 bits per sample): " + path.string());
            Image image;
            image.width = raw.width;
            image.height = raw.height;
            image.channels = raw.channels;
            image.data.resize(sample_count(image.width, image.height, image.channels));
            const std::size_t per_row = static_cast<std::size_t>(raw.width) * raw.channels;
            for (int y = 0; y < raw.height; ++y)
                std::memcpy(image.data.data() + static_cast<std::size_t>(y) * per_row,
                            raw.rows.data() + static_cast<std::size_t>(y) * raw.row_bytes, per_row);
            check_image(image);
            return image;
        }
        default:
            throw IoError("not a PNG or JPEG file: " + path.string());
    }
}

void save_image(const Image& image, const fs::path& path) {
    check_image(image);
    AtomicWriter writer(path);
    PngWrite w;
    std::vector<png_bytep> row_ptrs(image.height);
    const std::size_t per_row = static_cast<std::size_t>(image.width) * image.channels;
    for (int y = 0; y < image.height; ++y)
        row_ptrs[y] = const_cast<png_bytep>(image.data.data() + static_cast<std::size_t>(y) * per_row);

    if (setjmp(png_jmpbuf(w.png))) throw IoError("PNG write failed: " + path.string());
    png_init_io(w.png, writer.fp());
    // Fixed settings keep the encoded bytes identical run to run.
    png_set_compression_level(w.png, 6);
    png_set_filter(w.png, 0, PNG_FILTER_NONE);
    png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(image.width),
                 static_cast<png_uint_32>(image.height), 8,
                 image.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    png_write_image(w.png, row_ptrs.data());
    png_write_end(w.png, nullptr);
    writer.commit();
}

JndMap load_jnd_map(const fs::path& path) {
    if (!fs::exists(path)) throw IoError("no such file: " + path.string());
    switch (sniff(path)) {
        case Magic::jndm:
            return load_jndm(path);
        case Magic::png:
            return load_jnd_png(path);
        default:
            throw ValidationError("not a JNDM or PNG file: " + path.string());
    }
}

void save_jnd_map(const JndMap& map, const fs::path& path) {
    check_jnd_map(map);
    std::vector<std::uint8_t> bytes;
    bytes.reserve(kJndmHeaderSize + map.data.size() * 4);
    bytes.insert(bytes.end(), kJndmMagic, kJndmMagic + 4);
    put_u16le(bytes, kJndmVersion);
    put_u32le(bytes, static_cast<std::uint32_t>(map.width));
    put_u32le(bytes, static_cast<std::uint32_t>(map.height));
    put_u16le(bytes, static_cast<std::uint16_t>(map.channels));
    for (float t : map.data) put_u32le(bytes, std::bit_cast<std::uint32_t>(t));

    AtomicWriter writer(path);
    writer.write(bytes.data(), bytes.size());
    writer.commit();
}

} // namespace jndmix
