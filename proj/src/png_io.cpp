// Copyright 2026 The gestaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gestaug/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace gestaug {

namespace {

struct MemWriter {
    std::vector<std::uint8_t>* out;
};

void mem_write(png_structp png, png_bytep data, png_size_t length) {
    auto* writer = static_cast<MemWriter*>(png_get_io_ptr(png));
    writer->out->insert(writer->out->end(), data, data + length);
}

void mem_flush(png_structp) {}

struct MemReader {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

void mem_read(png_structp png, png_bytep out, png_size_t length) {
    auto* reader = static_cast<MemReader*>(png_get_io_ptr(png));
    if (reader->pos + length > reader->size) {
        png_error(png, "read past end of PNG stream");
    }
    std::memcpy(out, reader->data + reader->pos, length);
    reader->pos += length;
}

[[noreturn]] void on_png_error(png_structp png, png_const_charp msg) {
    throw std::runtime_error(std::string("png: ") + msg);
    (void)png;
}

void on_png_warning(png_structp, png_const_charp) {}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& img, int compression) {
    if (img.empty()) {
        throw std::invalid_argument("encode_png: empty image");
    }
    if (compression < 0 || compression > 9) {
        throw std::invalid_argument("encode_png: compression must be in [0,9]");
    }

    std::vector<std::uint8_t> out;
    MemWriter writer{&out};

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                              on_png_error, on_png_warning);
    if (!png) throw std::runtime_error("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }

    try {
        png_set_write_fn(png, &writer, mem_write, mem_flush);
        png_set_compression_level(png, compression);
        // Fixed filter keeps the byte stream a pure function of the raster.
        png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_SUB);

        const int color_type =
            img.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
        png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
                     static_cast<png_uint_32>(img.height()), 8, color_type,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_BASE,
                     PNG_FILTER_TYPE_BASE);
        png_write_info(png, info);

        const std::size_t stride =
            static_cast<std::size_t>(img.width()) * img.channels();
        const std::uint8_t* base = img.data().data();
        for (int y = 0; y < img.height(); ++y) {
            png_write_row(png, const_cast<png_bytep>(base + y * stride));
        }
        png_write_end(png, info);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
    png_destroy_write_struct(&png, &info);
    return out;
}

Image decode_png(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
        throw std::runtime_error("decode_png: not a PNG stream");
    }

    MemReader reader{bytes.data(), bytes.size(), 0};
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                             on_png_error, on_png_warning);
    if (!png) throw std::runtime_error("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }

    Image result;
    try {
        png_set_read_fn(png, &reader, mem_read);
        png_read_info(png, info);

        const png_uint_32 width = png_get_image_width(png, info);
        const png_uint_32 height = png_get_image_height(png, info);
        const int bit_depth = png_get_bit_depth(png, info);
        const int color_type = png_get_color_type(png, info);

        if (bit_depth != 8) {
            throw std::runtime_error("decode_png: only 8-bit PNGs are supported");
        }
        int channels = 0;
        if (color_type == PNG_COLOR_TYPE_GRAY) {
            channels = 1;
        } else if (color_type == PNG_COLOR_TYPE_RGB) {
            channels = 3;
        } else {
            throw std::runtime_error(
                "decode_png: only grayscale and RGB without alpha are supported");
        }

        result = Image(static_cast<int>(width), static_cast<int>(height), channels);
        const std::size_t stride = static_cast<std::size_t>(width) * channels;
        std::uint8_t* base = result.data().data();
        for (png_uint_32 y = 0; y < height; ++y) {
            png_read_row(png, base + y * stride, nullptr);
        }
        png_read_end(png, nullptr);
    } catch (...) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw;
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return result;
}

void write_png(const std::filesystem::path& path, const Image& img,
               int compression) {
    const auto bytes = encode_png(img, compression);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("write_png: cannot open " + path.string());
    }
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!file) {
        throw std::runtime_error("write_png: short write to " + path.string());
    }
}

Image read_png(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("read_png: cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                                    std::istreambuf_iterator<char>());
    return decode_png(bytes);
}

}  // namespace gestaug
