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

/**
 * @file png_io.hpp
 * @brief PNG serialization for Image (8-bit gray or RGB, no alpha).
 *
 * Encoding is deterministic: a fixed zlib level and filter strategy yield
 * byte-identical files for byte-identical rasters, which the manifest
 * digests rely on.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gestaug/image.hpp"

namespace gestaug {

/// zlib level used when none is specified. Balance of speed and size for
/// dataset generation; see cmd_bench for measurements.
inline constexpr int kDefaultPngCompression = 3;

/// Encode to an in-memory PNG stream.
std::vector<std::uint8_t> encode_png(const Image& img,
                                     int compression = kDefaultPngCompression);

/// Decode from an in-memory PNG stream. Accepts 8-bit grayscale or RGB
/// only; anything else (16-bit, palette, alpha) is rejected.
Image decode_png(const std::vector<std::uint8_t>& bytes);

/// Encode and write to @p path. Throws std::runtime_error on I/O failure.
void write_png(const std::filesystem::path& path, const Image& img,
               int compression = kDefaultPngCompression);

/// Read and decode @p path.
Image read_png(const std::filesystem::path& path);

}  // namespace gestaug
