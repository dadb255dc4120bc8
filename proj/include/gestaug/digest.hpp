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
 * @file digest.hpp
 * @brief Content digests for manifest integrity checks.
 *
 * The digest algorithm is SHA-256 over the raw file bytes, hex-encoded
 * lowercase. Ports in other languages must use the same algorithm to
 * produce comparable manifests.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

namespace gestaug {

/// SHA-256 of a byte buffer, as 64 lowercase hex characters.
std::string sha256_hex(std::span<const std::uint8_t> bytes);

/// SHA-256 of a file's contents. Throws std::runtime_error if unreadable.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace gestaug
