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
 * @file image.hpp
 * @brief Core raster and label types shared by every other module.
 */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gestaug {

/**
 * @brief Dense 8-bit raster, row-major, channel-interleaved.
 *
 * Grayscale (1 channel) and RGB (3 channels) only. Transforms compute in
 * real arithmetic and quantize once at their output (round half away from
 * zero, clamp to [0,255]), so an Image never holds intermediate values.
 */
class Image {
public:
    Image() = default;

    /// Zero-filled (black) raster.
    Image(int width, int height, int channels);

    /// Takes ownership of @p data; throws std::invalid_argument unless
    /// data.size() == width*height*channels.
    Image(int width, int height, int channels, std::vector<std::uint8_t> data);

    static Image constant(int width, int height, int channels, std::uint8_t value);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    bool empty() const { return data_.empty(); }

    std::size_t index(int x, int y, int c) const {
        return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
    }

    std::uint8_t at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }
    std::uint8_t& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }

    std::span<const std::uint8_t> data() const { return data_; }
    std::span<std::uint8_t> data() { return data_; }

    bool same_shape(const Image& other) const {
        return width_ == other.width_ && height_ == other.height_ &&
               channels_ == other.channels_;
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Arithmetic mean of each channel over all pixels; one entry per channel.
std::vector<double> image_mean(const Image& img);

/// Quantize a real channel value: round half away from zero, clamp to [0,255].
std::uint8_t quantize_channel(double value);

/**
 * @brief Hard class label under a fixed class count (14/21/28 for the
 *        supported datasets, but any positive count is accepted).
 */
struct HardLabel {
    int class_index = 0;
    int num_classes = 1;

    /// Throws std::invalid_argument unless 0 <= class_index < num_classes.
    void validate() const;

    friend bool operator==(const HardLabel&, const HardLabel&) = default;
};

/// Probability vector over classes; entries in [0,1], summing to 1 within 1e-9.
struct SoftLabel {
    std::vector<double> probabilities;

    void validate() const;
    std::size_t num_classes() const { return probabilities.size(); }

    friend bool operator==(const SoftLabel&, const SoftLabel&) = default;
};

/// One-hot expansion of a hard label.
SoftLabel hard_to_soft(const HardLabel& label);

/**
 * @brief Provenance of a sample: either a dataset original or the k-th
 *        augmented copy (k >= 1) of one.
 */
struct Origin {
    int copy_index = 0;  // 0 = original, >= 1 = augmented copy number

    static Origin original() { return Origin{0}; }
    static Origin augmented(int copy_index);

    bool is_augmented() const { return copy_index > 0; }

    friend bool operator==(const Origin&, const Origin&) = default;
};

/// A gesture image with its label and identity metadata.
struct GestureSample {
    Image image;
    HardLabel label;
    std::string sample_id;  // opaque; no whitespace, unique within a manifest
    Origin origin;
};

/// Throws std::invalid_argument if @p id is empty or contains whitespace.
void validate_sample_id(const std::string& id);

}  // namespace gestaug
