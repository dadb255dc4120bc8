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

#include "gestaug/image.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace gestaug {

namespace {

void check_shape(int width, int height, int channels) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("Image: width and height must be >= 1");
    }
    if (channels != 1 && channels != 3) {
        throw std::invalid_argument("Image: channels must be 1 or 3");
    }
}

}  // namespace

Image::Image(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
    check_shape(width, height, channels);
    data_.assign(static_cast<std::size_t>(width) * height * channels, 0);
}

Image::Image(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    check_shape(width, height, channels);
    const std::size_t expected = static_cast<std::size_t>(width) * height * channels;
    if (data_.size() != expected) {
        throw std::invalid_argument("Image: data length does not equal W*H*C");
    }
}

Image Image::constant(int width, int height, int channels, std::uint8_t value) {
    Image img(width, height, channels);
    for (auto& v : img.data_) v = value;
    return img;
}

std::vector<double> image_mean(const Image& img) {
    if (img.empty()) {
        throw std::invalid_argument("image_mean: empty image");
    }
    std::vector<double> sums(img.channels(), 0.0);
    const auto data = img.data();
    const int channels = img.channels();
    for (std::size_t i = 0; i < data.size(); ++i) {
        sums[i % channels] += data[i];
    }
    const double pixel_count = static_cast<double>(img.width()) * img.height();
    for (auto& s : sums) s /= pixel_count;
    return sums;
}

std::uint8_t quantize_channel(double value) {
    const double rounded = std::round(value);  // half away from zero
    if (rounded <= 0.0) return 0;
    if (rounded >= 255.0) return 255;
    return static_cast<std::uint8_t>(rounded);
}

void HardLabel::validate() const {
    if (num_classes < 1) {
        throw std::invalid_argument("HardLabel: num_classes must be >= 1");
    }
    if (class_index < 0 || class_index >= num_classes) {
        throw std::invalid_argument("HardLabel: class_index out of range");
    }
}

void SoftLabel::validate() const {
    double sum = 0.0;
    for (double p : probabilities) {
        if (p < 0.0 || p > 1.0) {
            throw std::invalid_argument("SoftLabel: probability outside [0,1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("SoftLabel: probabilities do not sum to 1");
    }
}

SoftLabel hard_to_soft(const HardLabel& label) {
    label.validate();
    SoftLabel soft;
    soft.probabilities.assign(static_cast<std::size_t>(label.num_classes), 0.0);
    soft.probabilities[static_cast<std::size_t>(label.class_index)] = 1.0;
    return soft;
}

Origin Origin::augmented(int copy_index) {
    if (copy_index < 1) {
        throw std::invalid_argument("Origin: augmented copy_index must be >= 1");
    }
    return Origin{copy_index};
}

void validate_sample_id(const std::string& id) {
    if (id.empty()) {
        throw std::invalid_argument("sample_id must not be empty");
    }
    for (unsigned char ch : id) {
        if (std::isspace(ch)) {
            throw std::invalid_argument("sample_id must not contain whitespace: " + id);
        }
    }
}

}  // namespace gestaug
