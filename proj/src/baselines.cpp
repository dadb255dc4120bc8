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

#include "gestaug/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gestaug {

namespace {

void require_mixable(const GestureSample& a, const GestureSample& b) {
    if (!a.image.same_shape(b.image)) {
        throw std::invalid_argument("baseline: image dimensions differ");
    }
    a.label.validate();
    b.label.validate();
    if (a.label.num_classes != b.label.num_classes) {
        throw std::invalid_argument("baseline: class counts differ");
    }
}

SoftLabel mix_labels(const HardLabel& a, const HardLabel& b, double lambda) {
    SoftLabel label;
    label.probabilities.assign(static_cast<std::size_t>(a.num_classes), 0.0);
    label.probabilities[static_cast<std::size_t>(a.class_index)] += lambda;
    label.probabilities[static_cast<std::size_t>(b.class_index)] += 1.0 - lambda;
    return label;
}

}  // namespace

MixedSample mixup(const GestureSample& a, const GestureSample& b, double lambda) {
    require_mixable(a, b);
    if (lambda < 0.0 || lambda > 1.0) {
        throw std::invalid_argument("mixup: lambda must be in [0,1]");
    }

    Image mixed = a.image;
    auto out = mixed.data();
    const auto pa = a.image.data();
    const auto pb = b.image.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = quantize_channel(lambda * pa[i] + (1.0 - lambda) * pb[i]);
    }

    return MixedSample{std::move(mixed), mix_labels(a.label, b.label, lambda),
                       a.sample_id, b.sample_id, lambda};
}

MixedSample cutmix_at(const GestureSample& a, const GestureSample& b,
                      const PatchRect& patch) {
    require_mixable(a, b);
    const int width = a.image.width();
    const int height = a.image.height();

    const int x0 = std::max(0, patch.x0);
    const int y0 = std::max(0, patch.y0);
    const int x1 = std::min(width, patch.x0 + patch.width);
    const int y1 = std::min(height, patch.y0 + patch.height);
    const long long area =
        (x1 > x0 && y1 > y0)
            ? static_cast<long long>(x1 - x0) * (y1 - y0)
            : 0;

    Image mixed = a.image;
    const int channels = mixed.channels();
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            for (int c = 0; c < channels; ++c) {
                mixed.at(x, y, c) = b.image.at(x, y, c);
            }
        }
    }

    const double lambda =
        1.0 - static_cast<double>(area) /
                  (static_cast<double>(width) * static_cast<double>(height));
    return MixedSample{std::move(mixed), mix_labels(a.label, b.label, lambda),
                       a.sample_id, b.sample_id, lambda};
}

MixedSample cutmix(const GestureSample& a, const GestureSample& b, Rng& rng) {
    require_mixable(a, b);
    const int width = a.image.width();
    const int height = a.image.height();

    const double lambda0 = rng.next_unit();
    const double cut_ratio = std::sqrt(1.0 - lambda0);
    const int cut_w = static_cast<int>(std::lround(width * cut_ratio));
    const int cut_h = static_cast<int>(std::lround(height * cut_ratio));
    const int cx = static_cast<int>(rng.next_unit() * width);
    const int cy = static_cast<int>(rng.next_unit() * height);

    PatchRect patch{cx - cut_w / 2, cy - cut_h / 2, cut_w, cut_h};
    return cutmix_at(a, b, patch);
}

}  // namespace gestaug
