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

#include <doctest.h>

#include "gestaug/baselines.hpp"
#include "oracles.hpp"

using namespace gestaug;

namespace {

GestureSample make_sample(const Image& img, int class_index, int classes,
                          const std::string& id) {
    return GestureSample{img, HardLabel{class_index, classes}, id,
                         Origin::original()};
}

}  // namespace

TEST_CASE("mixup endpoints reproduce the parents byte-exactly") {
    Rng rng(30);
    const Image ia = test::random_image(rng, 12, 9, 3);
    const Image ib = test::random_image(rng, 12, 9, 3);
    const auto a = make_sample(ia, 0, 2, "a");
    const auto b = make_sample(ib, 1, 2, "b");

    const MixedSample at_one = mixup(a, b, 1.0);
    CHECK(at_one.image == ia);
    CHECK(at_one.label.probabilities == std::vector<double>{1.0, 0.0});

    const MixedSample at_zero = mixup(a, b, 0.0);
    CHECK(at_zero.image == ib);
    CHECK(at_zero.label.probabilities == std::vector<double>{0.0, 1.0});
}

TEST_CASE("mixup midpoint averages pixels and labels") {
    const auto a = make_sample(Image::constant(4, 4, 1, 100), 0, 2, "a");
    const auto b = make_sample(Image::constant(4, 4, 1, 200), 1, 2, "b");
    const MixedSample mixed = mixup(a, b, 0.5);
    CHECK(mixed.image == Image::constant(4, 4, 1, 150));
    CHECK(mixed.label.probabilities == std::vector<double>{0.5, 0.5});
    CHECK(mixed.lambda == 0.5);
}

TEST_CASE("mixup image symmetry at endpoint and midpoint lambdas") {
    Rng rng(31);
    const auto a = make_sample(test::random_image(rng, 10, 10, 1), 0, 3, "a");
    const auto b = make_sample(test::random_image(rng, 10, 10, 1), 2, 3, "b");
    for (double lambda : {0.0, 0.5, 1.0}) {
        CHECK(mixup(a, b, lambda).image == mixup(b, a, 1.0 - lambda).image);
    }
}

TEST_CASE("mixup label symmetry holds for all lambdas") {
    const auto a = make_sample(Image::constant(2, 2, 1, 1), 0, 4, "a");
    const auto b = make_sample(Image::constant(2, 2, 1, 2), 3, 4, "b");
    for (double lambda : {0.1, 0.25, 0.66, 0.9}) {
        const auto ab = mixup(a, b, lambda).label.probabilities;
        const auto ba = mixup(b, a, 1.0 - lambda).label.probabilities;
        REQUIRE(ab.size() == ba.size());
        for (std::size_t i = 0; i < ab.size(); ++i) {
            CHECK(ab[i] == doctest::Approx(ba[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("mixup validates inputs") {
    const auto a = make_sample(Image::constant(4, 4, 1, 0), 0, 2, "a");
    const auto b = make_sample(Image::constant(5, 4, 1, 0), 1, 2, "b");
    CHECK_THROWS_AS(mixup(a, b, 0.5), std::invalid_argument);

    const auto c = make_sample(Image::constant(4, 4, 1, 0), 1, 3, "c");
    CHECK_THROWS_AS(mixup(a, c, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(mixup(a, a, 1.5), std::invalid_argument);
}

TEST_CASE("cutmix degenerate patches hit the endpoints") {
    Rng rng(32);
    const auto a = make_sample(test::random_image(rng, 8, 8, 1), 0, 2, "a");
    const auto b = make_sample(test::random_image(rng, 8, 8, 1), 1, 2, "b");

    const MixedSample none = cutmix_at(a, b, PatchRect{3, 3, 0, 0});
    CHECK(none.image == a.image);
    CHECK(none.lambda == 1.0);

    const MixedSample full = cutmix_at(a, b, PatchRect{0, 0, 8, 8});
    CHECK(full.image == b.image);
    CHECK(full.lambda == 0.0);
}

TEST_CASE("cutmix 5x4 patch on 10x10 gives lambda 0.80") {
    // Parents differ at every pixel so membership is observable.
    const auto a = make_sample(Image::constant(10, 10, 1, 10), 0, 2, "a");
    const auto b = make_sample(Image::constant(10, 10, 1, 200), 1, 2, "b");

    const PatchRect patch{2, 3, 5, 4};
    const MixedSample mixed = cutmix_at(a, b, patch);
    CHECK(mixed.lambda == doctest::Approx(0.80).epsilon(1e-12));
    CHECK(mixed.label.probabilities[0] == doctest::Approx(0.80));
    CHECK(mixed.label.probabilities[1] == doctest::Approx(0.20));

    // Exhaustive membership oracle.
    for (int y = 0; y < 10; ++y) {
        for (int x = 0; x < 10; ++x) {
            const bool in_patch = x >= 2 && x < 7 && y >= 3 && y < 7;
            CHECK(mixed.image.at(x, y) == (in_patch ? 200 : 10));
        }
    }
}

TEST_CASE("cutmix lambda equals one minus the clipped area fraction") {
    const auto a = make_sample(Image::constant(16, 12, 1, 1), 0, 2, "a");
    const auto b = make_sample(Image::constant(16, 12, 1, 254), 1, 2, "b");

    Rng rng = derive_rng(5, "cutmix-prop", 1);
    for (int i = 0; i < 100; ++i) {
        const MixedSample mixed = cutmix(a, b, rng);
        long long replaced = 0;
        for (int y = 0; y < 12; ++y)
            for (int x = 0; x < 16; ++x)
                if (mixed.image.at(x, y) == 254) ++replaced;
        const double expected = 1.0 - static_cast<double>(replaced) / (16.0 * 12.0);
        CHECK(mixed.lambda == doctest::Approx(expected).epsilon(1e-12));
        CHECK(mixed.lambda >= 0.0);
        CHECK(mixed.lambda <= 1.0);
    }
}

TEST_CASE("cutmix patches clip at the borders") {
    const auto a = make_sample(Image::constant(10, 10, 1, 0), 0, 2, "a");
    const auto b = make_sample(Image::constant(10, 10, 1, 255), 1, 2, "b");
    const MixedSample mixed = cutmix_at(a, b, PatchRect{-3, 8, 6, 6});
    // Clipped to [0,3) x [8,10) = 6 pixels.
    CHECK(mixed.lambda == doctest::Approx(1.0 - 6.0 / 100.0).epsilon(1e-12));
}

TEST_CASE("mixed labels always sum to one") {
    Rng rng(33);
    const auto a = make_sample(test::random_image(rng, 6, 6, 1), 2, 5, "a");
    const auto b = make_sample(test::random_image(rng, 6, 6, 1), 4, 5, "b");
    Rng stream = derive_rng(6, "sumcheck", 1);
    for (int i = 0; i < 50; ++i) {
        const MixedSample m1 = mixup(a, b, stream.next_unit());
        CHECK_NOTHROW(m1.label.validate());
        const MixedSample m2 = cutmix(a, b, stream);
        CHECK_NOTHROW(m2.label.validate());
    }
}
