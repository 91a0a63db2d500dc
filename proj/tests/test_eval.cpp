#include "doctest.h"

#include <cmath>
#include <random>

#include "hseg/eval.hpp"
#include "testutil.hpp"

using namespace hseg;

namespace {

LabelMap random_labels(std::mt19937& rng, int w, int h, int regions) {
    // random assignment, then compact ids to 0..R-1
    LabelMap lm(w, h);
    std::uniform_int_distribution<int> pick(0, regions - 1);
    for (auto& v : lm.labels)
        v = static_cast<uint32_t>(pick(rng));
    std::map<uint32_t, uint32_t> compact;
    for (auto& v : lm.labels) {
        const auto [it, fresh] = compact.try_emplace(v, static_cast<uint32_t>(compact.size()));
        v = it->second;
    }
    return lm;
}

} // namespace

TEST_SUITE("eval") {

TEST_CASE("q of a flat one-segment image") {
    const Raster img = testutil::flat(4, 4, {17, 200, 96});
    const LabelMap one(4, 4, 0);
    CHECK(q_metric(img, one) == doctest::Approx(2.44140625e-07).epsilon(1e-12));
}

TEST_CASE("q has no color-error term for flat-colored segments") {
    Raster img(4, 4);
    LabelMap lm(4, 4);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
            img.at(x, y) = x < 2 ? Rgb{250, 0, 0} : Rgb{5, 5, 250};
            lm.at(x, y) = x < 2 ? 0 : 1;
        }
    }
    // two flat equal-area segments: only the area-ratio terms remain
    const double expected = std::sqrt(2.0) / (1000.0 * 16) * 2.0 * (2.0 / 8) * (2.0 / 8);
    CHECK(q_metric(img, lm) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("q grows when a flat image is cut in two, shrinks with image area") {
    const Raster small = testutil::flat(4, 4, {80, 80, 80});
    const Raster big = testutil::flat(8, 8, {80, 80, 80});
    CHECK(q_metric(big, LabelMap(8, 8, 0)) < q_metric(small, LabelMap(4, 4, 0)));
}

TEST_CASE("h_r of flat segments is zero") {
    const Raster img = testutil::vertical_bands(8, 8, {{255, 0, 0}, {0, 0, 255}});
    CHECK(h_r(img, testutil::vertical_band_labels(8, 8, 2)) == 0.0);
}

TEST_CASE("h_r of a two-valued single segment") {
    Raster img(4, 4, {0, 0, 0});
    img.at(0, 0) = {255, 255, 255};
    img.at(1, 0) = {255, 255, 255};
    img.at(2, 0) = {255, 255, 255};
    img.at(3, 0) = {255, 255, 255};
    img.at(0, 1) = {255, 255, 255};
    img.at(1, 1) = {255, 255, 255};
    img.at(2, 1) = {255, 255, 255};
    img.at(3, 1) = {255, 255, 255};
    // half white, half black: one segment with two equally likely values
    CHECK(h_r(img, LabelMap(4, 4, 0)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    Raster quarters(4, 4, {0, 0, 0});
    quarters.at(0, 0) = {255, 255, 255};
    quarters.at(1, 0) = {255, 255, 255};
    quarters.at(2, 0) = {255, 255, 255};
    quarters.at(3, 0) = {255, 255, 255};
    // 3/4 dark, 1/4 bright
    CHECK(h_r(quarters, LabelMap(4, 4, 0)) == doctest::Approx(0.5623351446188083).epsilon(1e-12));
}

TEST_CASE("h_l of simple partitions") {
    CHECK(h_l(LabelMap(5, 5, 0)) == 0.0);
    CHECK(h_l(testutil::vertical_band_labels(8, 8, 2)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    LabelMap thirds(4, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            thirds.at(x, y) = y < 2 ? 0u : (x < 2 ? 1u : 2u); // areas 8, 4, 4
    CHECK(h_l(thirds) == doctest::Approx(1.0397207708399179).epsilon(1e-12));
}

TEST_CASE("e is exactly the sum of h_r and h_l") {
    std::mt19937 rng(555);
    for (int iter = 0; iter < 50; ++iter) {
        std::uniform_int_distribution<int> dim(1, 14);
        const int w = dim(rng), h = dim(rng);
        const Raster img = testutil::natural_synthetic(w, h, 1000 + iter);
        const LabelMap lm = random_labels(rng, w, h, 1 + iter % 6);
        const EvalReport report = evaluate(img, lm);
        CHECK(report.e == report.h_r + report.h_l); // bitwise
        CHECK(e_metric(img, lm) == h_r(img, lm) + h_l(lm));
        CHECK(report.h_r >= 0.0);
        CHECK(report.h_l >= 0.0);
        CHECK(report.q >= 0.0);
        CHECK(report.regions == lm.region_count());
    }
}

TEST_CASE("h_l peaks at equal areas") {
    std::mt19937 rng(666);
    for (int iter = 0; iter < 100; ++iter) {
        const int regions = 2 + iter % 7;
        const LabelMap lm = random_labels(rng, 12, 12, regions);
        CHECK(h_l(lm) <= std::log(static_cast<double>(lm.region_count())) + 1e-12);
    }
    CHECK(h_l(testutil::vertical_band_labels(8, 8, 4)) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("splitting a segment lowers h_r and raises h_l") {
    std::mt19937 rng(777);
    for (int iter = 0; iter < 60; ++iter) {
        const int w = 10, h = 10;
        const Raster img = testutil::natural_synthetic(w, h, 2000 + iter);
        LabelMap lm = random_labels(rng, w, h, 1 + iter % 4);
        const double hr_before = h_r(img, lm);
        const double hl_before = h_l(lm);

        // split the largest segment with a random coin per pixel
        const uint32_t target = 0;
        const uint32_t fresh = lm.region_count();
        std::uniform_int_distribution<int> coin(0, 1);
        bool any = false;
        for (auto& v : lm.labels) {
            if (v == target && coin(rng)) {
                v = fresh;
                any = true;
            }
        }
        if (!any)
            continue;
        std::map<uint32_t, uint32_t> compact;
        for (auto& v : lm.labels) {
            const auto [it, f2] = compact.try_emplace(v, static_cast<uint32_t>(compact.size()));
            v = it->second;
        }
        CHECK(h_r(img, lm) <= hr_before + 1e-9);
        CHECK(h_l(lm) >= hl_before - 1e-9);
    }
}

TEST_CASE("dimension mismatches are rejected") {
    const Raster img = testutil::flat(4, 4, {1, 1, 1});
    CHECK_THROWS(q_metric(img, LabelMap(3, 4, 0)));
    CHECK_THROWS(h_r(img, LabelMap(4, 3, 0)));
}

} // TEST_SUITE
