#include "doctest.h"

#include <cmath>
#include <random>

#include "hseg/quadtree.hpp"
#include "testutil.hpp"

using namespace hseg;

namespace {

const std::vector<Rgb> kDistinctBins = {
    {0, 0, 0},       // luminance 0
    {0, 0, 255},     // 29
    {255, 0, 0},     // 76
    {255, 255, 255}, // 255
};

// Every leaf window must cover each image pixel exactly once.
void check_leaf_partition(const DecompositionTree& tree, int w, int h) {
    std::vector<int> cover(static_cast<size_t>(w) * h, 0);
    long long area = 0;
    for (const DecompNode& n : tree.nodes) {
        if (!n.is_leaf())
            continue;
        area += n.window.area();
        for (int y = n.window.y0; y < n.window.y0 + n.window.h; ++y)
            for (int x = n.window.x0; x < n.window.x0 + n.window.w; ++x)
                ++cover[static_cast<size_t>(y) * w + x];
    }
    CHECK(area == static_cast<long long>(w) * h);
    for (int c : cover)
        CHECK(c == 1);
}

int count_all_leaves(const DecompositionTree& tree) {
    const LeafCounts c = count_leaves(tree);
    return c.non_chaos + c.chaos;
}

} // namespace

TEST_SUITE("quadtree") {

TEST_CASE("power-of-two split gives four equal quadrants") {
    const auto quads = quadrant_split({0, 0, 8, 8});
    for (const Window& q : quads) {
        CHECK(q.w == 4);
        CHECK(q.h == 4);
    }
    // order: top-right, top-left, bottom-left, bottom-right
    CHECK(quads[0] == Window{4, 0, 4, 4});
    CHECK(quads[1] == Window{0, 0, 4, 4});
    CHECK(quads[2] == Window{0, 4, 4, 4});
    CHECK(quads[3] == Window{4, 4, 4, 4});
}

TEST_CASE("odd extents split with the ceil going to the first half") {
    const auto quads = quadrant_split({0, 0, 5, 4});
    CHECK(quads[1].w == 3); // left
    CHECK(quads[0].w == 2); // right
    CHECK(quads[1].h == 2);
    CHECK(quads[2].h == 2);
    long long area = 0;
    for (const Window& q : quads)
        area += q.area();
    CHECK(area == 20);
}

TEST_CASE("quadrants always tile their window") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dim(2, 37);
    std::uniform_int_distribution<int> off(0, 11);
    for (int iter = 0; iter < 100; ++iter) {
        const Window win{off(rng), off(rng), dim(rng), dim(rng)};
        const auto quads = quadrant_split(win);
        std::vector<int> cover(static_cast<size_t>(win.w) * win.h, 0);
        for (const Window& q : quads) {
            CHECK(q.w >= 1);
            CHECK(q.h >= 1);
            for (int y = q.y0; y < q.y0 + q.h; ++y)
                for (int x = q.x0; x < q.x0 + q.w; ++x)
                    ++cover[static_cast<size_t>(y - win.y0) * win.w + (x - win.x0)];
        }
        for (int c : cover)
            CHECK(c == 1);
    }
    CHECK_THROWS(quadrant_split({0, 0, 1, 8}));
    CHECK_THROWS(quadrant_split({0, 0, 8, 1}));
}

TEST_CASE("one-color image stops at the root") {
    const Raster img = testutil::flat(64, 64, {90, 120, 30});
    const DecompositionTree tree = decompose(img, {});
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].kind == NodeKind::NonChaosLeaf);
    CHECK(tree.nodes[0].entropy == 0.0);
    CHECK(count_leaves(tree).non_chaos == 1);
    CHECK(count_leaves(tree).chaos == 0);
}

TEST_CASE("three flat bands stay a single root leaf at k=3") {
    const Raster img = testutil::vertical_bands(64, 64, {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}});
    const DecompParams params; // k=3, a=0.998, k'=3, bins=64, l=3

    // analytic band histogram: 21, 21 and 22 columns of 64 rows
    const double p0 = 21.0 / 64, p1 = 21.0 / 64, p2 = 22.0 / 64;
    const double expected_h = -(p0 * std::log(p0) + p1 * std::log(p1) + p2 * std::log(p2));
    const Histogram hist = luminance_histogram(img, {0, 0, 64, 64}, params.bins);
    CHECK(histogram_entropy(hist) == doctest::Approx(expected_h).epsilon(1e-12));
    CHECK(expected_h <= noise_bound(params.model));

    const DecompositionTree tree = decompose(img, params);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].kind == NodeKind::NonChaosLeaf);
}

TEST_CASE("k=1 with a=1 forces single-color or pixel-level leaves") {
    std::mt19937 rng(23);
    const Raster img = testutil::random_raster(8, 8, rng, kDistinctBins);
    DecompParams params;
    params.model = {1, 1.0, 1};
    params.chaos_threshold = 1; // bound is 0: recurse to unit windows if needed
    const DecompositionTree tree = decompose(img, params);
    for (const DecompNode& n : tree.nodes) {
        if (n.kind == NodeKind::NonChaosLeaf)
            CHECK(n.entropy == 0.0); // single histogram value
    }
    check_leaf_partition(tree, 8, 8);
}

TEST_CASE("four-color image splits once into four chaos leaves") {
    Raster img(4, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            img.at(x, y) = kDistinctBins[(y / 2) * 2 + (x / 2)];
    const DecompositionTree tree = decompose(img, {}); // l=3
    const LeafCounts counts = count_leaves(tree);
    CHECK(counts.non_chaos == 0);
    CHECK(counts.chaos == 4);
    CHECK(tree.nodes.size() == 5);
    CHECK(tree.nodes[tree.root].kind == NodeKind::Internal);
}

TEST_CASE("a strip too thin to quarter ends as a chaos leaf") {
    Raster img(2, 1);
    img.at(0, 0) = {0, 0, 0};
    img.at(1, 0) = {255, 255, 255};
    DecompParams params;
    params.model = {1, 1.0, 1}; // zero bound, so the two-color strip fails it
    params.chaos_threshold = 1;
    const DecompositionTree tree = decompose(img, params);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].kind == NodeKind::ChaosLeaf);
}

TEST_CASE("leaf windows partition random images") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> dim(1, 33);
    for (int iter = 0; iter < 25; ++iter) {
        const int w = dim(rng), h = dim(rng);
        const Raster img = testutil::random_raster(w, h, rng, kDistinctBins);
        DecompParams params;
        params.model.dominant_count = 1 + (iter % 4);
        const DecompositionTree tree = decompose(img, params);
        check_leaf_partition(tree, w, h);
        const LeafCounts counts = count_leaves(tree);
        int leaves = 0;
        for (const DecompNode& n : tree.nodes)
            if (n.is_leaf())
                ++leaves;
        CHECK(counts.chaos + counts.non_chaos == leaves);
    }
}

TEST_CASE("depth bound for power-of-two images") {
    std::mt19937 rng(47);
    for (int size : {16, 32}) {
        for (int l : {2, 3, 4}) {
            const Raster img = testutil::random_raster(size, size, rng, kDistinctBins);
            DecompParams params;
            params.model = {1, 1.0, 1}; // harshest stopping rule: deepest tree
            params.chaos_threshold = l;
            const DecompositionTree tree = decompose(img, params);
            const int bound = static_cast<int>(std::floor(std::log2(size))) -
                              static_cast<int>(std::ceil(std::log2(l))) + 1;
            CHECK(tree_depth(tree) <= bound);
        }
    }
}

TEST_CASE("larger k never increases the leaf count") {
    std::mt19937 rng(59);
    for (int iter = 0; iter < 10; ++iter) {
        const Raster img = testutil::random_raster(12, 12, rng, kDistinctBins);
        DecompParams params;
        int prev = -1;
        for (int k = 1; k <= 6; ++k) {
            params.model.dominant_count = k;
            const int leaves = count_all_leaves(decompose(img, params));
            if (prev >= 0)
                CHECK(leaves <= prev);
            prev = leaves;
        }
    }
}

TEST_CASE("decomposition is deterministic") {
    std::mt19937 rng(61);
    const Raster img = testutil::random_raster(17, 13, rng, kDistinctBins);
    const std::string a = quadtree_to_json(decompose(img, {}));
    const std::string b = quadtree_to_json(decompose(img, {}));
    CHECK(a == b);
}

} // TEST_SUITE
