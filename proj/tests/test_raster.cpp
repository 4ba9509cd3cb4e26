#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "amoebakit/raster.hpp"

using namespace amoebakit;

namespace {

Grid random_grid(std::size_t rows, std::size_t cols, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution b(density);
    Grid g(rows, cols);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = b(rng);
    return g;
}

// Brute-force oracles.
double brute_sq_distance(const Grid& g, long r, long c, bool wrap) {
    const long R = static_cast<long>(g.rows()), C = static_cast<long>(g.cols());
    double best = std::numeric_limits<double>::infinity();
    for (long i = 0; i < R; ++i)
        for (long j = 0; j < C; ++j) {
            if (!g.at(i, j)) continue;
            long dr = std::abs(i - r), dc = std::abs(j - c);
            if (wrap) {
                dr = std::min(dr, R - dr);
                dc = std::min(dc, C - dc);
            }
            best = std::min(best, static_cast<double>(dr * dr + dc * dc));
        }
    return best;
}

int brute_chessboard(const Grid& g, long r, long c, bool border) {
    const long R = static_cast<long>(g.rows()), C = static_cast<long>(g.cols());
    long best = std::numeric_limits<long>::max();
    for (long i = 0; i < R; ++i)
        for (long j = 0; j < C; ++j)
            if (g.at(i, j)) best = std::min(best, std::max(std::abs(i - r), std::abs(j - c)));
    if (border) best = std::min({best, r + 1, c + 1, R - r, C - c});
    return static_cast<int>(best);
}

std::size_t count_components_union_find(const Grid& g, std::uint8_t value, bool wrap) {
    const std::size_t R = g.rows(), C = g.cols();
    std::vector<std::size_t> parent(R * C);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c) {
            if (g.at(r, c) != value) continue;
            if (c + 1 < C || wrap) {
                const std::size_t c2 = (c + 1) % C;
                if (g.at(r, c2) == value) unite(r * C + c, r * C + c2);
            }
            if (r + 1 < R || wrap) {
                const std::size_t r2 = (r + 1) % R;
                if (g.at(r2, c) == value) unite(r * C + c, r2 * C + c);
            }
        }
    std::size_t n = 0;
    for (std::size_t i = 0; i < R * C; ++i)
        if (g[i] == value && find(i) == i) ++n;
    return n;
}

}  // namespace

TEST_CASE("label_regions matches a union-find count") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = random_grid(23, 31, 0.45, seed);
        for (bool wrap : {false, true}) {
            const auto lab = label_regions(g, 0, wrap);
            CHECK(lab.regions == count_components_union_find(g, 0, wrap));
            for (std::size_t i = 0; i < g.size(); ++i) CHECK((lab.label[i] >= 0) == (g[i] == 0));
        }
    }
}

TEST_CASE("label_regions wraps on the torus") {
    Grid g(4, 6, 1);
    for (std::size_t r = 0; r < 4; ++r) {
        g.at(r, 0) = 0;
        g.at(r, 5) = 0;
    }
    CHECK(label_regions(g, 0, false).regions == 2);
    CHECK(label_regions(g, 0, true).regions == 1);
}

TEST_CASE("chessboard distance matches brute force") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto g = random_grid(17, 13, 0.05, seed);
        for (bool border : {false, true}) {
            const auto d = chessboard_distance(g, border);
            for (long r = 0; r < 17; ++r)
                for (long c = 0; c < 13; ++c) {
                    const int want = brute_chessboard(g, r, c, border);
                    if (!border && want == std::numeric_limits<long>::max()) continue;
                    CHECK(d[static_cast<std::size_t>(r * 13 + c)] == want);
                }
        }
    }
}

TEST_CASE("Euclidean distance transform matches brute force, planar and toroidal") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto g = random_grid(19, 24, 0.03, seed + 100);
        for (bool wrap : {false, true}) {
            const auto d = squared_distance_transform(g, wrap);
            for (long r = 0; r < 19; ++r)
                for (long c = 0; c < 24; ++c) CHECK(d[static_cast<std::size_t>(r * 24 + c)] == brute_sq_distance(g, r, c, wrap));
        }
    }
    const auto empty = squared_distance_transform(Grid(5, 5), false);
    CHECK(std::isinf(empty[0]));
}

TEST_CASE("dilate is the Euclidean disk dilation") {
    const auto g = random_grid(21, 21, 0.02, 5);
    for (bool wrap : {false, true}) {
        const auto d = dilate(g, 2.0, wrap);
        for (long r = 0; r < 21; ++r)
            for (long c = 0; c < 21; ++c) CHECK((d.at(r, c) != 0) == (brute_sq_distance(g, r, c, wrap) <= 4.0));
    }
}

TEST_CASE("pixel Hausdorff distance") {
    Grid a(10, 10), b(10, 10);
    a.at(2, 2) = 1;
    b.at(2, 5) = 1;
    CHECK(pixel_hausdorff(a, a, false) == 0.0);
    CHECK(pixel_hausdorff(a, b, false) == doctest::Approx(3.0));
    b.at(9, 2) = 1;
    CHECK(pixel_hausdorff(a, b, false) == doctest::Approx(7.0));
    CHECK(pixel_hausdorff(a, b, true) == doctest::Approx(3.0));  // (9,2) is 3 rows away through the wrap
}

TEST_CASE("grid set operations") {
    Grid a(2, 2), b(2, 2);
    a[0] = a[1] = 1;
    b[1] = b[2] = 1;
    CHECK(grid_or(a, b).count() == 3);
    CHECK(grid_minus(a, b).count() == 1);
    CHECK(grid_minus(a, b)[0] == 1);
}

TEST_CASE("PGM output: header, top row is the largest y, occupied is black") {
    const auto dir = std::filesystem::temp_directory_path() / "amoebakit_test_pgm";
    std::filesystem::create_directories(dir);
    Grid g(2, 3);
    g.at(1, 0) = 1;  // top-left once flipped
    write_pgm(dir / "g.pgm", g);
    std::ifstream in(dir / "g.pgm", std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    const std::string header = "P5\n3 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 6);
    CHECK(bytes.substr(0, header.size()) == header);
    CHECK(static_cast<unsigned char>(bytes[header.size()]) == 0);
    CHECK(static_cast<unsigned char>(bytes[header.size() + 1]) == 255);
    CHECK(static_cast<unsigned char>(bytes[header.size() + 3]) == 255);
    for (const auto& e : std::filesystem::directory_iterator(dir)) CHECK(e.path().filename() == "g.pgm");
    std::filesystem::remove_all(dir);
}

TEST_CASE("FNV-1a reference values") {
    CHECK(fnv1a64(std::string()) == 14695981039346656037ull);
    CHECK(fnv1a64(std::string("a")) == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64(std::string("foobar")) == 0x85944171f73967e8ull);
}
