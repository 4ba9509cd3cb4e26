#include "amoebakit/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace amoebakit {

std::size_t Grid::count() const {
    return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](std::uint8_t v) { return v != 0; }));
}

Grid grid_or(const Grid& a, const Grid& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("grid size mismatch");
    Grid out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] || b[i]) ? 1 : 0;
    return out;
}

Grid grid_minus(const Grid& a, const Grid& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("grid size mismatch");
    Grid out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] && !b[i]) ? 1 : 0;
    return out;
}

Labeling label_regions(const Grid& grid, std::uint8_t value, bool wrap) {
    const std::size_t R = grid.rows(), C = grid.cols();
    Labeling out;
    out.label.assign(R * C, -1);
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < R * C; ++start) {
        if (out.label[start] != -1 || (grid[start] != 0) != (value != 0)) continue;
        const auto id = static_cast<std::int32_t>(out.regions++);
        out.label[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            const std::size_t r = i / C, c = i % C;
            std::size_t nb[4];
            int k = 0;
            if (r > 0) nb[k++] = i - C; else if (wrap) nb[k++] = (R - 1) * C + c;
            if (r + 1 < R) nb[k++] = i + C; else if (wrap) nb[k++] = c;
            if (c > 0) nb[k++] = i - 1; else if (wrap) nb[k++] = r * C + C - 1;
            if (c + 1 < C) nb[k++] = i + 1; else if (wrap) nb[k++] = r * C;
            for (int j = 0; j < k; ++j) {
                const std::size_t n = nb[j];
                if (out.label[n] == -1 && (grid[n] != 0) == (value != 0)) {
                    out.label[n] = id;
                    stack.push_back(n);
                }
            }
        }
    }
    return out;
}

std::vector<std::int32_t> chessboard_distance(const Grid& obstacles, bool border_blocks) {
    const auto R = static_cast<std::int64_t>(obstacles.rows()), C = static_cast<std::int64_t>(obstacles.cols());
    constexpr std::int32_t inf = std::numeric_limits<std::int32_t>::max() / 2;
    std::vector<std::int32_t> d(static_cast<std::size_t>(R * C), inf);
    std::deque<std::size_t> q;
    for (std::int64_t r = 0; r < R; ++r)
        for (std::int64_t c = 0; c < C; ++c) {
            const auto i = static_cast<std::size_t>(r * C + c);
            if (obstacles[i]) {
                d[i] = 0;
                q.push_back(i);
            } else if (border_blocks && (r == 0 || c == 0 || r == R - 1 || c == C - 1)) {
                d[i] = 1;
            }
        }
    // Border cells seeded at distance 1 enter the queue after the zeros.
    for (std::int64_t r = 0; r < R; ++r)
        for (std::int64_t c = 0; c < C; ++c) {
            const auto i = static_cast<std::size_t>(r * C + c);
            if (d[i] == 1) q.push_back(i);
        }
    while (!q.empty()) {
        const std::size_t i = q.front();
        q.pop_front();
        const std::int64_t r = static_cast<std::int64_t>(i) / C, c = static_cast<std::int64_t>(i) % C;
        for (std::int64_t dr = -1; dr <= 1; ++dr)
            for (std::int64_t dc = -1; dc <= 1; ++dc) {
                const std::int64_t rr = r + dr, cc = c + dc;
                if (rr < 0 || cc < 0 || rr >= R || cc >= C) continue;
                const auto n = static_cast<std::size_t>(rr * C + cc);
                if (d[n] > d[i] + 1) {
                    d[n] = d[i] + 1;
                    q.push_back(n);
                }
            }
    }
    return d;
}

namespace {

// Felzenszwalb-Huttenlocher lower envelope of parabolas, 1-D squared EDT.
void edt_1d(const double* f, double* out, std::size_t n, std::vector<std::size_t>& v, std::vector<double>& z) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    v.assign(n, 0);
    z.assign(n + 1, 0.0);
    std::size_t k = 0;
    std::size_t first = n;
    for (std::size_t q = 0; q < n; ++q)
        if (f[q] < inf) {
            first = q;
            break;
        }
    if (first == n) {
        std::fill(out, out + n, inf);
        return;
    }
    v[0] = first;
    z[0] = -inf;
    z[1] = inf;
    for (std::size_t q = first + 1; q < n; ++q) {
        if (!(f[q] < inf)) continue;
        const auto dq = static_cast<double>(q);
        double s = 0.0;
        while (true) {
            const auto dv = static_cast<double>(v[k]);
            s = ((f[q] + dq * dq) - (f[v[k]] + dv * dv)) / (2.0 * dq - 2.0 * dv);
            if (s <= z[k] && k > 0) {
                --k;
                continue;
            }
            break;
        }
        if (s <= z[k]) {
            v[k] = q;  // k == 0 and the new parabola dominates everywhere
            z[k] = -inf;
        } else {
            ++k;
            v[k] = q;
            z[k] = s;
        }
        z[k + 1] = inf;
    }
    k = 0;
    for (std::size_t q = 0; q < n; ++q) {
        while (z[k + 1] < static_cast<double>(q)) ++k;
        const double d = static_cast<double>(q) - static_cast<double>(v[k]);
        out[q] = d * d + f[v[k]];
    }
}

std::vector<double> edt_plain(const std::vector<double>& f0, std::size_t R, std::size_t C) {
    std::vector<double> f = f0, out(R * C);
    std::vector<std::size_t> v;
    std::vector<double> z, col(R), colo(R);
    for (std::size_t c = 0; c < C; ++c) {
        for (std::size_t r = 0; r < R; ++r) col[r] = f[r * C + c];
        edt_1d(col.data(), colo.data(), R, v, z);
        for (std::size_t r = 0; r < R; ++r) f[r * C + c] = colo[r];
    }
    for (std::size_t r = 0; r < R; ++r) edt_1d(&f[r * C], &out[r * C], C, v, z);
    return out;
}

}  // namespace

std::vector<double> squared_distance_transform(const Grid& grid, bool wrap) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t R = grid.rows(), C = grid.cols();
    if (!wrap) {
        std::vector<double> f(R * C);
        for (std::size_t i = 0; i < R * C; ++i) f[i] = grid[i] ? 0.0 : inf;
        return edt_plain(f, R, C);
    }
    // Torus: distances on a 3x3 tiling, read back from the centre tile.
    const std::size_t R3 = 3 * R, C3 = 3 * C;
    std::vector<double> f(R3 * C3);
    for (std::size_t r = 0; r < R3; ++r)
        for (std::size_t c = 0; c < C3; ++c) f[r * C3 + c] = grid.at(r % R, c % C) ? 0.0 : inf;
    const auto big = edt_plain(f, R3, C3);
    std::vector<double> out(R * C);
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c) out[r * C + c] = big[(r + R) * C3 + (c + C)];
    return out;
}

Grid dilate(const Grid& grid, double radius, bool wrap) {
    const auto d2 = squared_distance_transform(grid, wrap);
    Grid out(grid.rows(), grid.cols());
    const double r2 = radius * radius;
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = d2[i] <= r2 ? 1 : 0;
    return out;
}

double pixel_hausdorff(const Grid& a, const Grid& b, bool wrap) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("grid size mismatch");
    const auto da = squared_distance_transform(a, wrap);
    const auto db = squared_distance_transform(b, wrap);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i]) worst = std::max(worst, db[i]);
        if (b[i]) worst = std::max(worst, da[i]);
    }
    return std::sqrt(worst);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!os) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_pgm(const std::filesystem::path& path, const Grid& grid) {
    std::string bytes = "P5\n" + std::to_string(grid.cols()) + " " + std::to_string(grid.rows()) + "\n255\n";
    bytes.reserve(bytes.size() + grid.size());
    for (std::size_t r = grid.rows(); r-- > 0;)
        for (std::size_t c = 0; c < grid.cols(); ++c) bytes.push_back(grid.at(r, c) ? '\0' : static_cast<char>(255));
    write_file_atomic(path, bytes);
}

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed) {
    auto h = seed;
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

int max_threads() { return omp_get_max_threads(); }

}  // namespace amoebakit
