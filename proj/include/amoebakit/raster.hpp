#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace amoebakit {

enum class Execution { serial, parallel };

/// Axis-aligned box [x_min, x_max] x [y_min, y_max].
struct Window {
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    bool valid() const { return width() > 0.0 && height() > 0.0; }
    bool operator==(const Window&) const = default;
};

/// Row-major byte grid; row 0 is the bottom of the window (smallest y).
class Grid {
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, std::uint8_t fill = 0) : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return cells_.size(); }

    std::uint8_t& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
    std::uint8_t& operator[](std::size_t i) { return cells_[i]; }
    std::uint8_t operator[](std::size_t i) const { return cells_[i]; }

    std::size_t count() const;
    const std::vector<std::uint8_t>& cells() const { return cells_; }
    bool operator==(const Grid&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint8_t> cells_;
};

Grid grid_or(const Grid& a, const Grid& b);
/// Cells set in a and clear in b.
Grid grid_minus(const Grid& a, const Grid& b);

struct Labeling {
    /// Region id per cell, -1 for cells not labelled.
    std::vector<std::int32_t> label;
    std::size_t regions = 0;
};

/// 4-connected regions of the cells whose value equals `value`.
Labeling label_regions(const Grid& grid, std::uint8_t value, bool wrap);

/// Chessboard distance from every cell to the nearest nonzero cell. Without wrap the
/// outside of the grid counts as a nonzero cell when border_blocks is set.
std::vector<std::int32_t> chessboard_distance(const Grid& obstacles, bool border_blocks);

/// Squared Euclidean distance (in pixels) to the nearest nonzero cell; empty grids give +inf.
std::vector<double> squared_distance_transform(const Grid& grid, bool wrap);

/// Euclidean disk dilation of nonzero cells.
Grid dilate(const Grid& grid, double radius, bool wrap);

/// Hausdorff distance in pixels between the nonzero cell sets of two equally sized grids.
double pixel_hausdorff(const Grid& a, const Grid& b, bool wrap);

/// Binary PGM (P5), top row = largest y. Nonzero cells are written as 0, others as 255.
/// The file is written to a temporary name and renamed into place.
void write_pgm(const std::filesystem::path& path, const Grid& grid);

/// Writes bytes atomically (temp + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed = 14695981039346656037ull);
std::uint64_t fnv1a64(const std::string& s);

int max_threads();

}  // namespace amoebakit
