#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "amoebakit/amoeba.hpp"

namespace amoebakit {

/// Occupancy over [0, 2pi)^2 with wraparound; cell (r, c) has centre
/// theta = ((c + 1/2) 2pi / cols, (r + 1/2) 2pi / rows).
struct CoamoebaRaster {
    std::size_t rows = 0, cols = 0;
    Grid occupancy;
    std::size_t samples_used = 0;

    Point2 pixel_center(std::size_t r, std::size_t c) const;
};

inline constexpr std::size_t kMinCoamoebaResolution = 128;

struct CoamoebaOptions {
    /// Modulus range swept along each fibre line; defaults to the auto window widened by
    /// log(resolution) + 3 so the asymptotic boundary arcs are resolved to a pixel.
    std::optional<std::array<double, 2>> x_range;
    /// Base samples per sweep line (adaptive bisection refines fast-moving arguments).
    int line_samples = 0;  // 0: 4 * resolution
    FiberSolveConfig fiber;
};

/// Columns over theta1 sweep x1 and mark arg w; rows over theta2 sweep x2 and mark arg z.
/// Matched roots of consecutive samples fill the short arc between their arguments.
CoamoebaRaster rasterize_coamoeba(const LaurentPolynomial& f, std::size_t resolution, const CoamoebaOptions& options = {},
                                  Execution exec = Execution::parallel);

/// Occupied fraction times (2pi)^2.
double raster_volume(const CoamoebaRaster& r);

/// Cone with apex and an axis-aligned base face {u_axis = value} of the cube.
struct ExcludedCone {
    std::vector<double> apex;
    std::size_t base_axis = 0;
    double base_value = 0.0;
    std::vector<std::vector<double>> base_vertices;
};

/// D_s = tau_s minus the cone C_s; tau_s = prod [s_l pi, (s_l + 1) pi].
struct CoamoebaPolyhedron {
    std::vector<int> s;
    std::vector<std::vector<double>> cube_vertices;
    ExcludedCone cone;
    double volume = 0.0;

    /// Closure of the cube minus the cone.
    bool contains(std::span<const double> theta) const;
};

struct StandardCoamoebaModel {
    int n = 2;
    std::vector<CoamoebaPolyhedron> polyhedra;

    /// Exact: sum of cube minus cone volumes.
    double volume() const;
    bool contains(std::span<const double> theta) const;
};

/// The 2^n - 2 polyhedra of the coamoeba of 1 + z_1 + ... + z_n, n in {2, 3}.
StandardCoamoebaModel standard_model(int n);

/// Closed-form total (n - 1)(2^n - 2) pi^n / n.
double standard_volume_formula(int n);

CoamoebaRaster rasterize_model(const StandardCoamoebaModel& model, std::size_t resolution);

/// Monte Carlo volume estimate with a seeded generator.
double monte_carlo_volume(const StandardCoamoebaModel& model, std::size_t samples, std::uint64_t seed);

/// Connected pieces after removing a one-cell neighbourhood of the real hyperplanes
/// theta_l in {0, pi}; grid of `resolution` cells per axis with torus adjacency.
std::size_t model_piece_count(const StandardCoamoebaModel& model, std::size_t resolution);

/// Pixel theta lies in the image iff tL (theta - translation) mod 2pi lies in D_std.
/// tL is the integer inverse of the rational matrix tL^{-1} acting on D_std.
struct UnimodularTransformData {
    std::vector<std::vector<std::int64_t>> tL;
    std::vector<double> translation;

    std::int64_t determinant() const;
};

/// Builds the data from tL^{-1} = numerators / denominator; the inverse must be integral.
UnimodularTransformData transform_from_inverse(const std::vector<std::vector<std::int64_t>>& numerators,
                                               std::int64_t denominator, std::vector<double> translation = {});

/// For a trinomial a0 z^b0 + a1 z^b1 + a2 z^b2: rows b1 - b0, b2 - b0 (ordered for det > 0)
/// and translation matching the coefficient arguments.
UnimodularTransformData trinomial_transform(const LaurentPolynomial& f);

CoamoebaRaster transform_coamoeba(const StandardCoamoebaModel& model, const UnimodularTransformData& T,
                                  std::size_t resolution);

struct ExtraPieceReport {
    double extra_area = 0.0;
    std::size_t piece_count = 0;
    double largest_piece_area = 0.0;
    std::vector<std::size_t> piece_pixels;
};

inline constexpr double kExtraPieceDilation = 2.0;
inline constexpr std::size_t kExtraPieceNoiseFloor = 10;

/// Components of deformed minus the 2-pixel dilation of sparse, above 10 pixels.
ExtraPieceReport extra_piece_report(const CoamoebaRaster& sparse, const CoamoebaRaster& deformed);

}  // namespace amoebakit
