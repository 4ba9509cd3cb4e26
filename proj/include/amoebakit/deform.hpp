#pragma once

#include <string>
#include <vector>

#include "amoebakit/amoeba.hpp"
#include "amoebakit/spine.hpp"

namespace amoebakit {

struct PointCloud {
    std::vector<Point2> points;
    std::string label;
};

/// Log of the map H_h: every point multiplied by h > 0.
PointCloud h_rescale(const PointCloud& cloud, double h);

/// sup over a in A of the distance from a to B.
double directed_hausdorff(const PointCloud& A, const PointCloud& B, Execution exec = Execution::parallel);
/// Symmetric Hausdorff distance (Euclidean); both clouds must be nonempty.
double hausdorff(const PointCloud& A, const PointCloud& B, Execution exec = Execution::parallel);

/// Centres of occupied pixels.
PointCloud raster_points(const AmoebaRaster& raster);

/// Corner locus of the tropical polynomial with coefficients -nu on the support of f.
TropicalDual limit_curve(const DeformationFamily& fam);

struct TraceRow {
    double t = 0.0;
    double h = 0.0;
    double d_H = 0.0;
    /// Total length of the bounded edges of the rescaled spine of f_t whose dual edge is
    /// not a bounded edge of the limit curve (the cells that collapse as t -> 0).
    double bounded_cell_mass = 0.0;
    bool solid = false;
    std::size_t components = 0;
    /// max - min of log|coefficient| of f_t (root conditioning grows with it).
    double coefficient_spread = 0.0;
    /// Nonempty if the row failed; other fields are then unset.
    std::string error;
};

struct ConvergenceTrace {
    std::vector<TraceRow> rows;
    Window window;
};

struct ConvergenceOptions {
    std::size_t resolution = 256;
    int quad_n = 256;
    FiberSolveConfig fiber;
};

/// For each t: raster of f_t over window / h, rescaled by h = -1/log t, compared with the
/// limit curve sampled at pixel spacing inside the window.
ConvergenceTrace convergence_study(const DeformationFamily& fam, const Window& window,
                                   const ConvergenceOptions& options = {});

struct LocalizationResult {
    bool within = false;
    double worst = 0.0;  // largest sample distance found
    std::size_t samples = 0;
    Point2 vertex{0.0, 0.0};
    double radius = 0.0;
};

struct LocalizationOptions {
    int grid = 96;           // samples per unit of the ball diameter direction
    int angle_samples = 256;
    FiberSolveConfig fiber;
};

/// Samples H_t(V_{f_t}) over Log^{-1}(U(v)), with v the limit-curve vertex dual to the
/// given maximal cell of the limit subdivision and U(v) the ball of radius one third of
/// the distance to the nearest other vertex (1 if v is the only vertex). Each sample's
/// distance to the truncation variety is bounded above by the nearest root of the
/// truncated fiber, in the product metric of (h log|.|, arg) coordinates.
LocalizationResult localization_check(const DeformationFamily& fam, double t, std::size_t cell, double epsilon,
                                      const LocalizationOptions& options = {});

}  // namespace amoebakit
