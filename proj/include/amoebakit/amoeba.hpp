#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amoebakit/lpoly.hpp"
#include "amoebakit/raster.hpp"
#include "amoebakit/roots.hpp"
#include "amoebakit/trop.hpp"

namespace amoebakit {

struct FiberSolveConfig {
    int angle_samples = 720;
    double root_tolerance = 1e-10;
    int max_iterations = 200;

    /// Throws std::invalid_argument unless angle_samples >= 16 and tolerance in (0, 1e-6].
    void validate() const;
    RootSolveConfig root_config() const { return {root_tolerance, max_iterations}; }
    std::string describe() const;
};

class FiberError : public std::runtime_error {
public:
    enum class Kind { degenerate, nonconvergence };
    FiberError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Univariate polynomial in variable j obtained by fixing the other variable of a
/// bivariate f at e^{x + i theta}. Coefficients that cancel to rounding level are
/// treated as zero.
struct FiberPolynomial {
    /// Exponent of coefficients[0] (including trimmed low-order zeros).
    std::int64_t low_exponent = 0;
    /// Ascending coefficients after trimming; empty if the substitution vanishes.
    std::vector<Complex> coefficients;
};

FiberPolynomial fiber_polynomial(const LaurentPolynomial& f, std::size_t variable, double x_other,
                                 double theta_other);

/// Nonzero roots of f(e^{x_other + i theta_other}, .) in `variable` (n = 2), with multiplicity.
std::vector<Complex> fiber_roots(const LaurentPolynomial& f, std::size_t variable, double x_other,
                                 double theta_other, const FiberSolveConfig& cfg = {});

/// Roots in the second variable over z1 = e^{x1 + i theta1}.
inline std::vector<Complex> fiber_roots(const LaurentPolynomial& f, double x1, double theta1,
                                        const FiberSolveConfig& cfg = {}) {
    return fiber_roots(f, 1, x1, theta1, cfg);
}

struct AmoebaRaster {
    Window window;
    std::size_t rows = 0, cols = 0;
    /// Nonzero = amoeba.
    Grid occupancy;
    std::uint64_t polynomial_hash = 0;
    std::uint64_t config_hash = 0;
    /// Fiber samples skipped because the solve failed.
    std::size_t failed_fibers = 0;

    double pixel_width() const { return window.width() / static_cast<double>(cols); }
    double pixel_height() const { return window.height() / static_cast<double>(rows); }
    Point2 pixel_center(std::size_t r, std::size_t c) const;
    /// Pixel containing x, if inside the window.
    std::optional<std::pair<std::size_t, std::size_t>> pixel_of(const Point2& x) const;
    bool occupied(const Point2& x) const;
};

/// Dual-sweep raster: columns over x1 with theta1 around the circle, unioned with rows
/// over x2. Within a column, matched roots of consecutive samples fill the pixels between
/// them, so each column holds the whole slice of the amoeba at its centre.
AmoebaRaster rasterize_amoeba(const LaurentPolynomial& f, const Window& window, std::size_t rows, std::size_t cols,
                              const FiberSolveConfig& cfg = {}, Execution exec = Execution::parallel);

class OrderError : public std::runtime_error {
public:
    enum class Kind { guard_band, ambiguous, degenerate };
    OrderError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Order of the complement component containing x: entry j counts roots in variable j of
/// modulus below e^{x_j} (with the support's low exponent), averaged over the other angle.
/// Throws OrderError if a root lies within `guard` of x_j in log scale or the average is
/// farther than 0.1 from an integer.
ExponentVector order_of_point(const LaurentPolynomial& f, const Point2& x, const FiberSolveConfig& cfg = {},
                              double guard = 1e-3);

struct Component {
    ExponentVector order;
    bool bounded = false;
    Point2 witness{0.0, 0.0};
    /// Chessboard distance (pixels) from the witness to the amoeba or window border.
    int witness_clearance = 0;
    std::size_t pixel_count = 0;
    /// Raster regions merged into this component.
    std::size_t regions = 0;
};

struct ComponentReport {
    Window window;
    std::size_t rows = 0, cols = 0;
    std::vector<Component> components;
    std::size_t total = 0;
    /// Complement regions too thin to hold a witness, skipped.
    std::size_t noise_regions = 0;
    /// Component index per pixel, -1 on the amoeba and on noise regions.
    std::vector<std::int32_t> component_of_pixel;
    std::uint64_t polynomial_hash = 0;
    std::uint64_t config_hash = 0;
};

/// Minimum witness clearance (pixels). Guard band for the order integral is 2 pixels.
inline constexpr int kWitnessClearance = 3;

ComponentReport component_report(const LaurentPolynomial& f, const AmoebaRaster& raster,
                                 const FiberSolveConfig& cfg = {});
ComponentReport component_report(const LaurentPolynomial& f, const Window& window, std::size_t resolution,
                                 const FiberSolveConfig& cfg = {});

/// Square window around the corner-locus vertices of the log|a| tropicalization, expanded
/// by max(3, lattice extent of the Newton polygon) on every side.
Window auto_window(const LaurentPolynomial& f);

struct SolidityResult {
    bool solid = false;
    bool maximally_sparse = false;
    std::size_t components = 0;
    std::size_t vertices = 0;
    ComponentReport report;
};

SolidityResult verify_solid(const LaurentPolynomial& f, std::size_t resolution = 512, const FiberSolveConfig& cfg = {},
                            std::optional<Window> window = std::nullopt);

}  // namespace amoebakit
