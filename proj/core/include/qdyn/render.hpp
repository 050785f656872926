#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdyn/extended.hpp"

namespace qdyn {

/// Rectangular sample window. Pixel (i, j) samples the center of its cell,
/// with i increasing rightward and j increasing upward.
struct Window {
    double re_min = -2.0;
    double re_max = 2.0;
    double im_min = -2.0;
    double im_max = 2.0;
    int width = 200;
    int height = 200;

    void validate() const;
    Complex pixel_center(int i, int j) const;
    /// The pixel whose cell contains z, if any.
    std::optional<std::pair<int, int>> pixel_of(Complex z) const;
};

struct IterConfig {
    int max_iter = 50;
    double tol = 1e-2;

    void validate() const;
};

inline constexpr std::uint8_t kBasinZero = 0;
inline constexpr std::uint8_t kBasinInfinity = 1;
inline constexpr std::uint8_t kBasinNone = 2;
/// First id for strange attractors; k-th supplied attractor is kBasinStrange + k.
inline constexpr std::uint8_t kBasinStrange = 3;
/// Parameter-plane pixels without a free critical point.
inline constexpr std::uint8_t kBasinDegenerate = 255;

struct Cell {
    std::uint8_t basin = kBasinNone;
    int iterations = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Per-pixel classification, stored row-major with j (upward) as the row index.
struct RasterGrid {
    Window window;
    IterConfig cfg;
    std::vector<Cell> cells;
    int degenerate_pixels = 0;

    const Cell& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * window.width + i]; }
    std::map<int, long> basin_counts() const;
};

/// Iterates z <- S(z) from z0, stopping at the first n with |z| < tol (basin 0),
/// |z| > 1/tol (basin 1) or |z - a_k| < tol (basin 3 + k). Orbits that never stop
/// report basin 2 with max_iter iterations.
Cell classify_orbit(Complex A, Complex z0, const IterConfig& cfg, std::span<const Complex> attractors);

/// Worker count from QD_THREADS; 0 or unset means hardware concurrency.
unsigned threads_from_env();

RasterGrid dyn_plane(Complex A, const Window& window, const IterConfig& cfg, std::span<const Complex> attractors,
                     unsigned threads = 0);

enum class CriticSelector { Zc1, Zc2 };

/// Classifies the orbit of the selected free critical point for each pixel's A.
/// Convergence to 0 or infinity is basin 0; stalled orbits ending within tol of
/// a strange fixed point are basin 3, others basin 2.
RasterGrid param_plane(const Window& window, const IterConfig& cfg, CriticSelector selector, unsigned threads = 0);

/// Attracting strange fixed points followed by points of attracting 2-cycles.
std::vector<Complex> analytic_attractors(Complex A);

using Rgb = std::array<std::uint8_t, 3>;
using Palette = std::map<int, Rgb>;

Palette dyn_palette();
Palette param_palette();

/// Binary P6 bytes; row 0 is the top (im_max) row. Each channel is scaled by
/// 1 - 0.6 * iterations / max_iter and rounded.
std::string encode_ppm(const RasterGrid& grid, const Palette& palette);
/// Binary P5 bytes holding the basin id of each pixel.
std::string encode_pgm(const RasterGrid& grid);

void write_ppm(const RasterGrid& grid, const Palette& palette, const std::string& path);
void write_pgm(const RasterGrid& grid, const std::string& path);

}  // namespace qdyn
