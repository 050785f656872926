#include "qdyn/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "qdyn/errors.hpp"
#include "qdyn/operator_s.hpp"
#include "qdyn/orbits.hpp"

namespace qdyn {

namespace {

struct Trace {
    Cell cell;
    ExtendedComplex last;
};

Trace trace_orbit(Complex A, ExtendedComplex z, const IterConfig& cfg, std::span<const Complex> attractors) {
    const double escape = 1.0 / cfg.tol;
    for (int n = 0;; ++n) {
        if (z.is_infinite()) return {{kBasinInfinity, n}, z};
        const double r = std::abs(z.value());
        if (r < cfg.tol) return {{kBasinZero, n}, z};
        if (r > escape) return {{kBasinInfinity, n}, z};
        for (std::size_t k = 0; k < attractors.size(); ++k)
            if (std::abs(z.value() - attractors[k]) < cfg.tol)
                return {{static_cast<std::uint8_t>(kBasinStrange + k), n}, z};
        if (n == cfg.max_iter) return {{kBasinNone, cfg.max_iter}, z};
        z = s_apply(A, z);
    }
}

// Rows are dealt round-robin to workers; each cell is written by exactly one worker.
template <class PixelFn>
void fill_parallel(const Window& w, unsigned threads, PixelFn&& pixel) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(w.height));
    auto rows = [&](unsigned t) {
        for (int j = static_cast<int>(t); j < w.height; j += static_cast<int>(threads))
            for (int i = 0; i < w.width; ++i) pixel(i, j);
    };
    if (threads <= 1) {
        rows(0);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(rows, t);
}

void write_bytes(const std::string& bytes, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for " + path);
}

std::string header(const char* magic, const Window& w) {
    return std::string(magic) + "\n" + std::to_string(w.width) + " " + std::to_string(w.height) + "\n255\n";
}

}  // namespace

void Window::validate() const {
    if (!(re_min < re_max) || !(im_min < im_max)) throw std::invalid_argument("window: empty range");
    if (width <= 0 || height <= 0) throw std::invalid_argument("window: mesh must be positive");
}

Complex Window::pixel_center(int i, int j) const {
    // Offsets from the window center are half-integers, so windows symmetric
    // about the real axis sample exactly mirrored points.
    const double re_mid = 0.5 * (re_min + re_max);
    const double im_mid = 0.5 * (im_min + im_max);
    const double dx = (re_max - re_min) / width;
    const double dy = (im_max - im_min) / height;
    return {re_mid + (i + 0.5 - 0.5 * width) * dx, im_mid + (j + 0.5 - 0.5 * height) * dy};
}

std::optional<std::pair<int, int>> Window::pixel_of(Complex z) const {
    const double fx = (z.real() - re_min) / (re_max - re_min) * width;
    const double fy = (z.imag() - im_min) / (im_max - im_min) * height;
    if (fx < 0.0 || fy < 0.0 || fx >= width || fy >= height) return std::nullopt;
    return std::make_pair(static_cast<int>(fx), static_cast<int>(fy));
}

void IterConfig::validate() const {
    if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("tol must lie in (0, 1)");
}

std::map<int, long> RasterGrid::basin_counts() const {
    std::map<int, long> counts;
    for (const auto& c : cells) ++counts[c.basin];
    return counts;
}

Cell classify_orbit(Complex A, Complex z0, const IterConfig& cfg, std::span<const Complex> attractors) {
    if (attractors.size() > kBasinDegenerate - kBasinStrange)
        throw std::invalid_argument("classify_orbit: too many attractors");
    return trace_orbit(A, z0, cfg, attractors).cell;
}

unsigned threads_from_env() {
    const char* v = std::getenv("QD_THREADS");
    if (v == nullptr || *v == '\0') return 0;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 0) throw std::invalid_argument(std::string("QD_THREADS must be a non-negative integer, got ") + v);
    return static_cast<unsigned>(n);
}

RasterGrid dyn_plane(Complex A, const Window& window, const IterConfig& cfg, std::span<const Complex> attractors,
                     unsigned threads) {
    window.validate();
    cfg.validate();
    if (attractors.size() > kBasinDegenerate - kBasinStrange)
        throw std::invalid_argument("dyn_plane: too many attractors");
    RasterGrid grid{window, cfg, std::vector<Cell>(static_cast<std::size_t>(window.width) * window.height), 0};
    fill_parallel(window, threads, [&](int i, int j) {
        grid.cells[static_cast<std::size_t>(j) * window.width + i] =
            trace_orbit(A, window.pixel_center(i, j), cfg, attractors).cell;
    });
    return grid;
}

RasterGrid param_plane(const Window& window, const IterConfig& cfg, CriticSelector selector, unsigned threads) {
    window.validate();
    cfg.validate();
    const auto wanted = selector == CriticSelector::Zc1 ? CriticalLabel::Zc1 : CriticalLabel::Zc2;
    RasterGrid grid{window, cfg, std::vector<Cell>(static_cast<std::size_t>(window.width) * window.height), 0};
    fill_parallel(window, threads, [&](int i, int j) {
        const Complex A = window.pixel_center(i, j);
        Cell& out = grid.cells[static_cast<std::size_t>(j) * window.width + i];
        const ParamA p{A};
        if (p.near(0.5, 1e-9) || p.near(1.0, 1e-9)) {
            out = {kBasinDegenerate, 0};
            return;
        }
        const auto crit = critical_points(A);
        const auto it = std::find_if(crit.begin(), crit.end(), [&](const CriticalPoint& c) { return c.label == wanted; });
        if (it == crit.end() || it->point.is_infinite()) {
            out = {kBasinDegenerate, 0};
            return;
        }
        const auto t = trace_orbit(A, it->point, cfg, {});
        out = t.cell;
        if (out.basin == kBasinInfinity) out.basin = kBasinZero;
        if (out.basin == kBasinNone && t.last.is_finite()) {
            for (const auto& f : fixed_points(A)) {
                if (f.point.is_finite() &&
                    (f.label == FixedLabel::Z1 || f.label == FixedLabel::Z2 || f.label == FixedLabel::Z3) &&
                    std::abs(t.last.value() - f.point.value()) < cfg.tol) {
                    out.basin = kBasinStrange;
                    break;
                }
            }
        }
    });
    grid.degenerate_pixels = static_cast<int>(
        std::count_if(grid.cells.begin(), grid.cells.end(), [](const Cell& c) { return c.basin == kBasinDegenerate; }));
    return grid;
}

std::vector<Complex> analytic_attractors(Complex A) {
    std::vector<Complex> out;
    for (const auto& f : fixed_points(A)) {
        if (f.label == FixedLabel::Root0 || f.label == FixedLabel::RootInf) continue;
        if (f.multiplier_modulus < 1.0 && f.stability != Stability::Parabolic) out.push_back(f.point.value());
    }
    for (const auto& o : find_periodic_orbits(A, 2))
        if (o.multiplier_modulus < 1.0 && o.stability != Stability::Parabolic)
            out.insert(out.end(), o.points.begin(), o.points.end());
    return out;
}

Palette dyn_palette() {
    Palette p{{kBasinZero, {173, 216, 230}}, {kBasinInfinity, {220, 20, 60}}, {kBasinNone, {0, 0, 139}},
              {kBasinDegenerate, {128, 128, 128}}};
    const Rgb strange[] = {{255, 215, 0}, {34, 139, 34}, {255, 140, 0}, {186, 85, 211}, {0, 206, 209}, {139, 69, 19}};
    for (int id = kBasinStrange; id < kBasinDegenerate; ++id)
        p[id] = strange[static_cast<std::size_t>(id - kBasinStrange) % std::size(strange)];
    return p;
}

Palette param_palette() {
    Palette p = dyn_palette();
    p[kBasinZero] = {220, 20, 60};
    p[kBasinInfinity] = {220, 20, 60};
    return p;
}

std::string encode_ppm(const RasterGrid& grid, const Palette& palette) {
    const Window& w = grid.window;
    std::string out = header("P6", w);
    out.reserve(out.size() + 3 * grid.cells.size());
    const double max_iter = grid.cfg.max_iter;
    for (int row = 0; row < w.height; ++row) {
        const int j = w.height - 1 - row;
        for (int i = 0; i < w.width; ++i) {
            const Cell& c = grid.at(i, j);
            const auto it = palette.find(c.basin);
            if (it == palette.end()) throw std::invalid_argument("palette has no color for basin " + std::to_string(c.basin));
            const double shade = 1.0 - 0.6 * c.iterations / max_iter;
            for (const auto ch : it->second) out.push_back(static_cast<char>(std::lround(ch * shade)));
        }
    }
    return out;
}

std::string encode_pgm(const RasterGrid& grid) {
    const Window& w = grid.window;
    std::string out = header("P5", w);
    out.reserve(out.size() + grid.cells.size());
    for (int row = 0; row < w.height; ++row) {
        const int j = w.height - 1 - row;
        for (int i = 0; i < w.width; ++i) out.push_back(static_cast<char>(grid.at(i, j).basin));
    }
    return out;
}

void write_ppm(const RasterGrid& grid, const Palette& palette, const std::string& path) {
    write_bytes(encode_ppm(grid, palette), path);
}

void write_pgm(const RasterGrid& grid, const std::string& path) { write_bytes(encode_pgm(grid), path); }

}  // namespace qdyn
