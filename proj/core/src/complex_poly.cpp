#include "qdyn/complex_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

void normalize(std::vector<Complex>& c) {
    double max_mag = 0.0;
    for (const auto& x : c) max_mag = std::max(max_mag, std::abs(x));
    const double cutoff = Poly::kTrimRelative * max_mag;
    while (!c.empty() && std::abs(c.back()) <= cutoff) c.pop_back();
}

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Value, derivative and rounding-error scale of a monic-free coefficient list.
struct HornerResult {
    Complex value;
    Complex deriv;
    double scale;
};

HornerResult horner(std::span<const Complex> c, Complex z) {
    Complex v = c.back();
    Complex d = 0.0;
    double s = std::abs(c.back());
    const double az = std::abs(z);
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        d = d * z + v;
        v = v * z + c[k];
        s = s * az + std::abs(c[k]);
    }
    return {v, d, s};
}

std::vector<Complex> circle_start(const std::vector<Complex>& c, std::mt19937_64& rng) {
    const std::size_t n = c.size() - 1;
    double radius = 0.0;
    for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k]));
    radius += 1.0;
    std::uniform_real_distribution<double> jitter(-0.1, 0.1);
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle =
            2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5 + jitter(rng)) / static_cast<double>(n) + 0.4;
        z[k] = std::polar(radius * (1.0 + 0.05 * jitter(rng)), angle);
    }
    return z;
}

// c[0] != 0 and c[n] == 1 are guaranteed by the caller.
std::vector<Complex> polygon_start(const std::vector<Complex>& c, std::mt19937_64& rng) {
    const std::size_t n = c.size() - 1;
    std::vector<std::size_t> hull;
    for (std::size_t k = 0; k <= n; ++k) {
        if (c[k] == Complex{}) continue;
        const double y = std::log(std::abs(c[k]));
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull.back();
            const double ya = std::log(std::abs(c[a])), yb = std::log(std::abs(c[b]));
            // Drop b when it lies on or below the chord a -> k.
            if ((yb - ya) * static_cast<double>(k - a) <= (y - ya) * static_cast<double>(b - a))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(k);
    }
    std::uniform_real_distribution<double> jitter(-0.1, 0.1);
    std::vector<Complex> z;
    z.reserve(n);
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        const std::size_t lo = hull[e], hi = hull[e + 1], count = hi - lo;
        const double radius = std::pow(std::abs(c[lo]) / std::abs(c[hi]), 1.0 / static_cast<double>(count));
        const double offset = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n) + 0.4;
        for (std::size_t k = 0; k < count; ++k) {
            const double angle =
                2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5 + jitter(rng)) / static_cast<double>(count) +
                offset;
            z.push_back(std::polar(radius * (1.0 + 0.05 * jitter(rng)), angle));
        }
    }
    return z;
}

}  // namespace

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { normalize(coeffs_); }

Poly::Poly(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { normalize(coeffs_); }

Poly Poly::constant(Complex c) { return Poly({c}); }

Poly Poly::monomial(Complex c, int power) {
    if (power < 0) throw std::invalid_argument("monomial: negative power");
    std::vector<Complex> v(static_cast<std::size_t>(power) + 1, 0.0);
    v.back() = c;
    return Poly(std::move(v));
}

Poly Poly::identity() { return Poly({0.0, 1.0}); }

Poly Poly::from_roots(std::span<const Complex> roots, Complex lead) {
    std::vector<Complex> c{lead};
    for (const auto& r : roots) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return Poly(std::move(c));
}

Complex Poly::operator[](int k) const {
    if (k < 0 || k > degree()) return 0.0;
    return coeffs_[static_cast<std::size_t>(k)];
}

Complex Poly::operator()(Complex z) const { return evaluate(*this, z); }

Poly add(const Poly& p, const Poly& q) {
    const int n = std::max(p.degree(), q.degree());
    std::vector<Complex> c(static_cast<std::size_t>(n + 1), 0.0);
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = p[k] + q[k];
    return Poly(std::move(c));
}

Poly subtract(const Poly& p, const Poly& q) { return add(p, scale(q, -1.0)); }

Poly multiply(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    const auto a = p.coeffs();
    const auto b = q.coeffs();
    std::vector<Complex> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return Poly(std::move(c));
}

Poly scale(const Poly& p, Complex s) {
    std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
}

Poly power(const Poly& p, int exponent) {
    if (exponent < 0) throw std::invalid_argument("power: negative exponent");
    Poly result = Poly::constant(1.0);
    for (int k = 0; k < exponent; ++k) result = multiply(result, p);
    return result;
}

Poly compose(const Poly& p, const Poly& q) {
    if (p.is_zero()) return {};
    const auto c = p.coeffs();
    Poly result = Poly::constant(c.back());
    for (std::size_t k = c.size() - 1; k-- > 0;) result = add(multiply(result, q), Poly::constant(c[k]));
    return result;
}

Poly derivative(const Poly& p) {
    if (p.degree() < 1) return {};
    std::vector<Complex> c(static_cast<std::size_t>(p.degree()), 0.0);
    for (int k = 1; k <= p.degree(); ++k) c[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * p[k];
    return Poly(std::move(c));
}

Complex evaluate(const Poly& p, Complex z) {
    if (p.is_zero()) return 0.0;
    const auto c = p.coeffs();
    Complex v = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) v = v * z + c[k];
    return v;
}

Poly deflate(const Poly& p, Complex r) {
    if (p.degree() < 1) return {};
    const auto c = p.coeffs();
    std::vector<Complex> q(c.size() - 1, 0.0);
    Complex acc = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        q[k] = acc;
        acc = acc * r + c[k];
    }
    return Poly(std::move(q));
}

std::vector<Complex> find_roots(const Poly& p, const RootOptions& opts) {
    if (p.degree() < 1) throw std::invalid_argument("find_roots: degree must be at least 1");

    std::vector<Complex> roots;
    auto all = p.coeffs();
    // Exact zero roots are split off before iterating.
    std::size_t low = 0;
    while (all[low] == Complex{}) ++low;
    roots.assign(low, Complex{});
    std::vector<Complex> c(all.begin() + static_cast<std::ptrdiff_t>(low), all.end());
    const std::size_t n = c.size() - 1;

    if (n == 1) {
        roots.push_back(-c[0] / c[1]);
    } else if (n > 1) {
        const Complex lead = c.back();
        for (auto& x : c) x /= lead;
        // Reversed coefficients for evaluating far from the origin.
        std::vector<Complex> rev(c.rbegin(), c.rend());

        std::mt19937_64 rng(opts.seed);
        std::vector<Complex> z = opts.start == RootStart::Circle ? circle_start(c, rng) : polygon_start(c, rng);

        constexpr double eps = std::numeric_limits<double>::epsilon();
        std::vector<bool> done(n, false);
        std::vector<double> last_step(n, std::numeric_limits<double>::infinity());
        std::size_t remaining = n;
        for (int iter = 0; iter < opts.max_iterations && remaining > 0; ++iter) {
            for (std::size_t i = 0; i < n; ++i) {
                if (done[i]) continue;
                const Complex zi = z[i];
                Complex ratio;  // p(z)/p'(z)
                bool at_noise;
                if (std::abs(zi) <= 1.0) {
                    const auto h = horner(c, zi);
                    at_noise = std::abs(h.value) <= 4.0 * eps * h.scale;
                    ratio = h.value / h.deriv;
                } else {
                    const Complex w = 1.0 / zi;
                    const auto h = horner(rev, w);
                    at_noise = std::abs(h.value) <= 4.0 * eps * h.scale;
                    ratio = zi * h.value / (static_cast<double>(n) * h.value - w * h.deriv);
                }
                if (at_noise) {
                    done[i] = true;
                    --remaining;
                    last_step[i] = 0.0;
                    continue;
                }
                Complex repulsion = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) repulsion += 1.0 / (zi - z[j]);
                const Complex step = ratio / (1.0 - ratio * repulsion);
                if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
                z[i] = zi - step;
                last_step[i] = std::abs(step) / std::max(std::abs(z[i]), std::numeric_limits<double>::min());
                if (last_step[i] <= opts.converge_correction) {
                    done[i] = true;
                    --remaining;
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!done[i] && last_step[i] > opts.fail_correction)
                throw NonConvergence("find_roots: iteration cap reached with relative correction " +
                                     std::to_string(last_step[i]) + " at degree " + std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i) {
            const bool inside = std::abs(z[i]) <= 1.0;
            const auto h = inside ? horner(c, z[i]) : horner(rev, 1.0 / z[i]);
            if (std::abs(h.value) > opts.tol * h.scale)
                throw NonConvergence("find_roots: residual above tolerance at root " + std::to_string(i));
        }
        roots.insert(roots.end(), z.begin(), z.end());
    }
    std::sort(roots.begin(), roots.end(), lex_less);
    return roots;
}

RationalFn::RationalFn(Poly numerator, Poly denominator) : num(std::move(numerator)), den(std::move(denominator)) {
    if (den.is_zero()) throw std::invalid_argument("RationalFn: zero denominator");
}

ExtendedComplex RationalFn::operator()(const ExtendedComplex& z) const {
    if (z.is_infinite()) {
        if (num.degree() > den.degree()) return ExtendedComplex::infinity();
        if (num.degree() < den.degree()) return Complex{};
        return num.leading() / den.leading();
    }
    const Complex d = evaluate(den, z.value());
    const Complex n = evaluate(num, z.value());
    if (d == Complex{}) return ExtendedComplex::infinity();
    return to_extended(n / d);
}

RationalFn reduce(const RationalFn& r, double tol) {
    Poly num = r.num;
    Poly den = r.den;
    if (num.degree() >= 1 && den.degree() >= 1) {
        const auto num_roots = find_roots(num);
        const auto den_roots = find_roots(den);
        std::vector<bool> used(num_roots.size(), false);
        for (const auto& d : den_roots) {
            std::size_t best = num_roots.size();
            double best_dist = tol * std::max(1.0, std::abs(d));
            for (std::size_t k = 0; k < num_roots.size(); ++k) {
                if (used[k]) continue;
                const double dist = std::abs(num_roots[k] - d);
                if (dist <= best_dist) {
                    best_dist = dist;
                    best = k;
                }
            }
            if (best == num_roots.size()) continue;
            used[best] = true;
            num = deflate(num, d);
            den = deflate(den, d);
        }
    }
    const Complex lead = den.leading();
    return {scale(num, 1.0 / lead), scale(den, 1.0 / lead)};
}

}  // namespace qdyn
