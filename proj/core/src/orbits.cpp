#include "qdyn/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

// Lexicographic order on (re, im) that treats nearly equal real parts as a tie,
// so conjugate pairs order by imaginary part regardless of rounding.
bool tolerant_less(Complex a, Complex b) {
    if (std::abs(a.real() - b.real()) > 1e-9 * std::max(1.0, std::abs(a.real()))) return a.real() < b.real();
    return a.imag() < b.imag();
}

double scaled_distance(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

void canonicalize(Orbit& o) {
    const auto first = std::min_element(o.points.begin(), o.points.end(), tolerant_less);
    std::rotate(o.points.begin(), first, o.points.end());
}

bool same_cycle(const Orbit& a, const Orbit& b) {
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t k = 0; k < a.points.size(); ++k)
        if (scaled_distance(a.points[k], b.points[k]) > kCycleMatchTol) return false;
    return true;
}

// P(z) = N_n(z) - z D_n(z) evaluated through the homogeneous iteration
// (N, D) <- (sum num_j N^j D^(d-j), sum den_j N^j D^(d-j)) instead of through
// the expanded coefficients, whose roots are badly conditioned at degree 64.
class PeriodEvaluator {
public:
    PeriodEvaluator(const RationalFn& s, int period) : s_(s), period_(period) {}

    struct Value {
        Complex p;
        Complex dp;
        /// |N| + |z||D|: the size of the two terms that cancel at a root.
        double scale;
    };

    Value operator()(Complex z) const {
        const int d = std::max(s_.num.degree(), s_.den.degree());
        Complex n = z, nd = 1.0, dn = 1.0, dd = 0.0;
        std::vector<Complex> pn(d + 1), pnd(d + 1), pd(d + 1), pdd(d + 1);
        for (int step = 0; step < period_; ++step) {
            pn[0] = pd[0] = 1.0;
            pnd[0] = pdd[0] = 0.0;
            for (int k = 1; k <= d; ++k) {
                pnd[k] = pnd[k - 1] * n + pn[k - 1] * nd;
                pn[k] = pn[k - 1] * n;
                pdd[k] = pdd[k - 1] * dn + pd[k - 1] * dd;
                pd[k] = pd[k - 1] * dn;
            }
            auto homog = [&](const Poly& c, Complex& v, Complex& dv) {
                v = dv = 0.0;
                for (int j = 0; j <= c.degree(); ++j) {
                    v += c[j] * pn[j] * pd[d - j];
                    dv += c[j] * (pnd[j] * pd[d - j] + pn[j] * pdd[d - j]);
                }
            };
            Complex nn, nnd, dd2, ddd;
            homog(s_.num, nn, nnd);
            homog(s_.den, dd2, ddd);
            n = nn, nd = nnd, dn = dd2, dd = ddd;
        }
        return {n - z * dn, nd - dn - z * dd, std::abs(n) + std::abs(z) * std::abs(dn)};
    }

    /// Degree of P before any coefficient trimming: the expanded polynomial
    /// drops leading coefficients that are tiny relative to the largest one.
    int degree() const {
        const int d = std::max(s_.num.degree(), s_.den.degree());
        auto hdeg = [d](const Poly& c, int dn, int dd) {
            int best = -1;
            for (int j = 0; j <= c.degree(); ++j)
                if (c[j] != Complex{}) best = std::max(best, j * dn + (d - j) * dd);
            return best;
        };
        int dn = 1, dd = 0;
        for (int step = 0; step < period_; ++step) {
            const int nn = hdeg(s_.num, dn, dd);
            dd = hdeg(s_.den, dn, dd);
            dn = nn;
        }
        return std::max(dn, dd + 1);
    }

private:
    RationalFn s_;
    int period_;
};

// Simultaneous Aberth refinement of the coefficient roots against the stable
// evaluation; the repulsion term keeps neighbouring roots from collapsing.
// Roots lost to trimming start on a circle outside the known ones.
void refine(const PeriodEvaluator& eval, std::vector<Complex>& z) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const std::size_t known = z.size();
    const int expected = eval.degree();
    if (static_cast<int>(known) < expected) {
        double outer = 1.0;
        for (const auto& r : z) outer = std::max(outer, std::abs(r));
        const auto missing = static_cast<std::size_t>(expected) - known;
        for (std::size_t k = 0; k < missing; ++k)
            z.push_back(std::polar(2.0 * outer, 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.3) /
                                                    static_cast<double>(missing)));
    }
    std::vector<bool> done(z.size(), false);
    for (int iter = 0; iter < 300; ++iter) {
        bool any = false;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (done[i]) continue;
            const auto v = eval(z[i]);
            if (std::abs(v.p) <= 4.0 * eps * v.scale || v.dp == Complex{}) {
                done[i] = true;
                continue;
            }
            const Complex ratio = v.p / v.dp;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i && z[j] != z[i]) repulsion += 1.0 / (z[i] - z[j]);
            const Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                done[i] = true;
                continue;
            }
            z[i] -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z[i])))
                done[i] = true;
            else
                any = true;
        }
        if (!any) break;
    }
}

// Roots of a multiple zero spread in a small ring around it; their centroid is
// far more accurate than any member. Neighbours are merged only when the
// centroid residual stays at the members' level, which distinct roots fail.
std::vector<Complex> merge_clusters(const PeriodEvaluator& eval, const std::vector<Complex>& roots) {
    constexpr double kClusterTol = 1e-4;
    std::vector<bool> used(roots.size(), false);
    std::vector<Complex> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        std::vector<std::size_t> members{i};
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (!used[j] && scaled_distance(roots[j], roots[i]) <= kClusterTol) members.push_back(j);
        if (members.size() > 1) {
            Complex centroid = 0.0;
            double worst = 0.0;
            for (auto m : members) {
                centroid += roots[m];
                const auto v = eval(roots[m]);
                worst = std::max(worst, std::abs(v.p) / std::max(v.scale, std::numeric_limits<double>::min()));
            }
            centroid /= static_cast<double>(members.size());
            const auto c = eval(centroid);
            const double rc = std::abs(c.p) / std::max(c.scale, std::numeric_limits<double>::min());
            if (rc <= 100.0 * worst + 1e-13) {
                for (auto m : members) used[m] = true;
                out.push_back(centroid);
                continue;
            }
        }
        out.push_back(roots[i]);
    }
    return out;
}

// |S^d(z) - z| relative to max(1, |z|); infinity when the orbit hits the pole.
double iterate_residual(Complex A, Complex z, int d) {
    ExtendedComplex w(z);
    for (int k = 0; k < d; ++k) w = s_apply(A, w);
    if (w.is_infinite()) return std::numeric_limits<double>::infinity();
    return scaled_distance(w.value(), z);
}

// The circle start is tried first; high-degree iterates spread their
// coefficients far enough that it cannot contract within the iteration cap,
// so the seeded retries use the Newton-polygon start.
std::vector<Complex> roots_with_retry(const Poly& p) {
    try {
        return find_roots(p);
    } catch (const NonConvergence&) {
    }
    for (std::uint64_t seed = 0;; ++seed) {
        try {
            RootOptions opts;
            opts.seed = seed;
            opts.start = RootStart::NewtonPolygon;
            return find_roots(p, opts);
        } catch (const NonConvergence&) {
            if (seed == 3) throw;
        }
    }
}

}  // namespace

RationalFn s_as_rational(Complex A) {
    Poly num({0.0, 0.0, 0.0, 2.0 * A - 1.0, A - 1.0});
    Poly den({A - 1.0, 2.0 * A - 1.0});
    return {std::move(num), std::move(den)};
}

RationalFn compose_rational(const RationalFn& r, const RationalFn& s) {
    const int d = std::max(r.num.degree(), r.den.degree());
    std::vector<Poly> num_pow{Poly::constant(1.0)};
    std::vector<Poly> den_pow{Poly::constant(1.0)};
    for (int k = 1; k <= d; ++k) {
        num_pow.push_back(multiply(num_pow.back(), s.num));
        den_pow.push_back(multiply(den_pow.back(), s.den));
    }
    auto homogenize = [&](const Poly& p) {
        Poly acc;
        for (int k = 0; k <= p.degree(); ++k) {
            if (p[k] == Complex{}) continue;
            acc = add(acc, scale(multiply(num_pow[static_cast<std::size_t>(k)],
                                          den_pow[static_cast<std::size_t>(d - k)]),
                                 p[k]));
        }
        return acc;
    };
    return {homogenize(r.num), homogenize(r.den)};
}

double orbit_multiplier(Complex A, const Orbit& o) {
    Complex product = 1.0;
    for (const auto& p : o.points) {
        const auto d = s_prime(A, p);
        if (d.is_infinite()) return std::numeric_limits<double>::infinity();
        product *= d.value();
    }
    return std::abs(product);
}

Poly period_polynomial(Complex A, int period) {
    if (period < 1 || period > kMaxPeriod) throw std::invalid_argument("period must be in 1..3");
    const RationalFn s = reduce(s_as_rational(A));
    RationalFn iterate = s;
    for (int k = 1; k < period; ++k) iterate = compose_rational(s, iterate);
    return subtract(iterate.num, multiply(Poly::identity(), iterate.den));
}

PeriodCensus period_census(Complex A, int period) {
    const Poly p = period_polynomial(A, period);
    const PeriodEvaluator eval(reduce(s_as_rational(A)), period);
    PeriodCensus census;
    census.roots = roots_with_retry(p);
    refine(eval, census.roots);
    std::sort(census.roots.begin(), census.roots.end(), tolerant_less);

    std::vector<Complex> lower;
    for (int d = 1; d < period; ++d) {
        if (period % d != 0) continue;
        for (const auto& o : period_census(A, d).orbits) lower.insert(lower.end(), o.points.begin(), o.points.end());
    }

    std::vector<Complex> survivors;
    for (const auto& r : merge_clusters(eval, census.roots)) {
        bool smaller = std::any_of(lower.begin(), lower.end(), [&](Complex q) {
            return std::abs(r - q) <= kLowerPeriodTol * std::max(1.0, std::abs(q));
        });
        for (int d = 1; d < period && !smaller; ++d)
            if (period % d == 0 && iterate_residual(A, r, d) <= kLowerPeriodTol) smaller = true;
        if (!smaller) survivors.push_back(r);
    }
    // Discarded roots keep their multiplicity.
    for (const auto& r : census.roots) {
        const bool lower_point = std::any_of(lower.begin(), lower.end(), [&](Complex q) {
            return std::abs(r - q) <= 1e-4 * std::max(1.0, std::abs(q));
        });
        if (lower_point) census.discarded.push_back(r);
    }

    std::vector<bool> used(survivors.size(), false);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        Orbit o;
        o.period = period;
        o.points.push_back(survivors[i]);
        for (int step = 1; step <= period; ++step) {
            const auto next = s_apply(A, o.points.back());
            if (next.is_infinite()) throw GroupingFailure("orbit point maps to infinity");
            if (step == period) {
                if (scaled_distance(next.value(), o.points.front()) > kCycleMatchTol)
                    throw GroupingFailure("cycle does not close within tolerance");
                break;
            }
            std::size_t best = survivors.size();
            double best_dist = kCycleMatchTol;
            for (std::size_t j = 0; j < survivors.size(); ++j) {
                if (used[j]) continue;
                const double dist = scaled_distance(next.value(), survivors[j]);
                if (dist <= best_dist) best_dist = dist, best = j;
            }
            if (best == survivors.size())
                throw GroupingFailure("no root matches the image of a cycle point; tighten the root tolerance");
            used[best] = true;
            o.points.push_back(survivors[best]);
        }
        canonicalize(o);
        if (std::any_of(census.orbits.begin(), census.orbits.end(), [&](const Orbit& q) { return same_cycle(q, o); }))
            continue;
        o.multiplier_modulus = orbit_multiplier(A, o);
        o.stability = classify_multiplier(o.multiplier_modulus);
        census.orbits.push_back(std::move(o));
    }
    std::sort(census.orbits.begin(), census.orbits.end(),
              [](const Orbit& a, const Orbit& b) { return tolerant_less(a.points.front(), b.points.front()); });
    return census;
}

std::vector<Orbit> find_periodic_orbits(Complex A, int period) { return period_census(A, period).orbits; }

}  // namespace qdyn
