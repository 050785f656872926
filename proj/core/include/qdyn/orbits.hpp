#pragma once

#include <vector>

#include "qdyn/complex_poly.hpp"
#include "qdyn/operator_s.hpp"

namespace qdyn {

/// A cycle z_0 -> S(z_0) -> ... -> z_0 of minimal length `period`, stored
/// starting from its lexicographically smallest point.
struct Orbit {
    std::vector<Complex> points;
    int period = 0;
    double multiplier_modulus = 0.0;
    Stability stability = Stability::Repulsor;
};

/// S as numerator z^3((A-1)z + 2A-1) over denominator (2A-1)z + A-1, unreduced.
RationalFn s_as_rational(Complex A);

/// r(s(z)) with denominators cleared by homogenizing r; no reduction applied.
RationalFn compose_rational(const RationalFn& r, const RationalFn& s);

/// |prod S'(p_i)| over the cycle.
double orbit_multiplier(Complex A, const Orbit& o);

/// num(S^n)(z) - z den(S^n)(z) for the reduced S.
Poly period_polynomial(Complex A, int period);

struct PeriodCensus {
    /// Roots of the period polynomial, with multiplicity.
    std::vector<Complex> roots;
    /// Roots discarded as points of a smaller exact period.
    std::vector<Complex> discarded;
    std::vector<Orbit> orbits;
};

inline constexpr int kMaxPeriod = 3;
/// Roots within this distance of a smaller-period point are discarded.
inline constexpr double kLowerPeriodTol = 1e-6;
/// Matching tolerance when chaining roots into cycles.
inline constexpr double kCycleMatchTol = 1e-7;

/// Full root census of the period-n equation. Throws NonConvergence when every
/// root-finder seed fails and GroupingFailure when survivors do not chain into cycles.
PeriodCensus period_census(Complex A, int period);

/// All orbits of exact period 1, 2, or 3, sorted by their first point.
std::vector<Orbit> find_periodic_orbits(Complex A, int period);

}  // namespace qdyn
