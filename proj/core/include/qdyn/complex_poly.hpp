#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qdyn/extended.hpp"

namespace qdyn {

/// Dense polynomial with complex coefficients in ascending degree order
/// (coeffs()[k] multiplies z^k).
///
/// Construction normalizes: trailing coefficients whose magnitude is at most
/// kTrimRelative times the largest coefficient magnitude are dropped. The zero
/// polynomial has no coefficients and degree -1.
class Poly {
public:
    static constexpr double kTrimRelative = 1e-14;

    Poly() = default;
    explicit Poly(std::vector<Complex> coeffs);
    Poly(std::initializer_list<Complex> coeffs);

    static Poly constant(Complex c);
    static Poly monomial(Complex c, int power);
    /// The polynomial z (identity map).
    static Poly identity();
    /// lead * prod (z - r_i).
    static Poly from_roots(std::span<const Complex> roots, Complex lead = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::span<const Complex> coeffs() const { return coeffs_; }
    /// Coefficient of z^k; zero outside the stored range.
    Complex operator[](int k) const;
    Complex leading() const { return is_zero() ? Complex{} : coeffs_.back(); }

    Complex operator()(Complex z) const;

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    std::vector<Complex> coeffs_;
};

Poly add(const Poly& p, const Poly& q);
Poly subtract(const Poly& p, const Poly& q);
Poly multiply(const Poly& p, const Poly& q);
Poly scale(const Poly& p, Complex c);
Poly power(const Poly& p, int exponent);
/// Coefficients of p(q(z)), by Horner's rule over the polynomial ring.
Poly compose(const Poly& p, const Poly& q);
Poly derivative(const Poly& p);
Complex evaluate(const Poly& p, Complex z);
/// Quotient of p by (z - r); the remainder is discarded.
Poly deflate(const Poly& p, Complex r);

inline Poly operator+(const Poly& p, const Poly& q) { return add(p, q); }
inline Poly operator-(const Poly& p, const Poly& q) { return subtract(p, q); }
inline Poly operator*(const Poly& p, const Poly& q) { return multiply(p, q); }

enum class RootStart {
    /// Perturbed circle of radius 1 + max|c_k/c_n|.
    Circle,
    /// Circles whose radii come from the upper convex hull of (k, log|c_k|);
    /// needed when the coefficient magnitudes spread over many decades.
    NewtonPolygon,
};

struct RootOptions {
    /// Accepted residual |p(r)| relative to sum_k |c_k| |r|^k.
    double tol = 1e-10;
    /// Perturbation seed for the starting circle.
    std::uint64_t seed = 0;
    int max_iterations = 500;
    /// Relative correction below which a root is considered converged.
    double converge_correction = 1e-13;
    /// Relative correction above which a stalled run is reported as failed.
    double fail_correction = 1e-10;
    RootStart start = RootStart::Circle;
};

/// All degree(p) roots of p, with multiplicity, sorted by (real, imag).
///
/// Aberth-Ehrlich simultaneous iteration started from a perturbed circle of
/// radius 1 + max|c_k / c_n|. A root also counts as converged once its residual
/// reaches the rounding level of the evaluation, which is what terminates the
/// iteration at multiple roots. Throws NonConvergence if the iteration cap is hit
/// with corrections above opts.fail_correction.
std::vector<Complex> find_roots(const Poly& p, const RootOptions& opts = {});

/// Ratio of polynomials. Shared roots are kept until reduce() is called.
struct RationalFn {
    Poly num;
    Poly den;

    RationalFn(Poly numerator, Poly denominator);

    ExtendedComplex operator()(const ExtendedComplex& z) const;
};

/// Removes roots shared by numerator and denominator (distance within tol,
/// relative to max(1, |root|)) and scales the denominator to be monic.
RationalFn reduce(const RationalFn& r, double tol = 1e-10);

}  // namespace qdyn
