#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "qdyn/complex_poly.hpp"
#include "qdyn/extended.hpp"

namespace qdyn {

enum class FamilyKind { OnePoint, MultipleRoot, TwoPointA, TwoPointB };

/// One of the four third-order families sharing the weight function H.
/// MultipleRoot carries the root multiplicity m >= 1.
class FamilyId {
public:
    static FamilyId one_point() { return FamilyId(FamilyKind::OnePoint, 1); }
    static FamilyId multiple_root(int m);
    static FamilyId two_point_a() { return FamilyId(FamilyKind::TwoPointA, 1); }
    static FamilyId two_point_b() { return FamilyId(FamilyKind::TwoPointB, 1); }

    FamilyKind kind() const { return kind_; }
    int multiplicity() const { return m_; }
    std::string name() const;

    friend bool operator==(const FamilyId&, const FamilyId&) = default;

private:
    FamilyId(FamilyKind kind, int m) : kind_(kind), m_(m) {}
    FamilyKind kind_;
    int m_;
};

/// A function together with its first two derivatives. The callables must be
/// safe to invoke concurrently.
struct FuncTriple {
    std::function<Complex(Complex)> f;
    std::function<Complex(Complex)> f1;
    std::function<Complex(Complex)> f2;

    static FuncTriple from_poly(const Poly& p);
    /// p^m with derivatives taken in factored form, which keeps full accuracy
    /// near the multiple roots where the expanded power cancels badly.
    static FuncTriple power_of(const Poly& p, int m);
};

/// Denominators smaller than this are treated as poles.
inline constexpr double kPoleThreshold = 1e-300;

/// H(t) = A + 2(A-1)^2 / (2(1-A) - t). Throws PoleHit at the pole; when the
/// numerator vanishes (A = 1) the value is A for every t.
Complex weight_h(Complex A, Complex t);

/// One step of the selected family from z, each evaluated from its own
/// defining formula. A zero residual f(z) == 0 returns z unchanged.
/// Throws DerivativeZero when |f'(z)| < kPoleThreshold and PoleHit at inner poles.
Complex family_step(const FamilyId& id, Complex A, const FuncTriple& fn, Complex z);

/// M(z) = (z - a)/(z - b), sending a to 0, b to infinity and infinity to 1.
class MobiusMap {
public:
    MobiusMap(Complex a, Complex b);

    Complex a() const { return a_; }
    Complex b() const { return b_; }

    ExtendedComplex apply(const ExtendedComplex& z) const;
    /// M^{-1}(u) = (b u - a)/(u - 1).
    ExtendedComplex inverse(const ExtendedComplex& u) const;

private:
    Complex a_;
    Complex b_;
};

inline ExtendedComplex mobius(const MobiusMap& m, const ExtendedComplex& z) { return m.apply(z); }
inline ExtendedComplex mobius_inv(const MobiusMap& m, const ExtendedComplex& u) { return m.inverse(u); }

/// ((z - a)(z - b))^m.
Poly two_root_poly(Complex a, Complex b, int m = 1);

/// M(R_p(M^{-1}(u))) with p the two-root polynomial of the map's roots, raised
/// to the family's multiplicity for MultipleRoot.
ExtendedComplex conjugated_map(Complex A, const MobiusMap& m, const FamilyId& id, const ExtendedComplex& u);

/// Max over random samples z in [-2,2]^2 of |T(R_g(T^{-1}(z))) - R_f(z)| with
/// T(z) = alpha z + beta and g = f o T. Samples that hit a pole are redrawn,
/// at most 10 times each.
double check_scaling(const FamilyId& id, Complex A, const FuncTriple& fn, Complex alpha, Complex beta,
                     int samples, std::uint64_t seed = 0);

}  // namespace qdyn
