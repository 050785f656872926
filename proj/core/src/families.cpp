#include "qdyn/families.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "qdyn/errors.hpp"

namespace qdyn {

FamilyId FamilyId::multiple_root(int m) {
    if (m < 1) throw std::invalid_argument("multiple_root: multiplicity must be >= 1");
    return FamilyId(FamilyKind::MultipleRoot, m);
}

std::string FamilyId::name() const {
    switch (kind_) {
        case FamilyKind::OnePoint: return "one-point";
        case FamilyKind::MultipleRoot: return "multiple-root(m=" + std::to_string(m_) + ")";
        case FamilyKind::TwoPointA: return "two-point-a";
        case FamilyKind::TwoPointB: return "two-point-b";
    }
    return "unknown";
}

FuncTriple FuncTriple::from_poly(const Poly& p) {
    Poly d1 = derivative(p);
    Poly d2 = derivative(d1);
    return {[p](Complex z) { return evaluate(p, z); }, [d1](Complex z) { return evaluate(d1, z); },
            [d2](Complex z) { return evaluate(d2, z); }};
}

FuncTriple FuncTriple::power_of(const Poly& p, int m) {
    if (m < 1) throw std::invalid_argument("FuncTriple::power_of: m must be >= 1");
    if (m == 1) return from_poly(p);
    Poly d1 = derivative(p);
    Poly d2 = derivative(d1);
    const double dm = m;
    return {[p, m](Complex z) { return std::pow(evaluate(p, z), m); },
            [p, d1, m, dm](Complex z) { return dm * std::pow(evaluate(p, z), m - 1) * evaluate(d1, z); },
            [p, d1, d2, m, dm](Complex z) {
                const Complex v = evaluate(p, z), v1 = evaluate(d1, z);
                const Complex lower = m == 2 ? Complex(1.0) : std::pow(v, m - 2);
                return dm * lower * ((dm - 1.0) * v1 * v1 + v * evaluate(d2, z));
            }};
}

Complex weight_h(Complex A, Complex t) {
    const Complex numer = 2.0 * (A - 1.0) * (A - 1.0);
    if (numer == Complex{}) return A;
    const Complex denom = 2.0 * (1.0 - A) - t;
    if (std::abs(denom) < kPoleThreshold) throw PoleHit("weight function evaluated at its pole");
    return A + numer / denom;
}

Complex family_step(const FamilyId& id, Complex A, const FuncTriple& fn, Complex z) {
    const Complex fz = fn.f(z);
    if (fz == Complex{}) return z;
    const Complex d1 = fn.f1(z);
    if (std::abs(d1) < kPoleThreshold) throw DerivativeZero("f'(z) vanishes");
    const Complex newton = fz / d1;

    switch (id.kind()) {
        case FamilyKind::OnePoint: {
            const Complex lf = fz * fn.f2(z) / (d1 * d1);
            return z - newton * weight_h(A, lf);
        }
        case FamilyKind::MultipleRoot: {
            const double m = id.multiplicity();
            const Complex lf = fz * fn.f2(z) / (d1 * d1);
            return z - m * newton * weight_h(A, 1.0 - m + m * lf);
        }
        case FamilyKind::TwoPointA: {
            const Complex y = z - newton;
            const Complex numer = (A - 1.0) * (A - 1.0) * fz;
            if (numer == Complex{}) return z - newton * A;
            const Complex denom = (1.0 - A) * fz - fn.f(y);
            if (std::abs(denom) < kPoleThreshold) throw PoleHit("two-point (a) inner denominator vanishes");
            return z - newton * (A + numer / denom);
        }
        case FamilyKind::TwoPointB: {
            const Complex y = z - (2.0 / 3.0) * newton;
            const Complex t = (d1 - fn.f1(y)) / ((2.0 / 3.0) * d1);
            return z - newton * weight_h(A, t);
        }
    }
    throw std::logic_error("family_step: unknown family");
}

MobiusMap::MobiusMap(Complex a, Complex b) : a_(a), b_(b) {
    if (a == b) throw std::invalid_argument("MobiusMap: roots must differ");
}

ExtendedComplex MobiusMap::apply(const ExtendedComplex& z) const {
    if (z.is_infinite()) return Complex(1.0);
    const Complex d = z.value() - b_;
    if (d == Complex{}) return ExtendedComplex::infinity();
    return to_extended((z.value() - a_) / d);
}

ExtendedComplex MobiusMap::inverse(const ExtendedComplex& u) const {
    if (u.is_infinite()) return b_;
    const Complex d = u.value() - 1.0;
    if (d == Complex{}) return ExtendedComplex::infinity();
    return to_extended((b_ * u.value() - a_) / d);
}

Poly two_root_poly(Complex a, Complex b, int m) {
    const Complex roots[] = {a, b};
    return power(Poly::from_roots(roots), m);
}

ExtendedComplex conjugated_map(Complex A, const MobiusMap& m, const FamilyId& id, const ExtendedComplex& u) {
    const ExtendedComplex z = m.inverse(u);
    // The point at infinity is fixed by every family on a quadratic.
    if (z.is_infinite()) return m.apply(z);
    const Complex roots[] = {m.a(), m.b()};
    const auto fn = FuncTriple::power_of(Poly::from_roots(roots), id.multiplicity());
    return m.apply(to_extended(family_step(id, A, fn, z.value())));
}

double check_scaling(const FamilyId& id, Complex A, const FuncTriple& fn, Complex alpha, Complex beta,
                     int samples, std::uint64_t seed) {
    if (alpha == Complex{}) throw std::invalid_argument("check_scaling: alpha must be nonzero");
    FuncTriple g{[&fn, alpha, beta](Complex w) { return fn.f(alpha * w + beta); },
                 [&fn, alpha, beta](Complex w) { return alpha * fn.f1(alpha * w + beta); },
                 [&fn, alpha, beta](Complex w) { return alpha * alpha * fn.f2(alpha * w + beta); }};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        bool ok = false;
        for (int attempt = 0; attempt <= 10 && !ok; ++attempt) {
            const Complex z(coord(rng), coord(rng));
            try {
                const Complex direct = family_step(id, A, fn, z);
                const Complex conj = alpha * family_step(id, A, g, (z - beta) / alpha) + beta;
                worst = std::max(worst, std::abs(conj - direct));
                ok = true;
            } catch (const PoleHit&) {
            } catch (const DerivativeZero&) {
            }
        }
        if (!ok) throw PoleHit("check_scaling: sample kept hitting poles after 10 retries");
    }
    return worst;
}

}  // namespace qdyn
