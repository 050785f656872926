#include "qdyn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qdyn/families.hpp"
#include "qdyn/operator_s.hpp"

namespace qdyn {

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    Complex box(double half) { return {uniform(-half, half), uniform(-half, half)}; }

private:
    std::mt19937_64 rng_;
};

double rel(Complex x, Complex y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

double rel(const ExtendedComplex& x, const ExtendedComplex& y) {
    if (x.is_infinite() || y.is_infinite()) return x.is_infinite() == y.is_infinite() ? 0.0 : INFINITY;
    return rel(x.value(), y.value());
}

CheckResult conjugacy(Sampler& s, int m, int samples) {
    const std::vector<FamilyId> ids = m == 1 ? std::vector<FamilyId>{FamilyId::one_point(), FamilyId::two_point_a(),
                                                                    FamilyId::two_point_b(), FamilyId::multiple_root(1)}
                                             : std::vector<FamilyId>{FamilyId::multiple_root(m)};
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Complex A, a, b, u;
        do {
            A = s.box(3.0);
            a = s.box(3.0);
            b = s.box(3.0);
            u = s.box(2.0);
        } while (std::abs(a - b) < 0.2 || std::abs((2.0 * A - 1.0) * u + A - 1.0) < 1e-3 * std::abs(2.0 * A - 1.0));
        const MobiusMap map(a, b);
        const auto expected = s_apply(A, u);
        for (const auto& id : ids) worst = std::max(worst, rel(conjugated_map(A, map, id, u), expected));
    }
    return {"conjugacy m=" + std::to_string(m), worst, 1e-9, samples};
}

CheckResult scaling(Sampler& s, int samples) {
    const Poly f({2.0, -2.0, 0.0, 1.0});
    const auto fn = FuncTriple::from_poly(f);
    const FamilyId ids[] = {FamilyId::one_point(), FamilyId::multiple_root(1), FamilyId::two_point_a(),
                            FamilyId::two_point_b()};
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Complex alpha = std::polar(s.uniform(0.5, 2.0), s.uniform(0.0, 6.283185307179586));
        const Complex beta = s.box(1.0);
        const Complex A(s.uniform(-2.0, 3.0), s.uniform(-1.0, 1.0));
        const auto seed = static_cast<std::uint64_t>(k);
        for (const auto& id : ids) worst = std::max(worst, check_scaling(id, A, fn, alpha, beta, 20, seed));
    }
    return {"scaling theorem", worst, 1e-9, samples};
}

CheckResult equivalence(Sampler& s, int samples) {
    const FamilyId ids[] = {FamilyId::one_point(), FamilyId::multiple_root(1), FamilyId::two_point_a(),
                            FamilyId::two_point_b()};
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Complex A, a, b, z;
        do {
            A = s.box(3.0);
            a = s.box(3.0);
            b = s.box(3.0);
            z = s.box(3.0);
        } while (std::abs(A - 1.0) <= 0.05 || std::abs(a - b) < 0.2);
        const auto fn = FuncTriple::from_poly(two_root_poly(a, b));
        Complex out[4];
        for (int i = 0; i < 4; ++i) out[i] = family_step(ids[i], A, fn, z);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) worst = std::max(worst, rel(out[i], out[j]));
    }
    return {"four-family equivalence", worst, 1e-9, samples};
}

CheckResult fixed_residual(Sampler& s, int samples) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Complex A;
        do A = s.box(3.0);
        while (std::abs(A - 1.0) <= 1e-3);
        for (const auto& f : fixed_points(A)) {
            const auto image = s_apply(A, f.point);
            if (f.point.is_infinite()) {
                if (!image.is_infinite()) worst = INFINITY;
                continue;
            }
            worst = std::max(worst, image.is_infinite() ? INFINITY : std::abs(image.value() - f.point.value()));
        }
    }
    return {"fixed-point residual", worst, 1e-9, samples};
}

CheckResult critical_residual(Sampler& s, int samples) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Complex A = s.box(3.0);
        for (const auto& c : critical_points(A)) {
            if (!c.is_free) continue;
            const auto d = s_prime(A, c.point);
            worst = std::max(worst, d.is_infinite() ? INFINITY : std::abs(d.value()));
        }
    }
    return {"critical-point residual", worst, 1e-9, samples};
}

CheckResult formula_z1(Sampler& s, int samples) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Complex A;
        do A = s.box(3.0);
        while (std::abs(A) < 1e-2 || std::abs(A - 2.0 / 3.0) < 1e-2 || std::abs(A - 1.0) < 1e-2);
        const double direct = std::abs(s_prime(A, Complex(1.0)).value());
        worst = std::max(worst, std::abs(stability_z1(A) - direct) / std::max(1.0, direct));
    }
    return {"z=1 modulus closed form vs S'", worst, 1e-9, samples};
}

CheckResult formula_z23(Sampler& s, int samples) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        Complex A;
        do A = s.box(3.0);
        while (std::abs(A) < 1e-2 || std::abs(A - 2.0 / 3.0) < 1e-2 || std::abs(A - 1.0) < 1e-2);
        const double closed = stability_z23(A);
        for (const auto& f : fixed_points(A)) {
            if (f.label != FixedLabel::Z2 && f.label != FixedLabel::Z3) continue;
            worst = std::max(worst, std::abs(closed - f.multiplier_modulus) / std::max(1.0, closed));
        }
    }
    return {"z2,3 modulus closed form vs S'", worst, 1e-8, samples};
}

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed) {
    Sampler s(seed);
    std::vector<CheckResult> out;
    out.push_back(conjugacy(s, 1, 200));
    out.push_back(conjugacy(s, 2, 200));
    out.push_back(conjugacy(s, 3, 200));
    out.push_back(scaling(s, 50));
    out.push_back(equivalence(s, 200));
    out.push_back(fixed_residual(s, 500));
    out.push_back(critical_residual(s, 500));
    out.push_back(formula_z1(s, 500));
    out.push_back(formula_z23(s, 500));
    return out;
}

}  // namespace qdyn
