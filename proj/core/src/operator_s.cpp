#include "qdyn/operator_s.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

// S(z) = z^3 q(z) with q(z) = (alpha z + beta)/(gamma z + delta).
struct MobiusFactor {
    Complex alpha, beta, gamma, delta;

    explicit MobiusFactor(Complex A) : alpha(A - 1.0), beta(2.0 * A - 1.0), gamma(2.0 * A - 1.0), delta(A - 1.0) {}

    Complex det() const { return alpha * delta - beta * gamma; }

    // q is constant exactly when det vanishes.
    bool degenerate() const {
        const double scale = (std::abs(alpha) + std::abs(beta)) * (std::abs(gamma) + std::abs(delta));
        return std::abs(det()) <= 1e-14 * scale;
    }

    Complex constant_value() const {
        return std::abs(gamma) >= std::abs(delta) ? alpha / gamma : beta / delta;
    }
};

constexpr double kSweepSkip = 1e-9;

double sample_at(double a_min, double a_max, int n, int k) {
    if (n == 1) return a_min;
    return a_min + (a_max - a_min) * static_cast<double>(k) / static_cast<double>(n - 1);
}

void check_sweep_args(double a_min, double a_max, int n) {
    if (n < 1) throw std::invalid_argument("sweep: n must be positive");
    if (n > 1 && !(a_min < a_max)) throw std::invalid_argument("sweep: a_min must be below a_max");
}

// Fixes the smaller-magnitude member of a reciprocal pair from the larger one.
void refine_reciprocal(Complex& u, Complex& v) {
    if (std::abs(u) >= std::abs(v)) {
        if (u != Complex{}) v = 1.0 / u;
    } else {
        u = 1.0 / v;
    }
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no "-0"
    return buf;
}

}  // namespace

bool ParamA::has_cancelling_factor() const { return MobiusFactor(value).degenerate(); }

bool ParamA::critical_quadratic_degenerate() const {
    const Complex A = value;
    return std::abs(3.0 * (2.0 * A * A - 3.0 * A + 1.0)) <= kGuard;
}

Stability classify_multiplier(double modulus) {
    if (modulus <= kStabilityTol) return Stability::Superattractor;
    if (std::abs(modulus - 1.0) <= kStabilityTol) return Stability::Parabolic;
    if (modulus < 1.0) return Stability::Attractor;
    return Stability::Repulsor;
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::Superattractor: return "Superattractor";
        case Stability::Attractor: return "Attractor";
        case Stability::Parabolic: return "Parabolic";
        case Stability::Repulsor: return "Repulsor";
    }
    return "?";
}

std::string to_string(FixedLabel l) {
    switch (l) {
        case FixedLabel::Root0: return "Root0";
        case FixedLabel::RootInf: return "RootInf";
        case FixedLabel::Z1: return "Z1";
        case FixedLabel::Z2: return "Z2";
        case FixedLabel::Z3: return "Z3";
    }
    return "?";
}

std::string to_string(DiskPosition d) {
    switch (d) {
        case DiskPosition::Inside: return "Inside";
        case DiskPosition::Boundary: return "Boundary";
        case DiskPosition::Outside: return "Outside";
    }
    return "?";
}

std::string to_string(CriticalLabel l) {
    switch (l) {
        case CriticalLabel::Zero: return "zero";
        case CriticalLabel::Infinity: return "infinity";
        case CriticalLabel::Zc1: return "zc1";
        case CriticalLabel::Zc2: return "zc2";
    }
    return "?";
}

ExtendedComplex s_apply(Complex A, const ExtendedComplex& z) {
    if (z.is_infinite()) return z;
    const Complex w = z.value();
    if (w == Complex{}) return w;
    const MobiusFactor q(A);
    const Complex cube = w * w * w;
    if (q.degenerate()) return to_extended(cube * q.constant_value());
    const Complex den = q.gamma * w + q.delta;
    if (den == Complex{}) return ExtendedComplex::infinity();
    return to_extended(cube * ((q.alpha * w + q.beta) / den));
}

ExtendedComplex s_prime(Complex A, const ExtendedComplex& z) {
    if (z.is_infinite()) return z;
    const Complex w = z.value();
    if (w == Complex{}) return w;
    const MobiusFactor q(A);
    if (q.degenerate()) return to_extended(3.0 * w * w * q.constant_value());
    const Complex den = q.gamma * w + q.delta;
    if (den == Complex{}) return ExtendedComplex::infinity();
    const Complex outer = 3.0 * (2.0 * A * A - 3.0 * A + 1.0);
    const Complex middle = 2.0 * (6.0 * A * A - 8.0 * A + 3.0);
    const Complex bracket = (outer * w + middle) * w + outer;
    return to_extended(w * w * bracket / (den * den));
}

std::vector<StabilityReport> fixed_points(Complex A) {
    const ParamA p{A};
    std::vector<StabilityReport> out;
    out.push_back({Complex{}, 0.0, Stability::Superattractor, FixedLabel::Root0, 1});
    out.push_back({ExtendedComplex::infinity(), 0.0, Stability::Superattractor, FixedLabel::RootInf, 1});

    auto report = [&](Complex z, FixedLabel label, int multiplicity) {
        const auto d = s_prime(A, z);
        const double mod = d.is_infinite() ? std::numeric_limits<double>::infinity() : std::abs(d.value());
        out.push_back({z, mod, classify_multiplier(mod), label, multiplicity});
    };

    if (!p.near(2.0 / 3.0)) report(1.0, FixedLabel::Z1, 1);
    if (!p.is_newton()) {
        const Complex disc = A * (5.0 * A - 4.0);
        const Complex root = std::sqrt(disc);
        Complex z2 = (3.0 * A - 2.0 + root) / (2.0 * (1.0 - A));
        Complex z3 = (3.0 * A - 2.0 - root) / (2.0 * (1.0 - A));
        refine_reciprocal(z2, z3);
        if (std::abs(disc) <= ParamA::kGuard) {
            report(z2, FixedLabel::Z2, 2);
        } else {
            report(z2, FixedLabel::Z2, 1);
            report(z3, FixedLabel::Z3, 1);
        }
    }
    return out;
}

double stability_z1(Complex A) {
    const Complex d = 3.0 * A - 2.0;
    if (d == Complex{}) return std::numeric_limits<double>::infinity();
    return 2.0 * std::abs((4.0 * A - 3.0) / d);
}

double stability_z23(Complex A) {
    const ParamA p{A};
    if (p.is_halley() || p.is_newton())
        throw DomainExcluded("stability_z23: closed form excludes A = 0 and A = 1");
    return std::abs((6.0 * A - 5.0) / (A - 1.0));
}

namespace {
DiskPosition disk_position(Complex A, double center, double radius) {
    const double gap = std::abs(A - center) - radius;
    if (std::abs(gap) <= kDiskBoundaryTol) return DiskPosition::Boundary;
    return gap < 0.0 ? DiskPosition::Inside : DiskPosition::Outside;
}
}  // namespace

DiskPosition in_stability_disk_z1(Complex A) { return disk_position(A, 42.0 / 55.0, 2.0 / 55.0); }

DiskPosition in_stability_disk_z23(Complex A) { return disk_position(A, 29.0 / 35.0, 1.0 / 35.0); }

std::vector<CriticalPoint> critical_points(Complex A) {
    std::vector<CriticalPoint> out{{Complex{}, CriticalLabel::Zero, false},
                                   {ExtendedComplex::infinity(), CriticalLabel::Infinity, false}};
    if (ParamA{A}.critical_quadratic_degenerate()) return out;
    const Complex root = std::sqrt(12.0 * A * A * A - 17.0 * A * A + 6.0 * A);
    const Complex b = 6.0 * A * A - 8.0 * A + 3.0;
    const Complex den = 3.0 * (3.0 * A - 1.0 - 2.0 * A * A);
    Complex zc1 = (b + root) / den;
    Complex zc2 = (b - root) / den;
    refine_reciprocal(zc1, zc2);
    out.push_back({zc1, CriticalLabel::Zc1, true});
    out.push_back({zc2, CriticalLabel::Zc2, true});
    return out;
}

std::vector<FixedSweepRow> sweep_fixed_points(double a_min, double a_max, int n) {
    check_sweep_args(a_min, a_max, n);
    std::vector<FixedSweepRow> rows;
    for (int k = 0; k < n; ++k) {
        const double A = sample_at(a_min, a_max, n, k);
        if (std::abs(A - 1.0) <= kSweepSkip) continue;
        FixedSweepRow row{A, {}, {}};
        for (const auto& r : fixed_points(A)) {
            if (r.label == FixedLabel::Z2) {
                row.z2 = r.point.value();
                if (r.multiplicity == 2) row.z3 = row.z2;
            } else if (r.label == FixedLabel::Z3) {
                row.z3 = r.point.value();
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<CriticalSweepRow> sweep_critical_points(double a_min, double a_max, int n) {
    check_sweep_args(a_min, a_max, n);
    std::vector<CriticalSweepRow> rows;
    for (int k = 0; k < n; ++k) {
        const double A = sample_at(a_min, a_max, n, k);
        if (std::abs(A - 1.0) <= kSweepSkip || std::abs(A - 0.5) <= kSweepSkip) continue;
        CriticalSweepRow row{A, {}, {}};
        bool found = false;
        for (const auto& c : critical_points(A)) {
            if (c.label == CriticalLabel::Zc1) row.zc1 = c.point.value(), found = true;
            if (c.label == CriticalLabel::Zc2) row.zc2 = c.point.value();
        }
        if (found) rows.push_back(row);
    }
    return rows;
}

std::vector<ProfileRow> stability_profile(double a_min, double a_max, int n) {
    check_sweep_args(a_min, a_max, n);
    std::vector<ProfileRow> rows;
    for (int k = 0; k < n; ++k) {
        const double A = sample_at(a_min, a_max, n, k);
        if (std::abs(A - 1.0) <= kSweepSkip || std::abs(A - 2.0 / 3.0) <= kSweepSkip) continue;
        double z23;
        if (ParamA{A}.is_halley()) {
            // Closed form excluded here; use the multiplier at the actual point.
            z23 = std::abs(s_prime(A, fixed_points(A).back().point).value());
        } else {
            z23 = stability_z23(A);
        }
        rows.push_back({A, std::min(stability_z1(A), 1.0), std::min(z23, 1.0)});
    }
    return rows;
}

std::string to_csv(const std::vector<FixedSweepRow>& rows) {
    std::string out = "A,z2_re,z2_im,z3_re,z3_im\n";
    for (const auto& r : rows)
        out += fmt(r.A) + ',' + fmt(r.z2.real()) + ',' + fmt(r.z2.imag()) + ',' + fmt(r.z3.real()) + ',' +
               fmt(r.z3.imag()) + '\n';
    return out;
}

std::string to_csv(const std::vector<CriticalSweepRow>& rows) {
    std::string out = "A,zc1_re,zc1_im,zc2_re,zc2_im\n";
    for (const auto& r : rows)
        out += fmt(r.A) + ',' + fmt(r.zc1.real()) + ',' + fmt(r.zc1.imag()) + ',' + fmt(r.zc2.real()) + ',' +
               fmt(r.zc2.imag()) + '\n';
    return out;
}

std::string to_csv(const std::vector<ProfileRow>& rows) {
    std::string out = "A,s1_z1,s1_z23\n";
    for (const auto& r : rows) out += fmt(r.A) + ',' + fmt(r.s1_z1) + ',' + fmt(r.s1_z23) + '\n';
    return out;
}

}  // namespace qdyn
