#pragma once

#include <string>
#include <vector>

#include "qdyn/extended.hpp"

namespace qdyn {

/// The family parameter A with guards for the values where the closed forms
/// of the conjugated operator degenerate.
struct ParamA {
    Complex value;

    static constexpr double kGuard = 1e-12;

    bool near(Complex v, double tol = kGuard) const { return std::abs(value - v) <= tol; }
    bool is_newton() const { return near(1.0); }
    bool is_halley() const { return near(0.0); }
    /// Numerator and denominator of S share a linear factor (A = 0 or A = 2/3).
    bool has_cancelling_factor() const;
    /// Leading coefficient of the critical-point quadratic vanishes (A = 1/2 or A = 1).
    bool critical_quadratic_degenerate() const;
};

enum class Stability { Superattractor, Attractor, Parabolic, Repulsor };

enum class FixedLabel { Root0, RootInf, Z1, Z2, Z3 };

/// Multiplier moduli within this distance of 0 or 1 count as super/parabolic.
inline constexpr double kStabilityTol = 1e-12;

Stability classify_multiplier(double modulus);
std::string to_string(Stability s);
std::string to_string(FixedLabel l);

struct StabilityReport {
    ExtendedComplex point;
    double multiplier_modulus = 0.0;
    Stability stability = Stability::Superattractor;
    FixedLabel label = FixedLabel::Root0;
    /// 2 when z2 and z3 coincide and are reported once.
    int multiplicity = 1;
};

/// S(z) = z^3((A-1)z + 2A-1)/((2A-1)z + A-1) on the extended plane.
ExtendedComplex s_apply(Complex A, const ExtendedComplex& z);

/// S'(z). At the parameters where S has a cancelling factor the derivative of
/// the reduced map is returned, so removable singularities do not produce 0/0.
ExtendedComplex s_prime(Complex A, const ExtendedComplex& z);

/// Fixed points 0, infinity, 1 and z2,3 = (3A-2 +- sqrt(A(5A-4)))/(2(1-A)),
/// with multipliers from direct evaluation of S'. z = 1 is omitted at A = 2/3
/// (it is not fixed there) and z2,3 are omitted at A = 1.
std::vector<StabilityReport> fixed_points(Complex A);

/// 2|(4A-3)/(3A-2)|; +infinity at A = 2/3.
double stability_z1(Complex A);

/// |(6A-5)/(A-1)|. Throws DomainExcluded for A in {0, 1}.
double stability_z23(Complex A);

enum class DiskPosition { Inside, Boundary, Outside };
std::string to_string(DiskPosition d);

inline constexpr double kDiskBoundaryTol = 1e-12;

/// Position of A against the disk |A - 42/55| < 2/55 where z = 1 attracts.
DiskPosition in_stability_disk_z1(Complex A);
/// Position of A against the disk |A - 29/35| < 1/35 where z2,3 attract.
DiskPosition in_stability_disk_z23(Complex A);

enum class CriticalLabel { Zero, Infinity, Zc1, Zc2 };
std::string to_string(CriticalLabel l);

struct CriticalPoint {
    ExtendedComplex point;
    CriticalLabel label;
    /// False for 0 and infinity, which sit on the superattracting roots.
    bool is_free;
};

/// 0, infinity and the free critical points
/// zc1,2 = (6A^2-8A+3 +- sqrt(12A^3-17A^2+6A))/(3(3A-1-2A^2)).
/// No free points exist at A = 1/2 and A = 1.
std::vector<CriticalPoint> critical_points(Complex A);

struct FixedSweepRow {
    double A;
    Complex z2;
    Complex z3;
};

struct CriticalSweepRow {
    double A;
    Complex zc1;
    Complex zc2;
};

struct ProfileRow {
    double A;
    double s1_z1;
    double s1_z23;
};

/// Evenly spaced real A in [a_min, a_max]; samples within 1e-9 of A = 1 are skipped.
std::vector<FixedSweepRow> sweep_fixed_points(double a_min, double a_max, int n);
/// As sweep_fixed_points; samples within 1e-9 of A = 1/2 and A = 1 are skipped.
std::vector<CriticalSweepRow> sweep_critical_points(double a_min, double a_max, int n);
/// min{|S'(1)|, 1} and min{|S'(z2,3)|, 1}; samples within 1e-9 of 2/3 and 1 are skipped.
std::vector<ProfileRow> stability_profile(double a_min, double a_max, int n);

std::string to_csv(const std::vector<FixedSweepRow>& rows);
std::string to_csv(const std::vector<CriticalSweepRow>& rows);
std::string to_csv(const std::vector<ProfileRow>& rows);

}  // namespace qdyn
