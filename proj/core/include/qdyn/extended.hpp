#pragma once

#include <complex>
#include <ostream>

namespace qdyn {

using Complex = std::complex<double>;

/// A point of the Riemann sphere: a finite complex value or the point at infinity.
class ExtendedComplex {
public:
    constexpr ExtendedComplex() = default;
    constexpr ExtendedComplex(Complex z) : value_(z) {}  // NOLINT(implicit)
    constexpr ExtendedComplex(double re, double im = 0.0) : value_(re, im) {}  // NOLINT

    static constexpr ExtendedComplex infinity() {
        ExtendedComplex p;
        p.infinite_ = true;
        return p;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    /// The finite value; unspecified for the point at infinity.
    constexpr Complex value() const { return value_; }

    friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExtendedComplex& p) {
        if (p.infinite_) return os << "inf";
        return os << p.value_;
    }

private:
    Complex value_{0.0, 0.0};
    bool infinite_ = false;
};

/// Wraps a computed value, mapping non-finite results to the point at infinity.
inline ExtendedComplex to_extended(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return ExtendedComplex::infinity();
    return ExtendedComplex(z);
}

}  // namespace qdyn
