#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdyn/errors.hpp"
#include "qdyn/orbits.hpp"
#include "test_support.hpp"

using namespace qdyn;
using qdyn::test::Rng;
using qdyn::test::same_multiset;

namespace {

bool poly_near(const Poly& p, std::vector<Complex> expect, double tol) {
    if (p.degree() != static_cast<int>(expect.size()) - 1) return false;
    for (std::size_t k = 0; k < expect.size(); ++k)
        if (std::abs(p[static_cast<int>(k)] - expect[k]) > tol) return false;
    return true;
}

std::vector<Complex> unit_roots(int n, std::initializer_list<int> skip) {
    std::vector<Complex> out;
    for (int k = 0; k < n; ++k) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
        bool keep = true;
        for (int s : skip)
            if (std::abs(z - static_cast<double>(s)) < 1e-9) keep = false;
        if (keep) out.push_back(z);
    }
    return out;
}

std::vector<Complex> all_points(const std::vector<Orbit>& orbits) {
    std::vector<Complex> out;
    for (const auto& o : orbits) out.insert(out.end(), o.points.begin(), o.points.end());
    return out;
}

void check_invariants(Complex A, const Orbit& o) {
    REQUIRE(static_cast<int>(o.points.size()) == o.period);
    for (std::size_t i = 0; i < o.points.size(); ++i) {
        const auto next = s_apply(A, o.points[i]);
        REQUIRE(next.is_finite());
        CHECK(std::abs(next.value() - o.points[(i + 1) % o.points.size()]) < 1e-8);
    }
    for (int d = 1; d < o.period; ++d) {
        if (o.period % d) continue;
        ExtendedComplex w(o.points[0]);
        for (int k = 0; k < d; ++k) w = s_apply(A, w);
        CHECK((w.is_infinite() || std::abs(w.value() - o.points[0]) >= 1e-6));
    }
    Complex product = 1.0;
    for (const auto& p : o.points) product *= s_prime(A, p).value();
    CHECK(o.multiplier_modulus == doctest::Approx(std::abs(product)).epsilon(1e-12));
    CHECK(o.stability == classify_multiplier(o.multiplier_modulus));
}

}  // namespace

TEST_SUITE("orbits") {

TEST_CASE("S as a rational function and its reductions") {
    const auto newton = reduce(s_as_rational(1.0));
    CHECK(poly_near(newton.num, {0.0, 0.0, 1.0}, 1e-12));
    CHECK(poly_near(newton.den, {1.0}, 1e-12));
    CHECK(poly_near(reduce(s_as_rational(0.0)).num, {0.0, 0.0, 0.0, 1.0}, 1e-12));
    CHECK(poly_near(reduce(s_as_rational(2.0 / 3.0)).num, {0.0, 0.0, 0.0, -1.0}, 1e-12));
    CHECK(poly_near(reduce(s_as_rational(0.5)).num, {0.0, 0.0, 0.0, 0.0, 1.0}, 1e-12));

    const auto raw = s_as_rational(0.0);
    CHECK(poly_near(raw.num, {0.0, 0.0, 0.0, -1.0, -1.0}, 0.0));
    CHECK(poly_near(raw.den, {-1.0, -1.0}, 0.0));

    const auto s = s_as_rational(0.3);
    Rng rng(61);
    for (int k = 0; k < 10; ++k) {
        const Complex z = rng.box(2.0);
        CHECK(std::abs(s(z).value() - s_apply(0.3, z).value()) <= 1e-12 * std::max(1.0, std::abs(s(z).value())));
    }
}

TEST_CASE("rational composition") {
    const RationalFn sq(Poly::monomial(1.0, 2), Poly::constant(1.0));
    const auto four = compose_rational(sq, sq);
    CHECK(four.num == Poly::monomial(1.0, 4));
    CHECK(four.den == Poly::constant(1.0));

    const RationalFn id(Poly::identity(), Poly::constant(1.0));
    const auto s = s_as_rational(Complex(0.3, 0.1));
    const auto same = compose_rational(id, s);
    CHECK(same.num == s.num);
    CHECK(same.den == s.den);

    const auto cube = reduce(s_as_rational(0.0));
    const auto nine = compose_rational(cube, cube);
    CHECK(poly_near(nine.num, [] {
        std::vector<Complex> c(10, 0.0);
        c[9] = 1.0;
        return c;
    }(), 1e-12));
    CHECK(poly_near(nine.den, {1.0}, 1e-12));

    // Composition evaluates as r(s(z)) away from poles.
    const Complex A(0.4, -0.3);
    const auto sa = s_as_rational(A);
    const auto twice = compose_rational(sa, sa);
    Rng rng(67);
    for (int k = 0; k < 20; ++k) {
        const Complex z = rng.box(1.5);
        const auto direct = s_apply(A, s_apply(A, z));
        if (direct.is_infinite() || std::abs(direct.value()) > 1e6) continue;
        CHECK(qdyn::test::rel_err(twice(z).value(), direct.value()) < 1e-9);
    }
}

TEST_CASE("period polynomial degree and range") {
    CHECK(period_polynomial(0.3, 1).degree() == 4);
    CHECK(period_polynomial(0.3, 2).degree() == 16);
    CHECK(period_polynomial(0.3, 3).degree() == 64);
    CHECK(period_polynomial(1.0, 2).degree() == 4);
    CHECK_THROWS_AS(period_polynomial(0.3, 0), std::invalid_argument);
    CHECK_THROWS_AS(period_polynomial(0.3, 4), std::invalid_argument);
    CHECK_THROWS_AS(find_periodic_orbits(0.3, 4), std::invalid_argument);
}

TEST_CASE("period 2 at A = 1: one cycle on the cube roots of unity") {
    const auto orbits = find_periodic_orbits(1.0, 2);
    REQUIRE(orbits.size() == 1);
    CHECK(same_multiset(orbits[0].points, unit_roots(3, {1}), 1e-12));
    CHECK(std::abs(orbits[0].multiplier_modulus - 4.0) < 1e-12);
    CHECK(orbits[0].stability == Stability::Repulsor);
}

TEST_CASE("period 2 at A = 0: three cycles on the eighth roots of unity") {
    const auto orbits = find_periodic_orbits(0.0, 2);
    REQUIRE(orbits.size() == 3);
    CHECK(same_multiset(all_points(orbits), unit_roots(8, {1, -1}), 1e-12));
    for (const auto& o : orbits) {
        CHECK(std::abs(o.multiplier_modulus - 9.0) < 1e-12);
        check_invariants(0.0, o);
    }
}

TEST_CASE("period 2 at A = 3/4 against high-precision values") {
    // Recomputed to 16 digits in extended precision from the exact period-2 equation.
    const Complex i(0.0, 1.0);
    const std::vector<std::vector<Complex>> expect = {
        {-1.384880801995711, 2.384880801995711},
        {-0.7220838057390422, 0.4193081680070476},
        {-0.6513878188659973 - 0.7587449567759898 * i, -0.6513878188659973 + 0.7587449567759898 * i},
        {0.5 - 0.229729488163785 * i, 0.5 + 0.229729488163785 * i},
        {0.5806918319929524, 1.722083805739042},
        {1.651387818865997 - 0.7587449567759898 * i, 1.651387818865997 + 0.7587449567759898 * i},
    };
    const double multipliers[] = {21.21110255092798, 21.21110255092798, 6.788897449072021,
                                  6.788897449072021, 21.21110255092798, 6.788897449072021};
    const auto orbits = find_periodic_orbits(0.75, 2);
    REQUIRE(orbits.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
        CAPTURE(k);
        CHECK(same_multiset(orbits[k].points, expect[k], 1e-12));
        CHECK(std::abs(orbits[k].multiplier_modulus - multipliers[k]) < 1e-9);
        CHECK(orbits[k].stability == Stability::Repulsor);
        check_invariants(0.75, orbits[k]);
    }
    // Multipliers are 14 +- sqrt(52).
    CHECK(std::abs(multipliers[0] - (14.0 + std::sqrt(52.0))) < 1e-12);
    CHECK(std::abs(multipliers[2] - (14.0 - std::sqrt(52.0))) < 1e-12);
}

TEST_CASE("period-2 points at A = 3/4 are closed under inversion") {
    const auto pts = all_points(find_periodic_orbits(0.75, 2));
    REQUIRE(pts.size() == 12);
    std::vector<Complex> inverted;
    for (const auto& p : pts) inverted.push_back(1.0 / p);
    CHECK(same_multiset(inverted, pts, 1e-7));
}

TEST_CASE("canonical order: each cycle starts at its smallest point") {
    for (const auto& o : find_periodic_orbits(Complex(0.2, 0.7), 3)) {
        for (const auto& p : o.points) {
            const bool not_smaller = p.real() > o.points[0].real() - 1e-9;
            CHECK(not_smaller);
        }
    }
}

TEST_CASE("period 3 at A = 0 and A = 1") {
    const auto cube = find_periodic_orbits(0.0, 3);
    REQUIRE(cube.size() == 8);
    CHECK(same_multiset(all_points(cube), unit_roots(26, {1, -1}), 1e-10));
    for (const auto& o : cube) CHECK(std::abs(o.multiplier_modulus - 27.0) < 1e-9);

    const auto square = find_periodic_orbits(1.0, 3);
    REQUIRE(square.size() == 2);
    CHECK(same_multiset(all_points(square), unit_roots(7, {1}), 1e-10));
    for (const auto& o : square) CHECK(std::abs(o.multiplier_modulus - 8.0) < 1e-10);
}

TEST_CASE("period 1 reproduces the finite fixed points") {
    for (Complex A : {Complex(0.75), Complex(0.3, 0.4), Complex(-1.5, 1.0), Complex(2.0)}) {
        std::vector<Complex> expect;
        for (const auto& f : fixed_points(A))
            if (f.point.is_finite())
                for (int m = 0; m < f.multiplicity; ++m) expect.push_back(f.point.value());
        const auto orbits = find_periodic_orbits(A, 1);
        CHECK(same_multiset(all_points(orbits), expect, 1e-9));
    }
}

TEST_CASE("parabolic parameters merge coincident roots") {
    // A = 4/5: z = 1 is a triple fixed point.
    const auto p1 = find_periodic_orbits(0.8, 1);
    CHECK(p1.size() == 2);
    // A = 6/7: z2,3 have multiplier -1 and absorb one 2-cycle each.
    CHECK(find_periodic_orbits(6.0 / 7.0, 2).size() == 4);
}

TEST_CASE("property: period-2 census conserves roots") {
    Rng rng(71);
    for (int k = 0; k < 50; ++k) {
        Complex A;
        do A = rng.box(2.0);
        while (std::abs(A - 1.0) < 0.1);
        const auto census = period_census(A, 2);
        CHECK(census.roots.size() == static_cast<std::size_t>(period_polynomial(A, 2).degree()));
        std::vector<Complex> fixed;
        for (const auto& f : fixed_points(A))
            if (f.point.is_finite())
                for (int m = 0; m < f.multiplicity; ++m) fixed.push_back(f.point.value());
        CHECK(same_multiset(census.discarded, fixed, 1e-6));
        CHECK(census.orbits.size() == 6);
        for (const auto& o : census.orbits) {
            check_invariants(A, o);
            for (const auto& p : o.points) CHECK(std::abs(s_apply(A, p).value() - p) >= 1e-6);
        }
    }
}

TEST_CASE("property: period-3 census finds twenty cycles") {
    Rng rng(73);
    for (int k = 0; k < 10; ++k) {
        Complex A;
        do A = rng.box(2.0);
        while (std::abs(A - 1.0) < 0.1);
        const auto orbits = find_periodic_orbits(A, 3);
        CHECK(orbits.size() == 20);
        for (const auto& o : orbits) check_invariants(A, o);
    }
}

}  // TEST_SUITE
