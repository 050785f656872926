#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdyn/complex_poly.hpp"
#include "qdyn/errors.hpp"
#include "test_support.hpp"

using namespace qdyn;
using qdyn::test::Rng;

namespace {

Poly random_poly(Rng& rng, int degree) {
    std::vector<Complex> c;
    for (int k = 0; k <= degree; ++k) c.push_back(rng.box(2.0));
    if (std::abs(c.back()) < 0.1) c.back() = 1.0;
    return Poly(c);
}

bool coeffs_close(const Poly& p, const Poly& q, double tol) {
    const int n = std::max(p.degree(), q.degree());
    for (int k = 0; k <= n; ++k)
        if (std::abs(p[k] - q[k]) > tol) return false;
    return true;
}

}  // namespace

TEST_SUITE("complex_poly") {

TEST_CASE("normalization trims negligible leading coefficients") {
    const Poly p({1.0, 2.0, 1e-15});
    CHECK(p.degree() == 1);
    CHECK(Poly({0.0, 0.0}).is_zero());
    CHECK(Poly().degree() == -1);
    CHECK(Poly({1e-20}).degree() == 0);  // a lone coefficient is its own max
}

TEST_CASE("add") {
    CHECK(add(Poly({1.0, 1.0}), Poly({-1.0, 1.0})) == Poly({0.0, 2.0}));
    const Poly p({3.0, Complex(0, 1), 2.0});
    CHECK(add(p, Poly()) == p);
    CHECK(add(Poly({0.0, 0.0, 1.0}), Poly({1.0})) == Poly({1.0, 0.0, 1.0}));
    CHECK(add(Poly({1.0, 1.0}), Poly({-1.0, -1.0})).is_zero());
}

TEST_CASE("multiply") {
    CHECK(multiply(Poly({-1.0, 1.0}), Poly({1.0, 1.0})) == Poly({-1.0, 0.0, 1.0}));
    const Poly p({2.0, -1.0, 5.0});
    CHECK(multiply(p, Poly::constant(1.0)) == p);
    const Complex roots[] = {2.0, 3.0};
    CHECK(Poly::from_roots(roots) == Poly({6.0, -5.0, 1.0}));
    CHECK(multiply(p, Poly()).is_zero());
}

TEST_CASE("compose") {
    CHECK(compose(Poly({0.0, 0.0, 1.0}), Poly({1.0, 1.0})) == Poly({1.0, 2.0, 1.0}));
    const Poly q({0.5, Complex(1, -2), 3.0});
    CHECK(compose(Poly::identity(), q) == q);
    CHECK(compose(Poly::monomial(1.0, 3), Poly::monomial(1.0, 3)) == Poly::monomial(1.0, 9));
}

TEST_CASE("derivative") {
    CHECK(derivative(Poly({0.0, 0.0, 1.0})) == Poly({0.0, 2.0}));
    CHECK(derivative(Poly::constant(7.0)).is_zero());
    CHECK(derivative(Poly::monomial(1.0, 4)) == Poly::monomial(4.0, 3));
}

TEST_CASE("evaluate") {
    CHECK(evaluate(Poly({-1.0, 0.0, 1.0}), 2.0) == Complex(3.0));
    const Poly p({Complex(0.3, -0.2), 4.0, 1.0});
    CHECK(evaluate(p, 0.0) == p[0]);
    CHECK(evaluate(Poly::monomial(1.0, 3), Complex(1, 1)) == Complex(-2, 2));
    CHECK(evaluate(Poly(), Complex(3, 3)) == Complex(0.0));
}

TEST_CASE("deflate divides out a known root") {
    const Complex roots[] = {1.0, Complex(0, 2), -3.0};
    const Poly p = Poly::from_roots(roots, 2.0);
    const Complex rest[] = {1.0, -3.0};
    CHECK(coeffs_close(deflate(p, Complex(0, 2)), Poly::from_roots(rest, 2.0), 1e-13));
}

TEST_CASE("find_roots closed forms") {
    CHECK(qdyn::test::same_multiset(find_roots(Poly({-1.0, 0.0, 1.0})), {1.0, -1.0}, 1e-14));

    std::vector<Complex> unity8;
    for (int k = 0; k < 8; ++k) unity8.push_back(std::polar(1.0, k * std::numbers::pi / 4));
    CHECK(qdyn::test::same_multiset(find_roots(Poly::monomial(1.0, 8) - Poly::constant(1.0)), unity8, 1e-13));

    // z^4 - z = z(z^3 - 1)
    const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
    const auto r = find_roots(Poly({0.0, -1.0, 0.0, 0.0, 1.0}));
    CHECK(qdyn::test::same_multiset(r, {0.0, 1.0, w, std::conj(w)}, 1e-13));
}

TEST_CASE("find_roots terminates at a multiple root") {
    const Complex roots[] = {1.0, 1.0, 1.0, -2.0};
    const auto r = find_roots(Poly::from_roots(roots));
    REQUIRE(r.size() == 4);
    int near_one = 0;
    for (const auto& z : r) near_one += std::abs(z - 1.0) < 1e-4;
    CHECK(near_one == 3);
}

TEST_CASE("find_roots output is sorted and reproducible") {
    Rng rng(3);
    const Poly p = random_poly(rng, 7);
    const auto a = find_roots(p);
    CHECK(a == find_roots(p));
    for (std::size_t k = 1; k < a.size(); ++k) CHECK(a[k - 1].real() <= a[k].real());
}

TEST_CASE("find_roots error paths") {
    CHECK_THROWS_AS(find_roots(Poly::constant(2.0)), std::invalid_argument);
    CHECK_THROWS_AS(find_roots(Poly()), std::invalid_argument);
    RootOptions starved;
    starved.max_iterations = 1;
    Rng rng(11);
    CHECK_THROWS_AS(find_roots(random_poly(rng, 12), starved), NonConvergence);
}

TEST_CASE("reduce") {
    const RationalFn a = reduce({Poly({-1.0, 0.0, 1.0}), Poly({-1.0, 1.0})});
    CHECK(coeffs_close(a.num, Poly({1.0, 1.0}), 1e-14));
    CHECK(coeffs_close(a.den, Poly::constant(1.0), 1e-14));

    const RationalFn b = reduce({Poly({1.0, 2.0}), Poly({3.0, 2.0})});
    CHECK(coeffs_close(b.num, Poly({0.5, 1.0}), 1e-15));
    CHECK(coeffs_close(b.den, Poly({1.5, 1.0}), 1e-15));

    const Complex n[] = {2.0, 3.0};
    const Complex d[] = {3.0, 4.0};
    const RationalFn c = reduce({Poly::from_roots(n), Poly::from_roots(d)});
    CHECK(coeffs_close(c.num, Poly({-2.0, 1.0}), 1e-12));
    CHECK(coeffs_close(c.den, Poly({-4.0, 1.0}), 1e-12));

    CHECK_THROWS_AS(RationalFn(Poly({1.0}), Poly()), std::invalid_argument);
}

TEST_CASE("rational evaluation on the extended plane") {
    const RationalFn r{Poly({1.0, 0.0, 2.0}), Poly({0.0, 1.0})};
    CHECK(r(ExtendedComplex::infinity()).is_infinite());
    CHECK(r(Complex(0.0)).is_infinite());
    CHECK(r(Complex(1.0)).value() == Complex(3.0));
    const RationalFn flat{Poly({1.0, 4.0}), Poly({0.0, 2.0})};
    CHECK(flat(ExtendedComplex::infinity()).value() == Complex(2.0));
}

TEST_CASE("property: evaluation is a ring homomorphism") {
    Rng rng;
    MESSAGE("seed " << qdyn::test::kSeed);
    for (int trial = 0; trial < 50; ++trial) {
        const Poly p = random_poly(rng, rng.integer(0, 6));
        const Poly q = random_poly(rng, rng.integer(0, 6));
        const Poly pq = multiply(p, q);
        for (int k = 0; k < 100; ++k) {
            const Complex z = rng.disk(1.0);
            const Complex expect = evaluate(p, z) * evaluate(q, z);
            CHECK(std::abs(evaluate(pq, z) - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("property: roots re-expand to the polynomial") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const Poly p = random_poly(rng, rng.integer(1, 8));
        const auto r = find_roots(p);
        CHECK(static_cast<int>(r.size()) == p.degree());
        const Poly back = Poly::from_roots(r, p.leading());
        double max_c = 0.0;
        for (const auto& c : p.coeffs()) max_c = std::max(max_c, std::abs(c));
        CHECK(coeffs_close(back, p, 1e-8 * max_c));
    }
}

TEST_CASE("property: composing with the identity is exact") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Poly p = random_poly(rng, rng.integer(0, 9));
        CHECK(compose(p, Poly::identity()) == p);
    }
}

TEST_CASE("property: Leibniz rule") {
    Rng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const Poly p = random_poly(rng, rng.integer(0, 6));
        const Poly q = random_poly(rng, rng.integer(0, 6));
        const Poly lhs = derivative(multiply(p, q));
        const Poly rhs = add(multiply(derivative(p), q), multiply(p, derivative(q)));
        CHECK(coeffs_close(lhs, rhs, 1e-12));
    }
}

TEST_CASE("Newton-polygon start handles widely spread coefficients") {
    // Roots at 10^k for k = -4..4: coefficients span dozens of decades.
    std::vector<Complex> roots;
    for (int k = -4; k <= 4; ++k) roots.push_back(std::pow(10.0, k));
    const Poly p = Poly::from_roots(roots);
    RootOptions opts;
    opts.start = RootStart::NewtonPolygon;
    const auto found = find_roots(p, opts);
    REQUIRE(found.size() == roots.size());
    for (std::size_t k = 0; k < roots.size(); ++k)
        CHECK(std::abs(found[k] - roots[k]) < 1e-9 * std::abs(roots[k]));
    CHECK(RootOptions{}.start == RootStart::Circle);
}

}  // TEST_SUITE
