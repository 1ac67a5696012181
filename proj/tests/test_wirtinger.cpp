#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "chernflow/chern.hpp"
#include "chernflow/fields.hpp"
#include "chernflow/rng.hpp"

using namespace chernflow;

namespace {

Vector e1(int n) {
    Vector v = Vector::Zero(n);
    v(0) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("holomorphic monomial: d z^1 / d z^1 = 1, d z^1 / d zbar^1 = 0") {
    ScalarField f = [](const Vector& z) { return z(0); };
    const Vector z = 0.7 * e1(2) + 0.3 * Vector::Ones(2);
    CHECK(std::abs(wirtinger_derivative(f, z, 0, WirtingerKind::Holomorphic) -
                   Complex(1.0, 0.0)) < 1e-10);
    CHECK(std::abs(wirtinger_derivative(f, z, 0, WirtingerKind::Antiholomorphic)) < 1e-10);
}

TEST_CASE("d |z|^2 / d z^k = zbar^k") {
    std::mt19937_64 eng(101);
    ScalarField f = [](const Vector& z) { return Complex(z.squaredNorm(), 0.0); };
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const int k = trial % n;
        const Complex got = wirtinger_derivative(f, z, k, WirtingerKind::Holomorphic);
        CHECK(std::abs(got - std::conj(z(k))) < 1e-10);
    }
}

TEST_CASE("mixed second derivative of log |z|^2 matches the closed coefficient") {
    std::mt19937_64 eng(102);
    ScalarField f = [](const Vector& z) { return Complex(std::log(z.squaredNorm()), 0.0); };
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 3;
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const double r2 = z.squaredNorm();
        // neg_dd_bar returns -d_i d_jbar, so negate to compare
        const CMatrix got = -neg_dd_bar(f, z).mat();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Complex want =
                    ((i == j ? r2 : 0.0) - std::conj(z(i)) * z(j)) / (r2 * r2);
                CHECK(std::abs(got(i, j) - want) < 1e-6);
            }
    }
}

TEST_CASE("linearity at fixed step") {
    std::mt19937_64 eng(103);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const Vector w = random_point(eng, n, 0.5, 2.0);
        // field magnitudes ~0.05 keep the shared-stencil rounding error below
        // the 1e-12 linearity bound at the 1e-5 step
        ScalarField f = [&w](const Vector& p) {
            return 0.02 * w.dot(p) * p.squaredNorm();
        };
        ScalarField g = [](const Vector& p) {
            return Complex(0.02 * std::log(p.squaredNorm()), 0.0);
        };
        const Complex alpha(coef(eng), coef(eng));
        const Complex beta(coef(eng), coef(eng));
        ScalarField combo = [&](const Vector& p) { return alpha * f(p) + beta * g(p); };
        const double step = FdSteps::first_order(z);
        const int k = trial % n;
        for (auto kind : {WirtingerKind::Holomorphic, WirtingerKind::Antiholomorphic}) {
            const Complex lhs = wirtinger_derivative(combo, z, k, kind, step);
            const Complex rhs = alpha * wirtinger_derivative(f, z, k, kind, step) +
                                beta * wirtinger_derivative(g, z, k, kind, step);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("conjugation duality") {
    std::mt19937_64 eng(104);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 3;
        const Vector z = random_point(eng, n, 0.5, 2.0);
        const Vector w = random_point(eng, n, 0.5, 2.0);
        ScalarField f = [&w](const Vector& p) {
            return w.dot(p) + Complex(0.0, 0.3) * p.squaredNorm();
        };
        ScalarField fbar = [&f](const Vector& p) { return std::conj(f(p)); };
        const double step = FdSteps::first_order(z);
        const int k = trial % n;
        const Complex anti = wirtinger_derivative(f, z, k, WirtingerKind::Antiholomorphic, step);
        const Complex dual =
            std::conj(wirtinger_derivative(fbar, z, k, WirtingerKind::Holomorphic, step));
        CHECK(std::abs(anti - dual) < 1e-12);
    }
}

TEST_CASE("domain errors") {
    ScalarField f = [](const Vector& z) { return z(0); };
    CHECK_THROWS_AS(wirtinger_derivative(f, Vector::Zero(2), 0, WirtingerKind::Holomorphic),
                    SingularPoint);
    CHECK_THROWS_AS(wirtinger_derivative(f, e1(2), 2, WirtingerKind::Holomorphic),
                    DimensionMismatch);
    CHECK_THROWS_AS(wirtinger_derivative(f, e1(2), -1, WirtingerKind::Holomorphic),
                    DimensionMismatch);
}

TEST_CASE("matrix derivative equals entrywise scalar derivatives") {
    std::mt19937_64 eng(105);
    const int n = 3;
    const Vector w = random_point(eng, n, 0.5, 2.0);
    MetricField g{[&w](const Vector& z) {
                      CMatrix m(3, 3);
                      for (int i = 0; i < 3; ++i)
                          for (int j = 0; j < 3; ++j)
                              m(i, j) = std::conj(z(i)) * z(j) +
                                        (i == j ? Complex(z.squaredNorm(), 0.0)
                                                : w.dot(z) * 0.0);
                      return HermitianMatrix(m);
                  },
                  "test"};
    const Vector z = random_point(eng, n, 0.5, 2.0);
    const double step = FdSteps::first_order(z);
    const CMatrix d = wirtinger_matrix_derivative(g, z, 1, WirtingerKind::Holomorphic, step);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ScalarField entry = [&g, i, j](const Vector& p) { return g.evaluate(p)(i, j); };
            const Complex want =
                wirtinger_derivative(entry, z, 1, WirtingerKind::Holomorphic, step);
            CHECK(std::abs(d(i, j) - want) < 1e-11);
        }
}
