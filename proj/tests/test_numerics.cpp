#include <doctest.h>

#include <cmath>
#include <complex>

#include "test_helpers.hpp"

using namespace jcm;
using jcm_test::seeded_rng;

namespace {

ComplexMatrix diag3(double a, double b, double c) {
    ComplexMatrix m(3);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

}  // namespace

TEST_CASE("eigenvalues of simple matrices") {
    CHECK(hermitian_eigenvalues(HermitianMatrix(ComplexMatrix::identity(3))) ==
          std::vector<double>{1.0, 1.0, 1.0});

    const std::vector<double> ev = hermitian_eigenvalues(HermitianMatrix(diag3(-2.0, 0.0, 5.0)));
    CHECK(ev[0] == doctest::Approx(-2.0));
    CHECK(ev[1] == doctest::Approx(0.0));
    CHECK(ev[2] == doctest::Approx(5.0));

    ComplexMatrix pauli_x(2);
    pauli_x(0, 1) = 1.0;
    pauli_x(1, 0) = 1.0;
    const std::vector<double> px = hermitian_eigenvalues(HermitianMatrix(pauli_x));
    CHECK(px[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(px[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("non-Hermitian input is rejected with the worst pair named") {
    ComplexMatrix m(2);
    m(0, 1) = complex{1.0, 0.0};
    m(1, 0) = complex{0.5, 0.0};
    CHECK_THROWS_WITH_AS(HermitianMatrix{m}, doctest::Contains("(0,1)"), std::invalid_argument);
}

TEST_CASE("trace norm basics") {
    CHECK(trace_norm_hermitian(HermitianMatrix(ComplexMatrix(4))) == 0.0);

    ComplexMatrix half(2);
    half(0, 0) = 0.5;
    half(1, 1) = -0.5;
    CHECK(trace_norm_hermitian(HermitianMatrix(half)) == doctest::Approx(1.0).epsilon(1e-14));

    // difference of orthogonal pure states
    ComplexMatrix d(2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    CHECK(trace_norm_hermitian(HermitianMatrix(d)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("hermitian_function on diagonal inputs") {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    const HermitianMatrix h(m);

    CHECK(max_abs_diff(hermitian_function(h, [](double) { return complex{1.0, 0.0}; }),
                       ComplexMatrix::identity(2)) < 1e-14);
    CHECK(max_abs_diff(hermitian_function(h, [](double x) { return complex{x, 0.0}; }), m) < 1e-14);

    ComplexMatrix lg(2);
    lg(1, 1) = std::log(2.0);
    ComplexMatrix expm = hermitian_function(HermitianMatrix(lg),
                                            [](double x) { return complex{std::exp(-x), 0.0}; });
    CHECK(expm(0, 0).real() == doctest::Approx(1.0));
    CHECK(expm(1, 1).real() == doctest::Approx(0.5));
}

TEST_CASE("eigenvalue sum equals trace for random Hermitian matrices") {
    auto rng = seeded_rng(1);
    for (int dim : {2, 5, 16, 64}) {
        const HermitianMatrix h = random_hermitian(rng, dim);
        const std::vector<double> ev = hermitian_eigenvalues(h);
        double sum = 0.0, scale = 0.0;
        for (double x : ev) {
            sum += x;
            scale = std::max(scale, std::abs(x));
        }
        CHECK(std::abs(sum - h.matrix().trace().real()) <= 1e-10 * dim * std::max(scale, 1.0));
    }
}

TEST_CASE("trace norm is invariant under unitary conjugation") {
    auto rng = seeded_rng(2);
    for (int rep = 0; rep < 4; ++rep) {
        const int dim = 6;
        const HermitianMatrix h = random_hermitian(rng, dim);
        const ComplexMatrix u = random_unitary(rng, dim);
        const HermitianMatrix conj(u * h.matrix() * u.adjoint(), 1e-9);
        CHECK(trace_norm_hermitian(conj) ==
              doctest::Approx(trace_norm_hermitian(h)).epsilon(1e-11));
    }
}

TEST_CASE("exp(-i M t) through hermitian_function is unitary") {
    auto rng = seeded_rng(3);
    const HermitianMatrix h = random_hermitian(rng, 8);
    for (double t : {0.3, 2.0, 9.5}) {
        const ComplexMatrix u =
            hermitian_function(h, [t](double x) { return std::exp(complex{0.0, -x * t}); });
        CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(8)) <= 1e-10);
    }
}

TEST_CASE("eigenvalue multiset is invariant under unitary conjugation") {
    auto rng = seeded_rng(4);
    const HermitianMatrix h = random_hermitian(rng, 7);
    const ComplexMatrix u = random_unitary(rng, 7);
    const std::vector<double> a = hermitian_eigenvalues(h);
    const std::vector<double> b =
        hermitian_eigenvalues(HermitianMatrix(u * h.matrix() * u.adjoint(), 1e-9));
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-11));
}

TEST_CASE("eigendecomposition reconstructs the matrix") {
    auto rng = seeded_rng(5);
    const HermitianMatrix h = random_hermitian(rng, 9);
    const EigenSystem es = hermitian_eigensystem(h);
    ComplexMatrix rebuilt(9);
    for (int k = 0; k < 9; ++k)
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j)
                rebuilt(i, j) += es.values[k] * es.vectors(i, k) * std::conj(es.vectors(j, k));
    CHECK(max_abs_diff(rebuilt, h.matrix()) < 1e-12 * h.matrix().max_abs() * 9);
}
