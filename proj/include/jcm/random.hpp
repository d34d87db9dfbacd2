// random.hpp -- deterministic samplers for states and operators, used by the
// oracle-check harness and the property suites.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "jcm/numerics.hpp"
#include "jcm/states.hpp"

namespace jcm {

using Rng = std::mt19937_64;

inline complex random_gaussian(Rng& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    return complex{n01(rng), n01(rng)};
}

// Haar-like random state vector on dim amplitudes.
inline std::vector<complex> random_ket(Rng& rng, int dim) {
    std::vector<complex> v(dim);
    double norm2 = 0.0;
    for (complex& z : v) {
        z = random_gaussian(rng);
        norm2 += std::norm(z);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (complex& z : v) z *= inv;
    return v;
}

inline QubitState random_qubit_state(Rng& rng) {
    // mix of two random pure qubit states
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double w = u01(rng);
    QubitState q;
    q.rho11 = 0.0;
    q.rho00 = 0.0;
    q.rho10 = complex{};
    for (int k = 0; k < 2; ++k) {
        const std::vector<complex> psi = random_ket(rng, 2);
        const double wk = k == 0 ? w : 1.0 - w;
        q.rho00 += wk * std::norm(psi[0]);
        q.rho11 += wk * std::norm(psi[1]);
        q.rho10 += wk * psi[1] * std::conj(psi[0]);
    }
    return q;
}

inline FieldState random_field_state(Rng& rng, int n_max) {
    // Gram matrix of Gaussian vectors, normalized: full-rank mixed state
    const int d = n_max + 1;
    std::vector<std::vector<complex>> a(d, std::vector<complex>(d));
    for (auto& row : a)
        for (complex& z : row) z = random_gaussian(rng);
    FieldState f(n_max);
    double tr = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            complex s{};
            for (int k = 0; k < d; ++k) s += a[i][k] * std::conj(a[j][k]);
            f(i, j) = s;
        }
        tr += f(i, i).real();
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) f(i, j) /= tr;
    return f;
}

// Mixture of up to max_terms random pure states supported on Fock levels
// <= support_n, truncated with one level of headroom.
inline TotalState random_pure_mixture(Rng& rng, int max_terms, int support_n) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int terms = nterms(rng);
    const int n_max = support_n + 1;
    const int d_support = 2 * (support_n + 1);
    ComplexMatrix m(2 * (n_max + 1));
    std::vector<double> w(terms);
    double wsum = 0.0;
    for (double& x : w) {
        x = u01(rng) + 1e-3;
        wsum += x;
    }
    for (int k = 0; k < terms; ++k) {
        const std::vector<complex> psi = random_ket(rng, d_support);
        const double wk = w[k] / wsum;
        for (int i = 0; i < d_support; ++i)
            for (int j = 0; j < d_support; ++j) m(i, j) += wk * psi[i] * std::conj(psi[j]);
    }
    return TotalState::from_matrix(m);
}

// Full-rank random density operator on the truncated total space.
inline TotalState random_total_state(Rng& rng, int n_max) {
    const int d = 2 * (n_max + 1);
    ComplexMatrix a(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = random_gaussian(rng);
    ComplexMatrix rho = a * a.adjoint();
    const double tr = rho.trace().real();
    return TotalState::from_matrix((1.0 / tr) * rho);
}

inline HermitianMatrix random_hermitian(Rng& rng, int dim, double scale = 1.0) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
        m(i, i) = complex{scale * random_gaussian(rng).real(), 0.0};
        for (int j = i + 1; j < dim; ++j) {
            const complex z = scale * random_gaussian(rng);
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return HermitianMatrix(m);
}

inline ComplexMatrix random_unitary(Rng& rng, int dim) {
    return hermitian_function(random_hermitian(rng, dim),
                              [](double x) { return std::exp(complex{0.0, x}); });
}

}  // namespace jcm
