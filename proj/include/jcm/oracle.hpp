// oracle.hpp -- independent brute-force verification path: dense Hamiltonian
// assembly, exact matrix exponentials through the eigensolver, and partial
// traces done directly on basis indices. Deliberately slow and deliberately
// ignorant of the closed-form propagator, Gibbs and reduced-map formulas it
// is used to check.

#pragma once

#include <cmath>
#include <complex>
#include <iostream>
#include <stdexcept>

#include "jcm/model.hpp"
#include "jcm/numerics.hpp"
#include "jcm/states.hpp"

namespace jcm::oracle {

// omega0 sigma+ sigma- + omega b^dag b + g (sigma+ b + sigma- b^dag) on the
// ordered basis {|0,0>, |1,0>, |0,1>, ...} truncated at n_max.
inline HermitianMatrix dense_hamiltonian(const ModelParams& p, int n_max) {
    if (n_max < 1) throw std::invalid_argument("dense_hamiltonian: n_max must be >= 1");
    ComplexMatrix h(2 * (n_max + 1));
    for (int n = 0; n <= n_max; ++n) {
        h(TotalState::index(0, n), TotalState::index(0, n)) = n * p.omega;
        h(TotalState::index(1, n), TotalState::index(1, n)) = p.omega0 + n * p.omega;
        if (n < n_max) {
            const double v = p.g * std::sqrt(n + 1.0);
            h(TotalState::index(1, n), TotalState::index(0, n + 1)) = v;
            h(TotalState::index(0, n + 1), TotalState::index(1, n)) = v;
        }
    }
    return HermitianMatrix(h);
}

inline HermitianMatrix dense_free_hamiltonian(const ModelParams& p, int n_max) {
    return dense_hamiltonian(ModelParams(p.omega0, p.omega, 0.0), n_max);
}

// exp(-beta H)/Tr exp(-beta H), with the spectrum shifted by its minimum
// before exponentiating so that large beta cannot overflow.
inline TotalState oracle_gibbs(const ModelParams& p, double beta, int n_max) {
    if (!(beta > 0.0)) throw std::invalid_argument("oracle_gibbs: beta must be positive");
    const HermitianMatrix h = dense_hamiltonian(p, n_max);
    const double e_min = hermitian_eigenvalues(h).front();
    ComplexMatrix w = hermitian_function(
        h, [beta, e_min](double x) { return complex{std::exp(-beta * (x - e_min)), 0.0}; });
    const double z = w.trace().real();
    return TotalState::from_matrix((1.0 / z) * w, 1e-9);
}

// Interaction-picture unitary exp(i H0 t) exp(-i H t).
inline ComplexMatrix oracle_unitary_interaction(const ModelParams& p, double t, int n_max) {
    const ComplexMatrix free_part = hermitian_function(
        dense_free_hamiltonian(p, n_max), [t](double x) { return std::exp(complex{0.0, x * t}); });
    const ComplexMatrix full_part = hermitian_function(
        dense_hamiltonian(p, n_max), [t](double x) { return std::exp(complex{0.0, -x * t}); });
    return free_part * full_part;
}

inline QubitState partial_trace_field(const ComplexMatrix& m) {
    const int levels = m.dim() / 2;
    QubitState q;
    q.rho11 = 0.0;
    q.rho00 = 0.0;
    q.rho10 = complex{};
    for (int n = 0; n < levels; ++n) {
        q.rho00 += m(TotalState::index(0, n), TotalState::index(0, n)).real();
        q.rho11 += m(TotalState::index(1, n), TotalState::index(1, n)).real();
        q.rho10 += m(TotalState::index(1, n), TotalState::index(0, n));
    }
    return q;
}

// Reduced qubit state at time t from conjugating the densely padded initial
// state with the dense interaction-picture unitary.
inline QubitState oracle_reduced_state(const TotalState& rho0, double t, const ModelParams& p,
                                       int n_max) {
    if (n_max < rho0.n_max())
        throw std::invalid_argument("oracle_reduced_state: oracle n_max below the state's");
    // same truncation-leak criterion as the sector-wise evolution
    double top = 0.0;
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int n = std::max(0, rho0.n_max() - 1); n <= rho0.n_max(); ++n)
            top += rho0.coeff(alpha, n, alpha, n).real();
    if (n_max < rho0.n_max() + 2 && top > rho0.truncation_tol())
        std::cerr << "jcm: oracle_reduced_state has weight " << top
                  << " within two levels of its own truncation\n";

    ComplexMatrix dense(2 * (n_max + 1));
    for (int i = 0; i < rho0.dim(); ++i)
        for (int j = 0; j < rho0.dim(); ++j) dense(i, j) = rho0.matrix()(i, j);
    const ComplexMatrix u = oracle_unitary_interaction(p, t, n_max);
    return partial_trace_field(u * dense * u.adjoint());
}

}  // namespace jcm::oracle
