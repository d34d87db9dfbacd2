// distance.hpp -- trace distances, the correlation measure
// D(rho_SE, rho_S (x) rho_E), and the information-flow quantities built
// from them.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "jcm/model.hpp"
#include "jcm/numerics.hpp"
#include "jcm/states.hpp"

namespace jcm {

// Closed form for 2x2 states: the difference is Hermitian and traceless, so
// the distance is sqrt of (population difference)^2 + |coherence difference|^2.
inline double trace_distance_qubit(const QubitState& r1, const QubitState& r2) {
    const double dpop = r1.rho11 - r2.rho11;
    const complex dcoh = r1.rho10 - r2.rho10;
    return std::sqrt(dpop * dpop + std::norm(dcoh));
}

// (1/2) || r1 - r2 ||_1 on the total space; the smaller state is padded
// with zeros.
inline double trace_distance_total(const TotalState& r1, const TotalState& r2) {
    const int nmax = std::max(r1.n_max(), r2.n_max());
    ComplexMatrix diff(2 * (nmax + 1));
    for (int n = 0; n <= nmax; ++n)
        for (int alpha = 0; alpha < 2; ++alpha)
            for (int m = 0; m <= nmax; ++m)
                for (int beta = 0; beta < 2; ++beta)
                    diff(TotalState::index(alpha, n), TotalState::index(beta, m)) =
                        r1.coeff(alpha, n, beta, m) - r2.coeff(alpha, n, beta, m);
    return 0.5 * trace_norm_hermitian(HermitianMatrix(diff));
}

// Total amount of correlations in rho: its distance from the product of its
// own marginals. Zero exactly for product states.
inline double correlations(const TotalState& rho) {
    return trace_distance_total(rho, product_of_marginals(rho));
}

// Same quantity for the Gibbs state, evaluated from the block structure of
// the difference operator: a 1x1 vacuum block followed by 2x2 blocks on
// {|1,n>, |0,n+1>}, truncated consistently with gibbs_state.
inline double gibbs_correlations(const ModelParams& p, double beta,
                                 double tail_tol = default_tail_tol) {
    const GibbsData gd = gibbs_data(p, beta, tail_tol);
    const int nmax = gd.n_max;
    double sum = std::abs(gd.diag00[0] - gd.rho00 * gd.field_diag[0]);
    for (int n = 0; n < nmax; ++n) {
        const double d1 = gd.diag11[n] - gd.rho11 * gd.field_diag[n];
        const double d0 = gd.diag00[n + 1] - gd.rho00 * gd.field_diag[n + 1];
        const double s =
            std::sqrt((d1 - d0) * (d1 - d0) + 4.0 * gd.coh10[n] * gd.coh10[n]);
        sum += 0.5 * std::abs(d1 + d0 + s) + 0.5 * std::abs(d1 + d0 - s);
    }
    // unpaired |1, n_max> element of the truncated block
    sum += std::abs(gd.diag11[nmax] - gd.rho11 * gd.field_diag[nmax]);
    return 0.5 * sum;
}

// Relative information initially outside the open system:
// D(r1_SE, r2_SE) - D(r1_S, r2_S) >= 0.
inline double outside_information(const TotalState& r1, const TotalState& r2) {
    const QubitState q1 = marginals(r1).first;
    const QubitState q2 = marginals(r2).first;
    return trace_distance_total(r1, r2) - trace_distance_qubit(q1, q2);
}

// Optimal single-shot probability of telling r1 from r2 with equal priors.
inline double helstrom_probability(const QubitState& r1, const QubitState& r2) {
    return 0.5 * (1.0 + trace_distance_qubit(r1, r2));
}

}  // namespace jcm
