// dynamics.hpp -- exact time evolution in the interaction picture: the
// reduced map for arbitrary total initial states and the full unitary,
// applied sector by sector on the excitation ladder.

#pragma once

#include <cmath>
#include <complex>
#include <iostream>
#include <vector>

#include "jcm/model.hpp"
#include "jcm/states.hpp"

namespace jcm {

namespace detail {

// c_n(t), d_n(t) for n = 0..n_hi inclusive.
inline void jc_coefficient_table(int n_hi, double t, const ModelParams& p,
                                 std::vector<complex>& c, std::vector<complex>& d) {
    c.resize(n_hi + 1);
    d.resize(n_hi + 1);
    for (int n = 0; n <= n_hi; ++n) {
        const JCCoefficients k = jc_coefficients(n, t, p);
        c[n] = k.c;
        d[n] = k.d;
    }
}

}  // namespace detail

// Reduced qubit state at time t evolved from the total initial state rho0.
// Coefficients beyond the truncation are zero, so both series terminate.
inline QubitState reduced_state_at(const TotalState& rho0, double t, const ModelParams& p) {
    const int nmax = rho0.n_max();
    std::vector<complex> c, d;
    detail::jc_coefficient_table(nmax + 2, t, p, c, d);

    double rho11 = 0.0;
    complex rho10{};
    for (int n = 0; n <= nmax; ++n) {
        const double sq1 = std::sqrt(n + 1.0);
        rho11 += rho0.coeff(1, n, 1, n).real() * std::norm(c[n + 1]) +
                 2.0 * sq1 * (rho0.coeff(1, n, 0, n + 1) * std::conj(d[n + 1]) * c[n + 1]).real() +
                 n * rho0.coeff(0, n, 0, n).real() * std::norm(d[n]);
        rho10 += -sq1 * rho0.coeff(1, n + 1, 1, n) * c[n + 2] * d[n + 1] -
                 std::sqrt((n + 2.0) * (n + 1.0)) * rho0.coeff(0, n + 2, 1, n) * d[n + 2] * d[n + 1] +
                 rho0.coeff(1, n, 0, n) * c[n + 1] * c[n] +
                 sq1 * rho0.coeff(0, n + 1, 0, n) * d[n + 1] * c[n];
    }
    QubitState out;
    out.rho11 = rho11;
    out.rho00 = rho0.trace_real() - rho11;  // the padded evolution is unitary
    out.rho10 = rho10;
    return out;
}

// U(t) rho0 U(t)^dagger. The unitary is block diagonal over the excitation
// sectors {|1,n-1>, |0,n>} with the invariant |0,0>, so the state is padded
// by one Fock level, rotated sector-wise, and truncated back. Weight that
// rotated onto the pad level is reported through leaked_weight; when it
// exceeds the truncation tolerance and no sink was supplied, a warning is
// printed.
inline TotalState evolve_total(const TotalState& rho0, double t, const ModelParams& p,
                               double* leaked_weight = nullptr) {
    const int nmax = rho0.n_max();
    const int next = nmax + 1;  // pad level
    const int dim_ext = 2 * (next + 1);

    std::vector<complex> c, d;
    detail::jc_coefficient_table(next + 1, t, p, c, d);

    // sector s >= 1 spans (|1,s-1>, |0,s>); sector 0 is the invariant |0,0>
    struct Sector {
        int i0, i1;     // basis indices, i1 < 0 for the 1-dim sector
        complex u[2][2];
    };
    std::vector<Sector> sectors;
    sectors.push_back({TotalState::index(0, 0), -1, {{1.0, 0.0}, {0.0, 1.0}}});
    for (int s = 1; s <= next; ++s) {
        const double sq = std::sqrt(static_cast<double>(s));
        Sector sec;
        sec.i0 = TotalState::index(1, s - 1);
        sec.i1 = TotalState::index(0, s);
        sec.u[0][0] = c[s];
        sec.u[0][1] = sq * d[s];
        sec.u[1][0] = -sq * std::conj(d[s]);
        sec.u[1][1] = std::conj(c[s]);
        sectors.push_back(sec);
    }
    // The pad level |1, next> belongs to the sector next+1 whose partner
    // |0, next+1> lies outside even the padded space; it carries no weight
    // here, so the identity is exact for it.
    sectors.push_back({TotalState::index(1, next), -1, {{1.0, 0.0}, {0.0, 1.0}}});

    ComplexMatrix ext(dim_ext);
    for (int i = 0; i < rho0.dim(); ++i)
        for (int j = 0; j < rho0.dim(); ++j) ext(i, j) = rho0.matrix()(i, j);

    ComplexMatrix out(dim_ext);
    for (const Sector& sr : sectors) {
        const int rn = sr.i1 < 0 ? 1 : 2;
        const int ri[2] = {sr.i0, sr.i1};
        for (const Sector& sc : sectors) {
            const int cn = sc.i1 < 0 ? 1 : 2;
            const int ci[2] = {sc.i0, sc.i1};
            complex blk[2][2] = {};
            for (int a = 0; a < rn; ++a)
                for (int b = 0; b < cn; ++b)
                    for (int x = 0; x < rn; ++x)
                        for (int y = 0; y < cn; ++y)
                            blk[a][b] += sr.u[a][x] * ext(ri[x], ci[y]) * std::conj(sc.u[b][y]);
            for (int a = 0; a < rn; ++a)
                for (int b = 0; b < cn; ++b) out(ri[a], ci[b]) = blk[a][b];
        }
    }

    const double leak = out(TotalState::index(0, next), TotalState::index(0, next)).real() +
                        out(TotalState::index(1, next), TotalState::index(1, next)).real();
    if (leaked_weight != nullptr) {
        *leaked_weight = leak;
    } else if (leak > rho0.truncation_tol()) {
        std::cerr << "jcm: evolve_total leaked weight " << leak
                  << " past the truncation at n_max = " << nmax << "\n";
    }

    TotalState res(nmax, rho0.truncation_tol());
    for (int i = 0; i < res.dim(); ++i)
        for (int j = 0; j < res.dim(); ++j)
            res.at(i % 2, i / 2, j % 2, j / 2) = out(i, j);
    return res;
}

// Dynamical map for an uncorrelated initial pair: linear in rho_S for a
// fixed environment state.
inline QubitState dynamical_map(const QubitState& rho_s, const FieldState& rho_e, double t,
                                const ModelParams& p) {
    return reduced_state_at(product_state(rho_s, rho_e), t, p);
}

}  // namespace jcm
