// model.hpp -- Jaynes-Cummings constants, propagator coefficient functions,
// dressed levels and the level-crossing analysis of the coupling axis.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace jcm {

using complex = std::complex<double>;

// Natural units throughout: hbar = k_B = 1.
struct ModelParams {
    double omega0;  // qubit transition frequency
    double omega;   // field mode frequency
    double g;       // coupling strength

    ModelParams(double omega0_, double omega_, double g_)
        : omega0(omega0_), omega(omega_), g(g_) {
        if (!(omega > 0.0)) throw std::invalid_argument("ModelParams: omega must be positive");
        if (!(g >= 0.0)) throw std::invalid_argument("ModelParams: g must be nonnegative");
    }

    static ModelParams detuned(double omega, double delta, double g) {
        return ModelParams(omega + delta, omega, g);
    }

    double delta() const { return omega0 - omega; }

    ModelParams with_coupling(double g_new) const { return ModelParams(omega0, omega, g_new); }
};

// Omega_n = sqrt(Delta^2 + 4 g^2 n)
inline double rabi_frequency(int n, const ModelParams& p) {
    if (n < 0) throw std::invalid_argument("rabi_frequency: n must be nonnegative");
    const double delta = p.delta();
    return std::sqrt(delta * delta + 4.0 * p.g * p.g * static_cast<double>(n));
}

struct JCCoefficients {
    complex c;
    complex d;
};

// Eigenvalues of the propagator functions c(n,t), d(n,t) on the number state
// |n>. The n = 0, Delta = 0 case is a removable singularity of d: the factor
// (2g/Omega) sin(Omega t/2) tends to g t.
inline JCCoefficients jc_coefficients(int n, double t, const ModelParams& p) {
    if (n < 0) throw std::invalid_argument("jc_coefficients: n must be nonnegative");
    const double delta = p.delta();
    const double om = rabi_frequency(n, p);
    const complex phase = std::exp(complex{0.0, 0.5 * delta * t});
    if (om < 1e-14) {
        return {phase, complex{0.0, -1.0} * phase * (p.g * t)};
    }
    const double half = 0.5 * om * t;
    const double sn = std::sin(half);
    const complex c = phase * complex{std::cos(half), -(delta / om) * sn};
    const complex d = complex{0.0, -1.0} * phase * (2.0 * p.g / om) * sn;
    return {c, d};
}

struct DressedLevel {
    int n;           // excitation index, >= 1
    double a;        // amplitude on |1, n-1>
    double b;        // amplitude on |0, n>
    double e_plus;   // E_n^+
    double e_minus;  // E_n^-
};

// Dressed pair of the n-excitation sector. The n = 0 level is the bare
// vacuum |0,0> with energy zero and is rejected here.
inline DressedLevel dressed_level(int n, const ModelParams& p) {
    if (n < 1)
        throw std::invalid_argument(
            "dressed_level: n must be >= 1 (the n = 0 level is the bare vacuum)");
    const double delta = p.delta();
    const double om = rabi_frequency(n, p);
    double a, b;
    if (om < 1e-14) {
        // g = 0 and Delta = 0: the sector is degenerate and any basis works.
        a = 1.0;
        b = 0.0;
    } else {
        a = std::sqrt((om + delta) / (2.0 * om));
        b = std::sqrt((om - delta) / (2.0 * om));
    }
    const double mid = n * p.omega + 0.5 * delta;
    return {n, a, b, mid + 0.5 * om, mid - 0.5 * om};
}

// Dressed amplitudes extended by the n = 0 convention (a, b) = (1, 0),
// E^- = 0, which reproduces the vacuum contribution of the thermal sums.
inline void dressed_amplitudes(int n, const ModelParams& p, double& a, double& b,
                               double& e_plus, double& e_minus) {
    if (n == 0) {
        a = 1.0;
        b = 0.0;
        e_plus = 0.0;  // carries zero weight because b_0 = 0
        e_minus = 0.0;
        return;
    }
    const DressedLevel d = dressed_level(n, p);
    a = d.a;
    b = d.b;
    e_plus = d.e_plus;
    e_minus = d.e_minus;
}

inline constexpr double crossing_tol = 1e-9;

// Coupling at which E_i^- drops below E_{i-1}^- (with E_0^- = 0). The i = 1
// value has the closed form sqrt(omega^2 + omega*Delta); larger crossings are
// roots of Omega_i(g) - Omega_{i-1}(g) = 2 omega, located by bisection.
inline double critical_coupling(int i, const ModelParams& p) {
    if (i < 1) throw std::invalid_argument("critical_coupling: index must be >= 1");
    const double delta = p.delta();
    const double g1_sq = p.omega * p.omega + p.omega * delta;
    if (!(g1_sq > 0.0))
        throw std::runtime_error("critical_coupling: no level crossing for omega0 <= 0");
    double g_prev = std::sqrt(g1_sq);
    for (int level = 2; level <= i; ++level) {
        const auto gap = [&](double g) {
            const ModelParams q = p.with_coupling(g);
            return rabi_frequency(level, q) - rabi_frequency(level - 1, q) - 2.0 * p.omega;
        };
        double lo = g_prev;
        double hi = g_prev * 4.0;
        int expand = 0;
        while (gap(hi) < 0.0) {
            lo = hi;
            hi *= 4.0;
            if (++expand > 60)
                throw std::runtime_error("critical_coupling: bracket search failed at level " +
                                         std::to_string(level));
        }
        while (hi - lo > 1e-12 * hi) {
            const double mid = 0.5 * (lo + hi);
            (gap(mid) < 0.0 ? lo : hi) = mid;
        }
        g_prev = 0.5 * (lo + hi);
    }
    return g_prev;
}

enum class GroundKind { unique, degenerate };

struct GroundLevel {
    GroundKind kind;
    int index;  // |Phi_index^-> is the ground state; 0 means |0,0>
};

// Index of the dressed level that is the ground state at coupling g.
// Returns the upper index with kind degenerate when g sits within
// crossing_tol of a crossing.
inline GroundLevel ground_level_index(double g, const ModelParams& p) {
    if (!(g >= 0.0)) throw std::invalid_argument("ground_level_index: g must be nonnegative");
    for (int i = 1; i <= 100000; ++i) {
        const double gi = critical_coupling(i, p);
        if (std::abs(g - gi) <= crossing_tol) return {GroundKind::degenerate, i};
        if (g < gi) return {GroundKind::unique, i - 1};
    }
    throw std::runtime_error("ground_level_index: coupling beyond supported crossing range");
}

}  // namespace jcm
