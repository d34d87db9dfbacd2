// states.hpp -- total, reduced and product states on the truncated
// qubit (x) Fock space, including the thermal Gibbs state of the full
// Hamiltonian. Basis ordering is {|0,0>, |1,0>, |0,1>, |1,1>, |0,2>, ...},
// i.e. basis index 2n + alpha for |alpha, n>.

#pragma once

#include <cmath>
#include <complex>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jcm/model.hpp"
#include "jcm/numerics.hpp"

namespace jcm {

inline constexpr double default_tail_tol = 1e-12;
inline constexpr int gibbs_hard_cap = 4096;

// 2x2 density operator of the open system.
struct QubitState {
    double rho11 = 0.0;
    double rho00 = 1.0;
    complex rho10{0.0, 0.0};

    void validate(double tol = 1e-12) const {
        if (std::abs(rho11 + rho00 - 1.0) > tol)
            throw std::invalid_argument("QubitState: trace differs from 1 by " +
                                        std::to_string(rho11 + rho00 - 1.0));
        if (rho11 < -tol || rho00 < -tol)
            throw std::invalid_argument("QubitState: negative population");
        if (std::norm(rho10) > rho11 * rho00 + tol)
            throw std::invalid_argument("QubitState: coherence violates positivity");
    }
};

// Density operator of the truncated field mode. General coherences are
// admitted so that the type is closed under partial traces of arbitrary
// total states.
class FieldState {
public:
    explicit FieldState(int n_max) : n_max_(n_max) {
        if (n_max < 0) throw std::invalid_argument("FieldState: n_max must be >= 0");
        c_.assign(static_cast<std::size_t>(n_max + 1) * (n_max + 1), complex{});
    }

    // Diagonal mixture of number states; weights must sum to ~1.
    static FieldState number_mixture(const std::vector<std::pair<int, double>>& weights,
                                     int n_max) {
        FieldState f(n_max);
        double tr = 0.0;
        for (const auto& [n, w] : weights) {
            if (n < 0 || n > n_max)
                throw std::invalid_argument("FieldState: number state outside truncation");
            if (w < 0.0) throw std::invalid_argument("FieldState: negative mixture weight");
            f(n, n) += w;
            tr += w;
        }
        if (std::abs(tr - 1.0) > 1e-12)
            throw std::invalid_argument("FieldState: mixture weights must sum to 1");
        return f;
    }

    int n_max() const { return n_max_; }

    complex& operator()(int n, int m) { return c_[static_cast<std::size_t>(n) * (n_max_ + 1) + m]; }
    const complex& operator()(int n, int m) const {
        return c_[static_cast<std::size_t>(n) * (n_max_ + 1) + m];
    }

    double trace_real() const {
        double t = 0.0;
        for (int n = 0; n <= n_max_; ++n) t += (*this)(n, n).real();
        return t;
    }

private:
    int n_max_;
    std::vector<complex> c_;
};

// Density operator of qubit (x) Fock truncated at n_max. Stored dense over
// the 2(n_max+1)-dimensional ordered basis; coefficient (alpha,n,beta,m) is
// <alpha,n| rho |beta,m>.
class TotalState {
public:
    TotalState(int n_max, double truncation_tol = default_tail_tol)
        : n_max_(n_max), truncation_tol_(truncation_tol), m_(2 * (n_max + 1)) {
        if (n_max < 0) throw std::invalid_argument("TotalState: n_max must be >= 0");
    }

    static int index(int alpha, int n) { return 2 * n + alpha; }

    // Wraps a dense matrix as a state; checks Hermiticity and unit trace,
    // then stores the symmetrized part.
    static TotalState from_matrix(const ComplexMatrix& m, double truncation_tol = default_tail_tol,
                                  double trace_tol = 1e-9) {
        if (m.dim() % 2 != 0)
            throw std::invalid_argument("TotalState: matrix dimension must be even");
        const HermitianMatrix h(m);
        if (std::abs(h.matrix().trace().real() - 1.0) > trace_tol)
            throw std::invalid_argument("TotalState: trace differs from 1 by " +
                                        std::to_string(h.matrix().trace().real() - 1.0));
        TotalState s(m.dim() / 2 - 1, truncation_tol);
        s.m_ = h.matrix();
        return s;
    }

    int n_max() const { return n_max_; }
    int dim() const { return m_.dim(); }
    double truncation_tol() const { return truncation_tol_; }

    // Zero outside the retained block, so series over coefficients terminate.
    complex coeff(int alpha, int n, int beta, int m) const {
        if (n < 0 || m < 0 || n > n_max_ || m > n_max_) return complex{};
        return m_(index(alpha, n), index(beta, m));
    }

    complex& at(int alpha, int n, int beta, int m) { return m_(index(alpha, n), index(beta, m)); }

    const ComplexMatrix& matrix() const { return m_; }

    double trace_real() const { return m_.trace().real(); }

private:
    int n_max_;
    double truncation_tol_;
    ComplexMatrix m_;
};

// Positivity check on demand: smallest eigenvalue must not drop below
// -10 * truncation_tol.
inline void assert_physical(const TotalState& rho) {
    const std::vector<double> ev = hermitian_eigenvalues(HermitianMatrix(rho.matrix()));
    if (ev.front() < -10.0 * rho.truncation_tol())
        throw std::runtime_error("TotalState: negative eigenvalue " + std::to_string(ev.front()));
}

// Thermal weights and matrix elements of the Gibbs state in closed form,
// shared by the state constructor, the correlation formula and the
// trajectory formula so that all three see the same truncation.
struct GibbsData {
    int n_max = 0;
    std::vector<double> diag00;      // rho^{nn}_{00}, n = 0..n_max
    std::vector<double> diag11;      // rho^{nn}_{11}, n = 0..n_max
    std::vector<double> coh10;       // rho^{n,n+1}_{10}, n = 0..n_max-1
    std::vector<double> field_diag;  // rho^{nn} = diag00 + diag11
    double rho00 = 1.0;              // qubit marginal ground population
    double rho11 = 0.0;
};

inline GibbsData gibbs_data(const ModelParams& p, double beta, double tail_tol = default_tail_tol) {
    if (!(beta > 0.0)) throw std::invalid_argument("gibbs_data: beta must be positive");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("gibbs_data: tail_tol must be positive");

    // Locate the bottom of the E_n^- branch so that Boltzmann factors can be
    // taken relative to the true ground energy (E_n^- can be far below zero
    // at strong coupling, which would overflow exp otherwise).
    double e_shift = 0.0;
    {
        double prev = 0.0;  // E_0^-
        for (int n = 1; n <= gibbs_hard_cap + 2; ++n) {
            double a, b, ep, em;
            dressed_amplitudes(n, p, a, b, ep, em);
            e_shift = std::min(e_shift, em);
            if (em > prev && n > 1) break;
            prev = em;
        }
    }

    const auto weights = [&](int n, double& wp, double& wm, double& a, double& b, double& em) {
        double ep;
        dressed_amplitudes(n, p, a, b, ep, em);
        wp = (n == 0) ? 0.0 : std::exp(-beta * (ep - e_shift));
        wm = std::exp(-beta * (em - e_shift));
    };

    GibbsData gd;
    std::vector<double> wplus, wminus, aa, bb;
    double z = 0.0;
    int n_max = -1;
    for (int n = 0;; ++n) {
        if (n > gibbs_hard_cap)
            throw std::runtime_error(
                "gibbs_data: truncation demand exceeds the hard cap; use a larger tail_tol or a "
                "larger beta");
        double wp, wm, a, b, em;
        weights(n, wp, wm, a, b, em);
        wplus.push_back(wp);
        wminus.push_back(wm);
        aa.push_back(a);
        bb.push_back(b);
        // diagonal weight carried by the two retained basis vectors |0,n>, |1,n>
        double wp1, wm1, a1, b1, em1;
        weights(n + 1, wp1, wm1, a1, b1, em1);
        z += wp * b * b + wm * a * a + wp1 * a1 * a1 + wm1 * b1 * b1;
        // The E_n^- branch is convex in n, so once it turns upward the
        // remaining tail decays geometrically and the stop test is safe.
        const bool past_min = em1 >= em && (n >= 1 || em1 >= 0.0);
        if (past_min && (wp1 + wm1) < tail_tol * z) {
            wplus.push_back(wp1);
            wminus.push_back(wm1);
            aa.push_back(a1);
            bb.push_back(b1);
            n_max = n;
            break;
        }
    }

    gd.n_max = n_max;
    gd.diag00.resize(n_max + 1);
    gd.diag11.resize(n_max + 1);
    gd.coh10.resize(n_max);
    gd.field_diag.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        gd.diag00[n] = (wplus[n] * bb[n] * bb[n] + wminus[n] * aa[n] * aa[n]) / z;
        gd.diag11[n] = (wplus[n + 1] * aa[n + 1] * aa[n + 1] + wminus[n + 1] * bb[n + 1] * bb[n + 1]) / z;
        if (n < n_max)
            gd.coh10[n] = (wplus[n + 1] - wminus[n + 1]) * aa[n + 1] * bb[n + 1] / z;
    }
    // Renormalize the retained block exactly.
    double tr = 0.0;
    for (int n = 0; n <= n_max; ++n) tr += gd.diag00[n] + gd.diag11[n];
    gd.rho00 = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        gd.diag00[n] /= tr;
        gd.diag11[n] /= tr;
        gd.field_diag[n] = gd.diag00[n] + gd.diag11[n];
        if (n < n_max) gd.coh10[n] /= tr;
        gd.rho00 += gd.diag00[n];
    }
    gd.rho11 = 1.0 - gd.rho00;
    return gd;
}

// exp(-beta H)/Z on the truncated space. n_max is chosen so that the next
// excitation doublet would carry relative weight below tail_tol, and the
// retained block is renormalized to unit trace.
inline TotalState gibbs_state(const ModelParams& p, double beta,
                              double tail_tol = default_tail_tol) {
    const GibbsData gd = gibbs_data(p, beta, tail_tol);
    TotalState s(gd.n_max, tail_tol);
    for (int n = 0; n <= gd.n_max; ++n) {
        s.at(0, n, 0, n) = gd.diag00[n];
        s.at(1, n, 1, n) = gd.diag11[n];
        if (n < gd.n_max) {
            s.at(1, n, 0, n + 1) = gd.coh10[n];
            s.at(0, n + 1, 1, n) = gd.coh10[n];
        }
    }
    return s;
}

// Partial traces over field and qubit, respectively.
inline std::pair<QubitState, FieldState> marginals(const TotalState& rho) {
    QubitState q;
    q.rho11 = 0.0;
    q.rho00 = 0.0;
    q.rho10 = complex{};
    FieldState f(rho.n_max());
    for (int n = 0; n <= rho.n_max(); ++n) {
        q.rho11 += rho.coeff(1, n, 1, n).real();
        q.rho00 += rho.coeff(0, n, 0, n).real();
        q.rho10 += rho.coeff(1, n, 0, n);
        for (int m = 0; m <= rho.n_max(); ++m)
            f(n, m) = rho.coeff(0, n, 0, m) + rho.coeff(1, n, 1, m);
    }
    return {q, f};
}

// rho_S (x) rho_E from a qubit and a field state.
inline TotalState product_state(const QubitState& q, const FieldState& f) {
    TotalState s(f.n_max());
    const complex qs[2][2] = {{complex{q.rho00, 0.0}, std::conj(q.rho10)},
                              {q.rho10, complex{q.rho11, 0.0}}};
    for (int n = 0; n <= f.n_max(); ++n)
        for (int m = 0; m <= f.n_max(); ++m) {
            const complex fe = f(n, m);
            if (fe == complex{}) continue;
            for (int alpha = 0; alpha < 2; ++alpha)
                for (int beta = 0; beta < 2; ++beta)
                    s.at(alpha, n, beta, m) = qs[alpha][beta] * fe;
        }
    return s;
}

// Tensor product of the marginals of rho, on the same truncated space.
inline TotalState product_of_marginals(const TotalState& rho) {
    const auto [q, f] = marginals(rho);
    TotalState s = product_state(q, f);
    // keep the original truncation contract
    return TotalState::from_matrix(s.matrix(), rho.truncation_tol(), 1e-6);
}

// Rank-one projector onto alpha|0,n> + beta|1,m>, truncated one level above
// the support so that the evolution of the state stays exact.
inline TotalState pure_entangled(complex alpha, complex beta_amp, int n, int m) {
    if (n < 0 || m < 0) throw std::invalid_argument("pure_entangled: n, m must be nonnegative");
    const double norm2 = std::norm(alpha) + std::norm(beta_amp);
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("pure_entangled: amplitudes must be normalized, |.|^2 = " +
                                    std::to_string(norm2));
    const int n_max = std::max(n, m) + 1;
    TotalState s(n_max);
    s.at(0, n, 0, n) = std::norm(alpha);
    s.at(1, m, 1, m) = std::norm(beta_amp);
    s.at(0, n, 1, m) = alpha * std::conj(beta_amp);
    s.at(1, m, 0, n) = beta_amp * std::conj(alpha);
    return s;
}

// --- plain-text matrix dump -------------------------------------------------
//
// Header line: "n_max truncation_tol", then one row "alpha n beta m re im"
// per coefficient. Used for oracle cross-checks and debugging.

inline void write_text(const TotalState& rho, std::ostream& os) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d %.17g\n", rho.n_max(), rho.truncation_tol());
    os << buf;
    for (int n = 0; n <= rho.n_max(); ++n)
        for (int alpha = 0; alpha < 2; ++alpha)
            for (int m = 0; m <= rho.n_max(); ++m)
                for (int beta = 0; beta < 2; ++beta) {
                    const complex v = rho.coeff(alpha, n, beta, m);
                    std::snprintf(buf, sizeof(buf), "%d %d %d %d %.17g %.17g\n", alpha, n, beta, m,
                                  v.real(), v.imag());
                    os << buf;
                }
}

inline TotalState read_text(std::istream& is) {
    int n_max = -1;
    double tol = 0.0;
    if (!(is >> n_max >> tol)) throw std::runtime_error("TotalState dump: malformed header");
    if (n_max < 0 || !(tol > 0.0)) throw std::runtime_error("TotalState dump: invalid header");
    ComplexMatrix m(2 * (n_max + 1));
    int alpha, n, beta, mm;
    double re, im;
    while (is >> alpha >> n >> beta >> mm >> re >> im) {
        if (alpha < 0 || alpha > 1 || beta < 0 || beta > 1 || n < 0 || n > n_max || mm < 0 ||
            mm > n_max)
            throw std::runtime_error("TotalState dump: row outside the declared truncation");
        m(TotalState::index(alpha, n), TotalState::index(beta, mm)) = complex{re, im};
    }
    if (!is.eof()) throw std::runtime_error("TotalState dump: malformed row");
    return TotalState::from_matrix(m, tol);
}

}  // namespace jcm
