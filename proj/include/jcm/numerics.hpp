// numerics.hpp -- dense complex linear algebra kernel used across the
// library: Hermitian eigenvalues via a cyclic Jacobi sweep with complex
// plane rotations, trace norms, and functions of Hermitian operators.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jcm {

using complex = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("ComplexMatrix: dimension must be >= 1");
        a_.assign(static_cast<std::size_t>(dim) * dim, complex{});
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const complex& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * dim_ + j];
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    complex trace() const {
        complex t{};
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const complex& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const complex& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same_dim(a, b);
        ComplexMatrix c(a.dim_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) c.a_[k] = a.a_[k] + b.a_[k];
        return c;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same_dim(a, b);
        ComplexMatrix c(a.dim_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) c.a_[k] = a.a_[k] - b.a_[k];
        return c;
    }

    friend ComplexMatrix operator*(const complex& s, const ComplexMatrix& a) {
        ComplexMatrix c(a.dim_);
        for (std::size_t k = 0; k < a.a_.size(); ++k) c.a_[k] = s * a.a_[k];
        return c;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        check_same_dim(a, b);
        const int n = a.dim_;
        ComplexMatrix c(n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                const complex aik = a(i, k);
                if (aik == complex{}) continue;
                for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

private:
    static void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.dim_ != b.dim_)
            throw std::invalid_argument("ComplexMatrix: dimension mismatch (" +
                                        std::to_string(a.dim_) + " vs " + std::to_string(b.dim_) +
                                        ")");
    }

    int dim_ = 0;
    std::vector<complex> a_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).max_abs();
}

inline constexpr double default_hermiticity_tol = 1e-10;

// Self-adjoint matrix. Construction checks Hermiticity relative to the
// largest entry and stores the symmetrized part (M + M^dagger)/2 so that
// rounding from upstream arithmetic cannot leak into the eigensolver.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const ComplexMatrix& m, double rel_tol = default_hermiticity_tol)
        : mat_(m.dim()) {
        const int n = m.dim();
        const double scale = m.max_abs();
        double worst = 0.0;
        int wi = 0, wj = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const double dev = std::abs(m(i, j) - std::conj(m(j, i)));
                if (dev > worst) {
                    worst = dev;
                    wi = i;
                    wj = j;
                }
            }
        }
        if (scale > 0.0 && worst > rel_tol * scale) {
            std::ostringstream os;
            os << "HermitianMatrix: entries (" << wi << "," << wj << ") and (" << wj << "," << wi
               << ") differ from conjugates by " << worst << " (allowed " << rel_tol * scale
               << ")";
            throw std::invalid_argument(os.str());
        }
        for (int i = 0; i < n; ++i) {
            mat_(i, i) = complex{m(i, i).real(), 0.0};
            for (int j = i + 1; j < n; ++j) {
                const complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
                mat_(i, j) = v;
                mat_(j, i) = std::conj(v);
            }
        }
    }

    int dim() const { return mat_.dim(); }
    const ComplexMatrix& matrix() const { return mat_; }
    const complex& operator()(int i, int j) const { return mat_(i, j); }

private:
    ComplexMatrix mat_;
};

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // k-th column is the eigenvector of values[k]
};

namespace detail {

inline double offdiag_norm_sq(const ComplexMatrix& a) {
    const int n = a.dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return s;
}

// One two-sided complex Jacobi rotation annihilating a(p,q).
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix* v, int p, int q) {
    const complex apq = a(p, q);
    const double abs_apq = std::abs(apq);
    if (abs_apq == 0.0) return;
    const complex u = apq / abs_apq;  // phase of the pivot
    const double cot2 = (a(q, q).real() - a(p, p).real()) / (2.0 * abs_apq);
    double t;
    if (std::abs(cot2) > 1e15) {
        t = 1.0 / (2.0 * cot2);
    } else {
        t = 1.0 / (std::abs(cot2) + std::sqrt(1.0 + cot2 * cot2));
        if (cot2 < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const int n = a.dim();
    // A <- A U with U(p,p)=c, U(p,q)=s*u, U(q,p)=-s*conj(u), U(q,q)=c
    for (int r = 0; r < n; ++r) {
        const complex arp = a(r, p);
        const complex arq = a(r, q);
        a(r, p) = c * arp - s * std::conj(u) * arq;
        a(r, q) = s * u * arp + c * arq;
    }
    // A <- U^dagger A
    for (int r = 0; r < n; ++r) {
        const complex apr = a(p, r);
        const complex aqr = a(q, r);
        a(p, r) = c * apr - s * u * aqr;
        a(q, r) = s * std::conj(u) * apr + c * aqr;
    }
    a(p, q) = complex{};
    a(q, p) = complex{};
    a(p, p) = complex{a(p, p).real(), 0.0};
    a(q, q) = complex{a(q, q).real(), 0.0};
    if (v != nullptr) {
        for (int r = 0; r < n; ++r) {
            const complex vrp = (*v)(r, p);
            const complex vrq = (*v)(r, q);
            (*v)(r, p) = c * vrp - s * std::conj(u) * vrq;
            (*v)(r, q) = s * u * vrp + c * vrq;
        }
    }
}

}  // namespace detail

// Cyclic Jacobi diagonalization. Sweeps run until the off-diagonal
// Frobenius mass drops below tol * ||M||_F.
inline EigenSystem hermitian_eigensystem(const HermitianMatrix& h, double tol = 1e-13,
                                         bool want_vectors = true) {
    if (tol <= 0.0) throw std::invalid_argument("hermitian_eigensystem: tol must be positive");
    const int n = h.dim();
    ComplexMatrix a = h.matrix();
    ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix(1);
    const double norm = a.frobenius_norm();
    EigenSystem out;
    out.values.assign(n, 0.0);

    if (norm > 0.0) {
        const double thresh_sq = (tol * norm) * (tol * norm);
        const int max_sweeps = 100;
        int sweep = 0;
        while (detail::offdiag_norm_sq(a) > thresh_sq) {
            if (++sweep > max_sweeps)
                throw std::runtime_error("hermitian_eigensystem: Jacobi failed to converge in " +
                                         std::to_string(max_sweeps) + " sweeps");
            for (int p = 0; p < n - 1; ++p)
                for (int q = p + 1; q < n; ++q)
                    detail::jacobi_rotate(a, want_vectors ? &v : nullptr, p, q);
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    for (int k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]).real();
    if (want_vectors) {
        out.vectors = ComplexMatrix(n);
        for (int k = 0; k < n; ++k)
            for (int r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

// All eigenvalues in ascending order, each accurate to tol * ||M||.
inline std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m, double tol = 1e-13) {
    return hermitian_eigensystem(m, tol, /*want_vectors=*/false).values;
}

// Trace norm of a self-adjoint operator: the sum of the absolute eigenvalues.
inline double trace_norm_hermitian(const HermitianMatrix& m) {
    const std::vector<double> ev = hermitian_eigenvalues(m);
    double s = 0.0;
    for (double x : ev) s += std::abs(x);
    return s;
}

// V f(D) V^dagger from the eigendecomposition M = V D V^dagger.
inline ComplexMatrix hermitian_function(const HermitianMatrix& m,
                                        const std::function<complex(double)>& f) {
    const EigenSystem es = hermitian_eigensystem(m);
    const int n = m.dim();
    ComplexMatrix out(n);
    for (int k = 0; k < n; ++k) {
        const complex fk = f(es.values[k]);
        if (fk == complex{}) continue;
        for (int i = 0; i < n; ++i) {
            const complex w = fk * es.vectors(i, k);
            for (int j = 0; j < n; ++j) out(i, j) += w * std::conj(es.vectors(j, k));
        }
    }
    return out;
}

}  // namespace jcm
