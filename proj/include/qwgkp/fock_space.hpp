#pragma once

// Dense operators on a truncated Fock space of dimension D.  Exponentials of
// anti-Hermitian generators are evaluated by diagonalizing the Hermitian part,
// so every operator built here is exactly unitary on the truncated space; the
// truncation shows up only when comparing against continuum expectations.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace qwgkp {

struct FockOperator {
    int dim = 0;
    Eigen::MatrixXcd m;
};

/// Annihilation operator: a|n> = sqrt(n)|n-1>.
inline Eigen::MatrixXcd fock_ladder(int dim) {
    if (dim < 2) throw std::invalid_argument("fock_ladder: dim must be >= 2");
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

/// Photon-number operator diag(0, 1, ..., dim-1).
inline Eigen::MatrixXcd fock_number(int dim) {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

/// Position quadrature x = (a + a^dag)/sqrt(2)  (hbar = 1 convention).
inline Eigen::MatrixXcd fock_position(int dim) {
    const Eigen::MatrixXcd a = fock_ladder(dim);
    return (a + a.adjoint()) / std::numbers::sqrt2;
}

inline Eigen::VectorXcd fock_vacuum(int dim) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(0) = 1.0;
    return v;
}

/// exp(A) for anti-Hermitian A via the spectral decomposition of -iA.
inline Eigen::MatrixXcd exp_antihermitian(const Eigen::MatrixXcd& A) {
    if ((A + A.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + A.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("exp_antihermitian: generator is not anti-Hermitian");
    const Eigen::MatrixXcd H = std::complex<double>(0.0, -1.0) * A;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    const Eigen::VectorXd lam = es.eigenvalues();
    Eigen::VectorXcd phases(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k)
        phases(k) = std::exp(std::complex<double>(0.0, lam(k)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// D(xi) = exp{xi a^dag - xi* a} on the truncated space.
inline FockOperator fock_displacement(std::complex<double> xi, int dim) {
    const Eigen::MatrixXcd a = fock_ladder(dim);
    return {dim, exp_antihermitian(xi * a.adjoint() - std::conj(xi) * a)};
}

/// S(r) = exp{(r/2)(a^2 - a^dag^2)} on the truncated space.
inline FockOperator fock_squeeze(double r, int dim) {
    const Eigen::MatrixXcd a = fock_ladder(dim);
    return {dim, exp_antihermitian(0.5 * r * (a * a - (a * a).adjoint()))};
}

/// Kronecker product, row-major blocks: (A x B)(i*rb + k, j*cb + l) = A_ij B_kl.
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

inline Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

/// Qubit-conditioned phase-space rotation on Fock (x) qubit:
/// exp(-i angle n (x) Z) = e^{-i angle n}(x)|0><0| + e^{+i angle n}(x)|1><1|.
/// At angle = pi/2 the branches are the square roots of the parity operator.
inline Eigen::MatrixXcd conditional_rotation(double angle, int dim) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
    for (int k = 0; k < dim; ++k) {
        out(2 * k, 2 * k) = std::exp(std::complex<double>(0.0, -angle * k));
        out(2 * k + 1, 2 * k + 1) = std::exp(std::complex<double>(0.0, +angle * k));
    }
    return out;
}

/// Largest singular value.
inline double spectral_norm(const Eigen::MatrixXcd& M) {
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(M).singularValues()(0);
}

/// Projector onto Fock levels below dim - margin, tensored with the qubit.
inline Eigen::MatrixXcd low_photon_projector(int dim, int margin) {
    if (margin < 0 || margin >= dim)
        throw std::invalid_argument("low_photon_projector: need 0 <= margin < dim");
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
    for (int k = 0; k < dim - margin; ++k) {
        p(2 * k, 2 * k) = 1.0;
        p(2 * k + 1, 2 * k + 1) = 1.0;
    }
    return p;
}

}  // namespace qwgkp
