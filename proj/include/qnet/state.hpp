#ifndef QNET_STATE_HPP
#define QNET_STATE_HPP

#include <random>
#include <stdexcept>

#include "qnet/linalg.hpp"

namespace qnet {

// Density-matrix validity tolerances used throughout.
constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigTol = -1e-10;

/// Hermitian within tol, trace 1 within tol, eigenvalues >= -1e-10.
bool is_density_matrix(const MatrixXcd& rho);

void require_density_matrix(const MatrixXcd& rho);

/// <psi| rho |psi>. Throws on dimension mismatch or non-negligible imaginary part.
double state_fidelity(const MatrixXcd& rho, const VectorXcd& psi);

inline MatrixXcd projector(const VectorXcd& psi) { return psi * psi.adjoint(); }

/// (|00> + |11>)/sqrt(2)
inline Vector4cd bell_phi_plus() {
    Vector4cd v = Vector4cd::Zero();
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return v;
}

/// Uniform (Haar) random pure state: normalized complex Gaussian vector.
template <typename Rng>
VectorXcd haar_random_state(int dim, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
    return v / v.norm();
}

/// Haar-ish random unitary via QR of a complex Gaussian matrix.
template <typename Rng>
MatrixXcd random_unitary(int dim, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    MatrixXcd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<MatrixXcd> qr(a);
    MatrixXcd q = qr.householderQ();
    MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < dim; ++i) {
        Complex d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

}  // namespace qnet

#endif
