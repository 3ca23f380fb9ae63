#include "qnet/state.hpp"

#include <Eigen/Eigenvalues>

namespace qnet {

bool is_density_matrix(const MatrixXcd& rho) {
    if (rho.rows() != rho.cols()) return false;
    if (max_abs(rho - rho.adjoint()) > kHermTol) return false;
    if (std::abs(rho.trace().real() - 1.0) > kTraceTol ||
        std::abs(rho.trace().imag()) > kTraceTol)
        return false;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= kEigTol;
}

void require_density_matrix(const MatrixXcd& rho) {
    if (!is_density_matrix(rho))
        throw std::invalid_argument("not a valid density matrix");
}

double state_fidelity(const MatrixXcd& rho, const VectorXcd& psi) {
    if (rho.rows() != psi.size() || rho.cols() != psi.size())
        throw std::invalid_argument("state_fidelity: dimension mismatch");
    const Complex f = psi.dot(rho * psi);  // <psi| rho |psi>
    if (std::abs(f.imag()) >= 1e-12)
        throw std::runtime_error("state_fidelity: non-real overlap");
    return f.real();
}

}  // namespace qnet
