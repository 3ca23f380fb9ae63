#ifndef QNET_LINALG_HPP
#define QNET_LINALG_HPP

#include <Eigen/Dense>
#include <complex>

namespace qnet {

using Complex = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::Matrix3d;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::Vector2cd;
using Eigen::Vector4cd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Kronecker product of two matrix expressions.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                              a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

enum class Pauli { X, Y, Z };

inline Matrix2cd pauli(Pauli kind) {
    Matrix2cd m;
    switch (kind) {
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

inline Matrix2cd pauli_x() { return pauli(Pauli::X); }
inline Matrix2cd pauli_y() { return pauli(Pauli::Y); }
inline Matrix2cd pauli_z() { return pauli(Pauli::Z); }

inline Matrix2cd rot_x(double theta) {
    Matrix2cd m;
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, Complex(0, -s), Complex(0, -s), c;
    return m;
}

inline Matrix2cd rot_y(double theta) {
    Matrix2cd m;
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -s, s, c;
    return m;
}

inline Matrix2cd rot_z(double theta) {
    Matrix2cd m;
    m << std::exp(Complex(0, -theta / 2)), 0, 0, std::exp(Complex(0, theta / 2));
    return m;
}

/// Controlled rotation |0><0| (x) R(theta) + |1><1| (x) R(-theta), control first.
inline Matrix4cd controlled_rot(Pauli axis, double theta) {
    const Matrix2cd plus = axis == Pauli::X ? rot_x(theta) : rot_y(theta);
    const Matrix2cd minus = axis == Pauli::X ? rot_x(-theta) : rot_y(-theta);
    Matrix4cd m = Matrix4cd::Zero();
    m.topLeftCorner<2, 2>() = plus;
    m.bottomRightCorner<2, 2>() = minus;
    return m;
}

inline Matrix4cd controlled_rot_x(double theta) { return controlled_rot(Pauli::X, theta); }
inline Matrix4cd controlled_rot_y(double theta) { return controlled_rot(Pauli::Y, theta); }

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& g, double tol = 1e-12) {
    return max_abs((g.adjoint() * g).eval() -
                   Eigen::MatrixXcd::Identity(g.cols(), g.cols())) <= tol;
}

}  // namespace qnet

#endif
