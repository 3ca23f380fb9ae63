#include "qnet/choi.hpp"

#include "qnet/state.hpp"

namespace qnet {

Matrix4cd choi_state(const NoiseChannel& channel, double t) {
    const Vector4cd phi = bell_phi_plus();
    const Matrix4cd rho = phi * phi.adjoint();
    Matrix4cd out = Matrix4cd::Zero();
    for (const Matrix2cd& k : kraus_operators(channel, t)) {
        const Matrix4cd kk = kron(k, Matrix2cd::Identity());
        out += kk * rho * kk.adjoint();
    }
    return out;
}

Matrix4cd partial_transpose(const Matrix4cd& m) {
    Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = m.block<2, 2>(2 * i, 2 * j).transpose();
    return out;
}

Matrix4cd symmetric_projector() {
    const Vector4cd phi = bell_phi_plus();
    Matrix4cd out = Matrix4cd::Zero();
    const Matrix2cd id = Matrix2cd::Identity();
    const Matrix2cd x = pauli_x(), z = pauli_z();
    for (auto [a, b] : {std::pair{0, 0}, {0, 1}, {1, 0}}) {
        Matrix2cd corr = id;
        if (a) corr = x * corr;
        if (b) corr = corr * z;  // X^a Z^b
        const Vector4cd v = kron(id, corr) * phi;
        out += v * v.adjoint();
    }
    return out;
}

double gate_fidelity_choi_oracle(const NoiseChannel& channel, double t) {
    constexpr double d_a = 2.0, d_sym = 3.0;
    const Matrix4cd tau = choi_state(channel, t);
    return (d_a / d_sym) *
           (symmetric_projector() * partial_transpose(tau)).trace().real();
}

}  // namespace qnet
