#ifndef QNET_CHOI_HPP
#define QNET_CHOI_HPP

#include "qnet/channel.hpp"

namespace qnet {

/// Choi state (N (x) I)(|Phi><Phi|) with |Phi> = (|00>+|11>)/sqrt(2).
Matrix4cd choi_state(const NoiseChannel& channel, double t);

/// Transpose of the second tensor factor. Involutive.
Matrix4cd partial_transpose(const Matrix4cd& m);

/// Projector onto the two-qubit symmetric subspace, rank 3.
/// Built from the Bell states |Phi_ab> = (I (x) X^a Z^b)|Phi>, ab in {00,01,10}.
Matrix4cd symmetric_projector();

/// (d_A/d_sym) Tr[Pi_sym choi^Gamma] with d_A = 2, d_sym = 3.
/// Independent oracle for gate_fidelity_closed.
double gate_fidelity_choi_oracle(const NoiseChannel& channel, double t);

}  // namespace qnet

#endif
