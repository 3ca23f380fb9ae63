#ifndef QNET_CHANNEL_HPP
#define QNET_CHANNEL_HPP

#include <vector>

#include "qnet/linalg.hpp"

namespace qnet {

/// Memory lifetimes in seconds. T drives depolarizing, T1 damping, T2 dephasing.
struct MemoryParams {
    double T = 1.0;
    double T1 = 1.0;
    double T2 = 1.0;

    void validate(bool composite = false) const;
};

enum class ChannelKind { Depolarizing, Dephasing, AmplitudeDamping, Composite };

struct NoiseChannel {
    ChannelKind kind;
    MemoryParams memory;
};

// Time-dependent channel parameters:
//   depolarizing p = (1 - e^{-t/T})/4
//   dephasing    p = (1 - e^{-t/T2})/2
//   damping      gamma = 1 - e^{-t/T1}
//   composite    gamma as above, dephasing p = (1 - e^{-t(1/T2 - 1/2T1)})/2
//   (the composite dephasing rate is reduced because damping already dephases)
double depolarizing_prob(double t, double T);
double dephasing_prob(double t, double T2);
double damping_gamma(double t, double T1);
double composite_dephasing_prob(double t, double T1, double T2);

/// Kraus operators of the channel at elapsed time t (d = 2 only).
std::vector<Matrix2cd> kraus_operators(const NoiseChannel& channel, double t);

/// Channel action on a 2x2 operator (linear extension; rho need not be a state).
Matrix2cd apply_channel_op(const NoiseChannel& channel, double t, const Matrix2cd& m);

/// Channel action on a single-qubit density matrix. Validates input and output.
Matrix2cd apply_channel(const NoiseChannel& channel, double t, const Matrix2cd& rho);

/// Closed-form average gate fidelity F(N_t, G) (gate-independent):
///   depolarizing (1 + e^{-t/T})/2
///   dephasing    (2 + e^{-t/T2})/3
///   damping      (3 + e^{-t/T1} + 2 e^{-t/2T1})/6
///   composite    (3 + e^{-t/T1} + 2 e^{-t/T2})/6
double gate_fidelity_closed(const NoiseChannel& channel, double t);

/// 1/2 + (1/12) sum_{s in {X,Y,Z}} Tr[s N_t(s)]; cross-check route.
double gate_fidelity_bowdrey(const NoiseChannel& channel, double t);

/// F_e = ((d+1) F_avg - 1)/d
double ent_fidelity_from_gate(double f_avg, int d);
double gate_fidelity_from_ent(double f_e, int d);

/// F(channel, t) written as constant + sum_k weight_k * e^{-rate_k t}.
struct FidelityDecay {
    double constant;
    std::vector<std::pair<double, double>> terms;  // (weight, rate)

    double eval(double t) const;
};

FidelityDecay fidelity_decay(const NoiseChannel& channel);

}  // namespace qnet

#endif
