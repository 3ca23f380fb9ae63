#include "qnet/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "qnet/state.hpp"

namespace qnet {

void MemoryParams::validate(bool composite) const {
    if (!(T > 0) || !(T1 > 0) || !(T2 > 0))
        throw std::invalid_argument("MemoryParams: lifetimes must be positive");
    if (composite && !(T2 <= 2 * T1))
        throw std::invalid_argument("MemoryParams: composite channel needs T2 <= 2*T1");
}

namespace {

void require_time(double t) {
    if (!(t >= 0)) throw std::invalid_argument("channel: t must be >= 0");
}

}  // namespace

double depolarizing_prob(double t, double T) { return 0.25 * (1.0 - std::exp(-t / T)); }

double dephasing_prob(double t, double T2) { return 0.5 * (1.0 - std::exp(-t / T2)); }

double damping_gamma(double t, double T1) { return 1.0 - std::exp(-t / T1); }

double composite_dephasing_prob(double t, double T1, double T2) {
    return 0.5 * (1.0 - std::exp(-t * (1.0 / T2 - 1.0 / (2.0 * T1))));
}

std::vector<Matrix2cd> kraus_operators(const NoiseChannel& channel, double t) {
    require_time(t);
    const MemoryParams& m = channel.memory;
    const Matrix2cd id = Matrix2cd::Identity();
    std::vector<Matrix2cd> ks;
    switch (channel.kind) {
        case ChannelKind::Depolarizing: {
            m.validate();
            const double p = depolarizing_prob(t, m.T);
            ks.push_back(std::sqrt(1.0 - 3.0 * p) * id);
            ks.push_back(std::sqrt(p) * pauli_x());
            ks.push_back(std::sqrt(p) * pauli_y());
            ks.push_back(std::sqrt(p) * pauli_z());
            break;
        }
        case ChannelKind::Dephasing: {
            m.validate();
            const double p = dephasing_prob(t, m.T2);
            ks.push_back(std::sqrt(1.0 - p) * id);
            ks.push_back(std::sqrt(p) * pauli_z());
            break;
        }
        case ChannelKind::AmplitudeDamping: {
            m.validate();
            const double g = damping_gamma(t, m.T1);
            Matrix2cd m0, m1;
            m0 << 1, 0, 0, std::sqrt(1.0 - g);
            m1 << 0, std::sqrt(g), 0, 0;
            ks.push_back(m0);
            ks.push_back(m1);
            break;
        }
        case ChannelKind::Composite: {
            // dephasing after damping; the dephasing rate is reduced by the
            // damping channel's own contribution to coherence decay
            m.validate(true);
            const double g = damping_gamma(t, m.T1);
            const double p = composite_dephasing_prob(t, m.T1, m.T2);
            Matrix2cd m0, m1;
            m0 << 1, 0, 0, std::sqrt(1.0 - g);
            m1 << 0, std::sqrt(g), 0, 0;
            const Matrix2cd z = pauli_z();
            ks.push_back(std::sqrt(1.0 - p) * m0);
            ks.push_back(std::sqrt(1.0 - p) * m1);
            ks.push_back(std::sqrt(p) * (z * m0));
            ks.push_back(std::sqrt(p) * (z * m1));
            break;
        }
    }
    return ks;
}

Matrix2cd apply_channel_op(const NoiseChannel& channel, double t, const Matrix2cd& m) {
    Matrix2cd out = Matrix2cd::Zero();
    for (const Matrix2cd& k : kraus_operators(channel, t)) out += k * m * k.adjoint();
    return out;
}

Matrix2cd apply_channel(const NoiseChannel& channel, double t, const Matrix2cd& rho) {
    require_time(t);
    require_density_matrix(rho);
    Matrix2cd out = apply_channel_op(channel, t, rho);
    require_density_matrix(out);
    return out;
}

FidelityDecay fidelity_decay(const NoiseChannel& channel) {
    const MemoryParams& m = channel.memory;
    switch (channel.kind) {
        case ChannelKind::Depolarizing:
            m.validate();
            return {0.5, {{0.5, 1.0 / m.T}}};
        case ChannelKind::Dephasing:
            m.validate();
            return {2.0 / 3.0, {{1.0 / 3.0, 1.0 / m.T2}}};
        case ChannelKind::AmplitudeDamping:
            m.validate();
            return {0.5, {{1.0 / 6.0, 1.0 / m.T1}, {1.0 / 3.0, 0.5 / m.T1}}};
        case ChannelKind::Composite:
            m.validate(true);
            return {0.5, {{1.0 / 6.0, 1.0 / m.T1}, {1.0 / 3.0, 1.0 / m.T2}}};
    }
    throw std::logic_error("unreachable");
}

double FidelityDecay::eval(double t) const {
    double f = constant;
    for (auto [w, r] : terms) f += w * std::exp(-r * t);
    return f;
}

double gate_fidelity_closed(const NoiseChannel& channel, double t) {
    require_time(t);
    return fidelity_decay(channel).eval(t);
}

double gate_fidelity_bowdrey(const NoiseChannel& channel, double t) {
    require_time(t);
    double sum = 0.0;
    for (Pauli s : {Pauli::X, Pauli::Y, Pauli::Z}) {
        const Matrix2cd sigma = pauli(s);
        sum += (sigma * apply_channel_op(channel, t, sigma)).trace().real();
    }
    return 0.5 + sum / 12.0;
}

double ent_fidelity_from_gate(double f_avg, int d) {
    if (d < 2) throw std::invalid_argument("ent_fidelity_from_gate: d must be >= 2");
    return ((d + 1) * f_avg - 1.0) / d;
}

double gate_fidelity_from_ent(double f_e, int d) {
    if (d < 2) throw std::invalid_argument("gate_fidelity_from_ent: d must be >= 2");
    return (d * f_e + 1.0) / (d + 1);
}

}  // namespace qnet
