#include "qnet/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnet/quadrature.hpp"

namespace qnet {

double avg_fidelity_over_dist(const WaitingTimeDist& dist, const NoiseChannel& channel) {
    if (std::abs(dist.total_mass() - 1.0) > 1e-9)
        throw std::invalid_argument("avg_fidelity_over_dist: mixture not normalized");
    const FidelityDecay decay = fidelity_decay(channel);
    double f = dist.atom_at_zero * decay.eval(0.0);
    for (auto [c, r] : dist.components) {
        // Int_0^inf c e^{-rt} (A + sum w e^{-st}) dt = c (A/r + sum w/(r+s))
        double term = decay.constant / r;
        for (auto [w, s] : decay.terms) term += w / (r + s);
        f += c * term;
    }
    return f;
}

double avg_fidelity_over_dist_quadrature(const WaitingTimeDist& dist,
                                         const NoiseChannel& channel) {
    if (std::abs(dist.total_mass() - 1.0) > 1e-9)
        throw std::invalid_argument("avg_fidelity_over_dist: mixture not normalized");
    double f = dist.atom_at_zero * gate_fidelity_closed(channel, 0.0);
    for (auto [c, r] : dist.components) {
        const double cutoff = 50.0 / r;  // integrand decays at least like e^{-rt}
        f += integrate_adaptive(
            [&](double t) { return c * std::exp(-r * t) * gate_fidelity_closed(channel, t); },
            0.0, cutoff, 1e-11);
    }
    return f;
}

double f1_avg(const ArchParams& p, const MemoryParams& m) {
    require_drift(p);
    m.validate(true);
    const double le = p.lambda_e, mue = p.mu_e, mum = p.mu_m;
    const double t1 = m.T1, t2 = m.T2;
    return 1.0 - 0.5 * le * (1.0 / mue + 1.0 / mum) +
           (le / 6.0) * (2.0 * t2 / (mue * t2 + 1) + t1 / (mue * t1 + 1) +
                         2.0 * t2 / (mum * t2 + 1) + t1 / (mum * t1 + 1));
}

double f2_avg(const ArchParams& p, const MemoryParams& m) {
    require_drift(p);
    m.validate(true);
    const double le = p.lambda_e, mum = p.mu_m;
    const double t1 = m.T1, t2 = m.T2;
    return 1.0 - 0.5 * le / mum +
           (le / 6.0) * (2.0 * t2 / (mum * t2 + 1) + t1 / (mum * t1 + 1));
}

double f_e_premove(double lambda_m, const MemoryParams& m) {
    if (!(lambda_m > 0))
        throw std::invalid_argument("f_e_premove: lambda_m must be positive");
    m.validate(true);
    return 0.25 + (lambda_m / 4.0) * (m.T1 / (lambda_m * m.T1 + 1) +
                                      2.0 * m.T2 / (lambda_m * m.T2 + 1));
}

bool composite_condition(const ArchParams& p_sd, const ArchParams& p_dd,
                         const MemoryParams& m_sd, const MemoryParams& m_dd) {
    require_drift(p_sd);
    require_drift(p_dd);
    m_sd.validate(true);
    m_dd.validate(true);
    const double mue = p_sd.mu_e, mum1 = p_sd.mu_m, mum2 = p_dd.mu_m;
    const double t1s = m_sd.T1, t2s = m_sd.T2, t1d = m_dd.T1, t2d = m_dd.T2;
    const double lhs =
        1.0 / mue + 1.0 / mum1 -
        (1.0 / 3.0) * (2.0 * t2s / (mue * t2s + 1) + t1s / (mue * t1s + 1) +
                       2.0 * t2s / (mum1 * t2s + 1) + t1s / (mum1 * t1s + 1));
    const double rhs =
        1.0 / mum2 -
        (1.0 / 3.0) * (2.0 * t2d / (mum2 * t2d + 1) + t1d / (mum2 * t1d + 1));
    return lhs < rhs;
}

double sd_memory_sufficient_bound(const ArchParams& p_sd, const ArchParams& p_dd,
                                  double t1_dd) {
    const double mue = p_sd.mu_e, mum1 = p_sd.mu_m, mum2 = p_dd.mu_m;
    if (!(mue > 1.0))
        throw std::domain_error("sd_memory_sufficient_bound: requires mu_e > 1 /s");
    if (!(mue < mum2 && mum2 < mum1))
        throw std::domain_error("sd_memory_sufficient_bound: requires mu_e < mu_m2 < mu_m1");
    if (!(t1_dd > 0))
        throw std::invalid_argument("sd_memory_sufficient_bound: T1_dd must be positive");
    const double s = mue + mum1;
    return mum2 * (mum2 * t1_dd + 1.0) * s * s / ((mue * mum1) * (mue * mum1)) -
           s / (std::sqrt(2.0) * mue * mum1);
}

std::pair<bool, bool> lemma_inequalities_check(double a, double b, double x, double y) {
    if (!(a > 0 && b > 0 && x > 0 && y > 0))
        throw std::invalid_argument("lemma_inequalities_check: arguments must be positive");
    const bool first = x / (a * x + 1) > y / (a * y + 1);
    const double c = std::sqrt(2.0) * a * b / (a + b);
    const bool second =
        1.0 / (a * (a * x + 1)) + 1.0 / (b * (b * x + 1)) < 2.0 / (c * (c * x + 1));
    return {first, second};
}

FidelityReport compare_architectures(const ArchParams& p_sd, const ArchParams& p_dd,
                                     const MemoryParams& m_sd, const MemoryParams& m_dd) {
    FidelityReport rep;
    rep.f_avg_sd = f1_avg(p_sd, m_sd);
    rep.f_avg_dd = f2_avg(p_dd, m_dd);
    rep.f_e_premove = qnet::f_e_premove(p_sd.lambda_m, m_sd);
    const double diff = rep.f_avg_sd - rep.f_avg_dd;
    if (std::abs(diff) < 1e-12)
        rep.winner = Winner::Tie;
    else
        rep.winner = diff > 0 ? Winner::SD : Winner::DD;
    return rep;
}

}  // namespace qnet
