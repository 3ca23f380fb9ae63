#include "qnet/qbd.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace qnet {

void ArchParams::validate() const {
    if (!(lambda_e > 0) || !(mu_e > 0) || !(lambda_m > 0) || !(mu_m > 0) ||
        !(lambda_c >= 0) || !(mu_c > 0))
        throw std::invalid_argument("ArchParams: rates must be positive");
}

QbdBlocks build_blocks(const ArchParams& p) {
    p.validate();
    const double le = p.lambda_e, mue = p.mu_e, lm = p.lambda_m, mum = p.mu_m;
    const double alpha = le + mue, beta = le + lm, gamma = le + mum;  // drift gamma
    QbdBlocks b;
    b.b00 = -le;
    b.b01 << le, 0, 0;
    b.b10 << 0, 0, mum;
    b.a0 = Matrix3d::Zero();
    b.a0(2, 0) = mum;  // rank 1
    b.a1 << -alpha, mue, 0,
            0, -beta, lm,
            0, 0, -gamma;
    b.a2 = le * Matrix3d::Identity();
    return b;
}

bool mean_drift_ok(const ArchParams& p) {
    p.validate();
    return 1.0 / p.lambda_e > 1.0 / p.mu_e + 1.0 / p.lambda_m + 1.0 / p.mu_m;
}

void require_drift(const ArchParams& p) {
    if (!mean_drift_ok(p))
        throw std::domain_error("mean drift condition violated: chain not ergodic");
}

Matrix3d rate_matrix(const ArchParams& p) {
    require_drift(p);
    const double le = p.lambda_e, mue = p.mu_e, lm = p.lambda_m, mum = p.mu_m;
    const double beta = le + lm, gamma = le + mum;
    Matrix3d r;
    r << beta * gamma, gamma * mue, mue * lm,
         le * (gamma + lm), gamma * mue, mue * lm,
         le * beta, le * mue, mue * lm;
    return (le / (lm * mue * mum)) * r;
}

Matrix3d rate_matrix_via_inverse(const ArchParams& p) {
    require_drift(p);
    const QbdBlocks b = build_blocks(p);
    Eigen::Vector3d e = Eigen::Vector3d::Ones();
    Eigen::RowVector3d u;
    u << 1, 0, 0;
    return -b.a2 * (b.a1 + b.a2 * e * u).inverse();
}

double spectral_radius(const Matrix3d& m) {
    return m.eigenvalues().cwiseAbs().maxCoeff();
}

QbdSolution boundary_probs(const ArchParams& p) {
    require_drift(p);
    const double le = p.lambda_e, mue = p.mu_e, lm = p.lambda_m, mum = p.mu_m;
    const double delta = lm * mue * mum - le * lm * mue - le * lm * mum - le * mue * mum;
    QbdSolution s;
    s.r = rate_matrix(p);
    s.pi0 = delta / (lm * mue * mum);
    const double d2 = (lm * mue * mum) * (lm * mue * mum);
    s.pi1 << le * (le + lm) * (le + mum) * delta / d2,
             le * (le + mum) * delta / (lm * lm * mue * mum * mum),
             le * delta / (lm * mue * mum * mum);
    s.phase1_mass = le / mue;
    s.phase3_mass = le / mum;
    return s;
}

VectorXd truncated_stationary(const ArchParams& p, int levels) {
    if (levels < 2) throw std::invalid_argument("truncated_stationary: levels >= 2");
    const QbdBlocks b = build_blocks(p);
    const int dim = 1 + 3 * levels;
    MatrixXd q = MatrixXd::Zero(dim, dim);
    q(0, 0) = b.b00;
    q.block(0, 1, 1, 3) = b.b01;
    q.block(1, 0, 3, 1) = b.b10;
    for (int lvl = 1; lvl <= levels; ++lvl) {
        const int i = 1 + 3 * (lvl - 1);
        q.block(i, i, 3, 3) = b.a1;
        if (lvl < levels)
            q.block(i, i + 3, 3, 3) = b.a2;
        else
            q.block(i, i, 3, 3) = b.a1 + b.a2;  // fold A2 back to keep rows zero
        if (lvl > 1) q.block(i, i - 3, 3, 3) = b.a0;
    }
    // pi Q = 0 with normalization: replace the last equation by sum(pi) = 1
    MatrixXd m = q.transpose();
    m.row(dim - 1).setOnes();
    VectorXd rhs = VectorXd::Zero(dim);
    rhs(dim - 1) = 1.0;
    return m.partialPivLu().solve(rhs);
}

double WaitingTimeDist::total_mass() const {
    double mass = atom_at_zero;
    for (auto [c, r] : components) mass += c / r;
    return mass;
}

double WaitingTimeDist::density(double t) const {
    double d = 0.0;
    for (auto [c, r] : components) d += c * std::exp(-r * t);
    return d;
}

double WaitingTimeDist::cdf(double t) const {
    if (t < 0) return 0.0;
    double f = atom_at_zero;
    for (auto [c, r] : components) f += (c / r) * (1.0 - std::exp(-r * t));
    return f;
}

double WaitingTimeDist::mean() const {
    double m = 0.0;
    for (auto [c, r] : components) m += c / (r * r);
    return m;
}

WaitingTimeDist waiting_dist_sd(const ArchParams& p) {
    require_drift(p);
    const double le = p.lambda_e;
    const double atom = 1.0 - le / p.mu_e - le / p.mu_m;
    if (atom < 0)
        throw std::domain_error("waiting_dist_sd: lambda_e/mu_e + lambda_e/mu_m > 1");
    return {atom, {{le, p.mu_e}, {le, p.mu_m}}};
}

WaitingTimeDist waiting_dist_dd(const ArchParams& p) {
    require_drift(p);
    const double le = p.lambda_e;
    const double atom = 1.0 - le / p.mu_m;
    if (atom < 0) throw std::domain_error("waiting_dist_dd: lambda_e/mu_m > 1");
    return {atom, {{le, p.mu_m}}};
}

WaitingTimeDist move_waiting_dist(double lambda_m) {
    if (!(lambda_m > 0))
        throw std::invalid_argument("move_waiting_dist: lambda_m must be positive");
    return {0.0, {{lambda_m, lambda_m}}};
}

}  // namespace qnet
