#ifndef QNET_QBD_HPP
#define QNET_QBD_HPP

#include <limits>
#include <vector>

#include "qnet/linalg.hpp"

namespace qnet {

enum class Arch { SD, DD };

/// Queueing rates in Hz. mu_c may be +infinity (negligible computation time).
struct ArchParams {
    double lambda_e;  // entanglement request arrival rate
    double mu_e;      // entanglement generation rate
    double lambda_m;  // move (state transfer) request arrival rate
    double mu_m;      // move execution rate
    double lambda_c;  // computation request arrival rate
    double mu_c;      // computation rate, may be +inf
    Arch arch = Arch::SD;

    bool mu_c_infinite() const { return std::isinf(mu_c); }
    void validate() const;
};

/// Generator blocks of the M/HYPO_3/1 quasi-birth-death chain.
/// Levels count outstanding entanglement requests; phases are the head
/// request's stage (1 generation, 2 awaiting move request, 3 move execution).
struct QbdBlocks {
    double b00;
    Eigen::RowVector3d b01;
    Eigen::Vector3d b10;
    Matrix3d a0, a1, a2;
};

QbdBlocks build_blocks(const ArchParams& p);

/// Mean drift (ergodicity) condition 1/lambda_e > 1/mu_e + 1/lambda_m + 1/mu_m,
/// strict. Equality is rejected.
bool mean_drift_ok(const ArchParams& p);
void require_drift(const ArchParams& p);

/// Explicit rate matrix
///   R = lambda_e/(lambda_m mu_e mu_m) *
///       [ bg, g mu_e, mu_e lm; le(g+lm), g mu_e, mu_e lm; le b, le mu_e, mu_e lm ]
/// with b = le+lm, g = le+mu_m. Minimal solution of A2 + R A1 + R^2 A0 = 0.
Matrix3d rate_matrix(const ArchParams& p);

/// Cross-check route R = -A2 (A1 + A2 e [1 0 0])^{-1}, valid because A0 has rank 1.
Matrix3d rate_matrix_via_inverse(const ArchParams& p);

double spectral_radius(const Matrix3d& m);

struct QbdSolution {
    Matrix3d r;
    double pi0;                 // P(no outstanding requests)
    Eigen::RowVector3d pi1;     // (pi_{1/1}, pi_{1/2}, pi_{1/3})
    double phase1_mass;         // sum_N pi_{N/1} = lambda_e/mu_e
    double phase3_mass;         // sum_N pi_{N/3} = lambda_e/mu_m
};

QbdSolution boundary_probs(const ArchParams& p);

/// Brute-force oracle: stationary vector of the generator truncated at
/// `levels` levels (state 0 plus 3 phases per level), solved by dense LU.
/// Layout: [pi_0, pi_{1/1}, pi_{1/2}, pi_{1/3}, pi_{2/1}, ...].
VectorXd truncated_stationary(const ArchParams& p, int levels = 200);

/// Mixture of exponential densities plus a point mass at t = 0.
struct WaitingTimeDist {
    double atom_at_zero;
    std::vector<std::pair<double, double>> components;  // (coefficient, rate)

    double total_mass() const;
    double density(double t) const;  // continuous part only
    double cdf(double t) const;
    double mean() const;
};

/// f_W1: atom 1 - le/mu_e - le/mu_m, components (le, mu_e), (le, mu_m).
WaitingTimeDist waiting_dist_sd(const ArchParams& p);

/// f_W2: atom 1 - le/mu_m, component (le, mu_m).
WaitingTimeDist waiting_dist_dd(const ArchParams& p);

/// g(t) = lambda_m e^{-lambda_m t}: waiting of a newly-entangled qubit for a
/// move request.
WaitingTimeDist move_waiting_dist(double lambda_m);

}  // namespace qnet

#endif
