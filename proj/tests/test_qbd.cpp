#include <doctest.h>

#include <random>

#include "qnet/qbd.hpp"

using namespace qnet;

namespace {

ArchParams params(double le, double mue, double lm, double mum) {
    ArchParams p;
    p.lambda_e = le;
    p.mu_e = mue;
    p.lambda_m = lm;
    p.mu_m = mum;
    p.lambda_c = 1.0;
    p.mu_c = std::numeric_limits<double>::infinity();
    return p;
}

ArchParams random_stable(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (true) {
        const double mue = 0.5 + 1999.5 * u(rng);
        const double lm = 0.5 + 1999.5 * u(rng);
        const double mum = 0.5 + 1999.5 * u(rng);
        const double cap = 1.0 / (1 / mue + 1 / lm + 1 / mum);
        const double le = cap * (0.01 + 0.94 * u(rng));
        ArchParams p = params(le, mue, lm, mum);
        if (mean_drift_ok(p)) return p;
    }
}

}  // namespace

TEST_CASE("generator blocks") {
    // rates from the reference operating point
    const ArchParams p = params(1, 10, 1000, 1667);
    const QbdBlocks b = build_blocks(p);

    Matrix3d a1_expect;
    a1_expect << -11, 10, 0, 0, -1001, 1000, 0, 0, -1668;
    CHECK(max_abs((b.a1 - a1_expect).eval()) < 1e-12);

    CHECK(b.b00 == doctest::Approx(-1.0));
    CHECK(b.b01(0) == doctest::Approx(1.0));
    CHECK(b.b10(2) == doctest::Approx(1667.0));

    SUBCASE("rows of A0 + A1 + A2 sum to zero") {
        std::mt19937_64 rng(1);
        for (int i = 0; i < 20; ++i) {
            const QbdBlocks bb = build_blocks(random_stable(rng));
            const Eigen::Vector3d rows = (bb.a0 + bb.a1 + bb.a2).rowwise().sum();
            CHECK(max_abs(rows) < 1e-10);
        }
    }

    SUBCASE("boundary level rows conserve as well") {
        const Eigen::Vector3d rows = b.b10 + (b.a1 + b.a2).rowwise().sum();
        CHECK(max_abs(rows) < 1e-12);
        CHECK(b.b00 + b.b01.sum() == doctest::Approx(0.0));
    }

    SUBCASE("A0 has rank 1") {
        Eigen::FullPivLU<Matrix3d> lu(b.a0);
        CHECK(lu.rank() == 1);
    }
}

TEST_CASE("mean drift condition") {
    CHECK(mean_drift_ok(params(1, 10, 1000, 1667)));
    CHECK(!mean_drift_ok(params(1, 1, 1, 1)));

    // boundary: lambda_e exactly the harmonic bound is rejected (strict)
    const double mue = 10, lm = 1000, mum = 1667;
    const double bound = 1.0 / (1 / mue + 1 / lm + 1 / mum);
    CHECK(!mean_drift_ok(params(bound, mue, lm, mum)));
}

TEST_CASE("rate matrix") {
    std::mt19937_64 rng(17);
    SUBCASE("quadratic residual and two construction routes") {
        for (int i = 0; i < 100; ++i) {
            const ArchParams p = random_stable(rng);
            const QbdBlocks b = build_blocks(p);
            const Matrix3d r = rate_matrix(p);
            const double scale = std::max({p.mu_e, p.lambda_m, p.mu_m});
            CHECK(max_abs((b.a2 + r * b.a1 + r * r * b.a0).eval()) / scale < 1e-10);
            CHECK(max_abs((r - rate_matrix_via_inverse(p)).eval()) < 1e-12 * scale);
            CHECK(spectral_radius(r) < 1.0);
        }
    }
    SUBCASE("fails when the drift condition is violated") {
        CHECK_THROWS_AS(rate_matrix(params(1, 1, 1, 1)), std::domain_error);
    }
}

TEST_CASE("boundary probabilities") {
    SUBCASE("phase masses at the reference point") {
        const QbdSolution s = boundary_probs(params(1, 10, 1000, 1667));
        CHECK(s.phase1_mass == doctest::Approx(0.1).epsilon(1e-14));
        CHECK(s.phase3_mass == doctest::Approx(1.0 / 1667).epsilon(1e-14));
    }
    SUBCASE("empty-system limit pi0 -> 1") {
        const QbdSolution s = boundary_probs(params(1e-8, 10, 1000, 1667));
        CHECK(s.pi0 == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("normalization pi0 + pi1 (I-R)^{-1} e = 1") {
        std::mt19937_64 rng(23);
        for (int i = 0; i < 50; ++i) {
            const QbdSolution s = boundary_probs(random_stable(rng));
            const double total =
                s.pi0 + s.pi1 * (Matrix3d::Identity() - s.r).inverse() *
                            Eigen::Vector3d::Ones();
            CHECK(std::abs(total - 1.0) < 1e-10);
        }
    }
    SUBCASE("truncated stationary solve agrees") {
        std::mt19937_64 rng(29);
        for (int i = 0; i < 10; ++i) {
            const ArchParams p = random_stable(rng);
            const QbdSolution s = boundary_probs(p);
            const VectorXd pi = truncated_stationary(p, 200);
            CHECK(std::abs(pi(0) - s.pi0) < 1e-8);
            for (int k = 0; k < 3; ++k) CHECK(std::abs(pi(1 + k) - s.pi1(k)) < 1e-8);
            double ph1 = 0, ph2 = 0, ph3 = 0;
            for (int lvl = 0; lvl < 200; ++lvl) {
                ph1 += pi(1 + 3 * lvl);
                ph2 += pi(2 + 3 * lvl);
                ph3 += pi(3 + 3 * lvl);
            }
            CHECK(std::abs(ph1 - s.phase1_mass) < 1e-8);
            CHECK(std::abs(ph3 - s.phase3_mass) < 1e-8);
            // global balance: mu_m phase3 = lambda_m phase2 = mu_e phase1
            CHECK(std::abs(p.mu_m * s.phase3_mass - p.lambda_m * ph2) < 1e-6);
            CHECK(std::abs(p.lambda_m * ph2 - p.mu_e * s.phase1_mass) < 1e-6);
        }
    }
    SUBCASE("level recursion pi_{n+1} = pi_n R") {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 10; ++i) {
            const ArchParams p = random_stable(rng);
            const Matrix3d r = rate_matrix(p);
            const VectorXd pi = truncated_stationary(p, 200);
            for (int lvl = 1; lvl <= 10; ++lvl) {
                Eigen::RowVector3d cur, nxt;
                cur << pi(1 + 3 * (lvl - 1)), pi(2 + 3 * (lvl - 1)), pi(3 + 3 * (lvl - 1));
                nxt << pi(1 + 3 * lvl), pi(2 + 3 * lvl), pi(3 + 3 * lvl);
                CHECK(max_abs((nxt - cur * r).eval()) < 1e-8);
            }
        }
    }
}

TEST_CASE("waiting time distributions") {
    SUBCASE("SD atom and mass") {
        const WaitingTimeDist w = waiting_dist_sd(params(1, 10, 1000, 1667));
        CHECK(w.atom_at_zero == doctest::Approx(1 - 0.1 - 1.0 / 1667).epsilon(1e-12));
        CHECK(w.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(w.components.size() == 2);
    }
    SUBCASE("DD atom and mass") {
        const WaitingTimeDist w = waiting_dist_dd(params(1, 10, 1000, 700));
        CHECK(w.atom_at_zero == doctest::Approx(1 - 1.0 / 700).epsilon(1e-12));
        CHECK(w.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("move waiting is Exp(lambda_m)") {
        const WaitingTimeDist g = move_waiting_dist(1000.0);
        CHECK(g.atom_at_zero == 0.0);
        CHECK(g.density(0.0) == doctest::Approx(1000.0));
        CHECK(g.mean() == doctest::Approx(1e-3).epsilon(1e-12));
        CHECK_THROWS_AS(move_waiting_dist(0.0), std::invalid_argument);
    }
    SUBCASE("CDFs are monotone and normalized") {
        std::mt19937_64 rng(37);
        for (int i = 0; i < 20; ++i) {
            const ArchParams p = random_stable(rng);
            for (const WaitingTimeDist& w : {waiting_dist_sd(p), waiting_dist_dd(p)}) {
                CHECK(std::abs(w.total_mass() - 1.0) < 1e-12);
                double prev = -1;
                for (int k = 0; k <= 50; ++k) {
                    const double c = w.cdf(k * 0.1 / p.lambda_e);
                    CHECK(c >= prev - 1e-15);
                    CHECK(c <= 1.0 + 1e-12);
                    prev = c;
                }
            }
        }
    }
    SUBCASE("drift violations are rejected") {
        CHECK_THROWS_AS(waiting_dist_sd(params(1, 1, 1, 1)), std::domain_error);
        CHECK_THROWS_AS(waiting_dist_dd(params(1, 1, 1, 1)), std::domain_error);
    }
}
