#include <doctest.h>

#include <random>

#include "qnet/choi.hpp"
#include "qnet/state.hpp"

using namespace qnet;

namespace {

MemoryParams mem(double T, double T1, double T2) {
    MemoryParams m;
    m.T = T;
    m.T1 = T1;
    m.T2 = T2;
    return m;
}

Matrix4cd swap_matrix() {
    Matrix4cd s = Matrix4cd::Zero();
    s(0, 0) = s(3, 3) = s(1, 2) = s(2, 1) = 1;
    return s;
}

}  // namespace

TEST_CASE("choi state examples") {
    SUBCASE("identity channel gives the Bell projector") {
        NoiseChannel ch{ChannelKind::Dephasing, mem(1, 1, 1)};
        Matrix4cd tau = choi_state(ch, 0.0);
        const Vector4cd phi = bell_phi_plus();
        CHECK(max_abs((tau - phi * phi.adjoint()).eval()) < 1e-14);
    }
    SUBCASE("fully depolarized gives I/4") {
        NoiseChannel ch{ChannelKind::Depolarizing, mem(1, 1, 1)};
        Matrix4cd tau = choi_state(ch, 1e9);
        CHECK(max_abs((tau - 0.25 * Matrix4cd::Identity()).eval()) < 1e-12);
    }
    SUBCASE("dephasing at p = 1/2 is the even Z mixture") {
        // p = 1/2 at t -> infinity
        NoiseChannel ch{ChannelKind::Dephasing, mem(1, 1, 0.021)};
        Matrix4cd tau = choi_state(ch, 1e9 * 0.021);
        const Vector4cd phi = bell_phi_plus();
        const Matrix4cd zi = kron(pauli_z(), Matrix2cd::Identity());
        Matrix4cd expect =
            0.5 * (phi * phi.adjoint()) + 0.5 * zi * (phi * phi.adjoint()) * zi.adjoint();
        CHECK(max_abs((tau - expect).eval()) < 1e-10);
    }
    SUBCASE("choi states are valid density matrices") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 50; ++i) {
            MemoryParams m = mem(0.1 + u(rng), 0.1 + u(rng), 0.0);
            m.T2 = m.T1 * (0.1 + 1.9 * u(rng));
            for (ChannelKind k : {ChannelKind::Depolarizing, ChannelKind::Dephasing,
                                  ChannelKind::AmplitudeDamping, ChannelKind::Composite})
                CHECK(is_density_matrix(choi_state({k, m}, 2 * u(rng))));
        }
    }
}

TEST_CASE("partial transpose") {
    SUBCASE("product case (A (x) B)^Gamma = A (x) B^T") {
        Matrix2cd a = rot_x(0.7), b = rot_y(1.3);
        Matrix4cd ab = kron(a, b);
        CHECK(max_abs((partial_transpose(ab) - kron(a, b.transpose().eval())).eval()) <
              1e-14);
    }
    SUBCASE("involution") {
        std::mt19937_64 rng(4);
        Matrix4cd m;
        std::normal_distribution<double> g;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = Complex(g(rng), g(rng));
        CHECK(max_abs((partial_transpose(partial_transpose(m)) - m).eval()) < 1e-15);
    }
    SUBCASE("Bell projector maps to SWAP/2") {
        const Vector4cd phi = bell_phi_plus();
        Matrix4cd pt = partial_transpose(phi * phi.adjoint());
        CHECK(max_abs((pt - 0.5 * swap_matrix()).eval()) < 1e-14);
    }
}

TEST_CASE("symmetric projector") {
    const Matrix4cd p = symmetric_projector();
    CHECK(p.trace().real() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(max_abs((p * p - p).eval()) < 1e-12);
    CHECK(max_abs((p - 0.5 * (Matrix4cd::Identity() + swap_matrix())).eval()) < 1e-14);
}

TEST_CASE("choi oracle equals the closed forms") {
    SUBCASE("identity channel") {
        NoiseChannel ch{ChannelKind::Composite, mem(1, 1, 1.2)};
        CHECK(gate_fidelity_choi_oracle(ch, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("depolarizing at t = T") {
        NoiseChannel ch{ChannelKind::Depolarizing, mem(0.37, 1, 1)};
        CHECK(std::abs(gate_fidelity_choi_oracle(ch, 0.37) -
                       0.5 * (1 + std::exp(-1.0))) < 1e-10);
    }
    SUBCASE("composite over 100 random draws with T2 <= 2 T1") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            MemoryParams m = mem(1.0, 0.01 + 2 * u(rng), 0.0);
            m.T2 = m.T1 * (0.05 + 1.95 * u(rng));
            NoiseChannel ch{ChannelKind::Composite, m};
            const double t = 3 * m.T1 * u(rng);
            CHECK(std::abs(gate_fidelity_choi_oracle(ch, t) - gate_fidelity_closed(ch, t)) <
                  1e-10);
        }
    }
}
