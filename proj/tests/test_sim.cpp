#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qnet/dessim.hpp"
#include "qnet/fidelity.hpp"

using namespace qnet;

namespace {

ArchParams params(double le, double mue, double lm, double mum, double lc, double mc,
                  Arch arch) {
    ArchParams p;
    p.lambda_e = le;
    p.mu_e = mue;
    p.lambda_m = lm;
    p.mu_m = mum;
    p.lambda_c = lc;
    p.mu_c = mc;
    p.arch = arch;
    return p;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

MemoryParams mem(double T1, double T2) {
    MemoryParams m;
    m.T = 1.0;
    m.T1 = T1;
    m.T2 = T2;
    return m;
}

SimConfig config(const ArchParams& p, double duration, std::uint64_t seed,
                 bool record = false) {
    SimConfig c;
    c.params = p;
    c.memory = mem(0.00286, 0.001);
    c.duration = duration;
    c.seed = seed;
    c.record_samples = record;
    return c;
}

NoiseChannel channel() { return NoiseChannel{ChannelKind::Composite, mem(0.00286, 0.001)}; }

// two-sample Kolmogorov distance between the empirical CDF and a mixed CDF
double ks_distance(std::vector<double> samples, const WaitingTimeDist& dist) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double model = dist.cdf(samples[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        worst = std::max({worst, std::abs(model - lo), std::abs(model - hi)});
    }
    return worst;
}

}  // namespace

TEST_CASE("determinism: identical seeds give identical results") {
    const ArchParams p = params(1, 10, 1000, 1667, 150, kInf, Arch::SD);
    const SimResult a = simulate(config(p, 500, 42, true), channel());
    const SimResult b = simulate(config(p, 500, 42, true), channel());
    CHECK(a.comp_wait_samples == b.comp_wait_samples);
    CHECK(a.move_wait_samples == b.move_wait_samples);
    CHECK(a.f_avg_estimate == b.f_avg_estimate);
    const SimResult c = simulate(config(p, 500, 43, true), channel());
    CHECK(a.comp_wait_samples != c.comp_wait_samples);
}

TEST_CASE("conservation and bookkeeping") {
    for (Arch arch : {Arch::SD, Arch::DD}) {
        for (double mc : {kInf, 2000.0}) {
            const ArchParams p = params(2, 20, 500, 800, 100, mc, arch);
            const SimResult r = simulate(config(p, 2000, 7), channel());
            CHECK(r.ent_arrived == r.ent_completed + r.ent_in_system);
            CHECK(r.activity_violations == 0);
            const double total = r.phase_time_fractions[0] + r.phase_time_fractions[1] +
                                 r.phase_time_fractions[2] + r.idle_fraction;
            CHECK(std::abs(total - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("no computation arrivals leaves comp samples empty") {
    ArchParams p = params(5, 100, 2000, 3000, 0, kInf, Arch::SD);
    const SimResult r = simulate(config(p, 3000, 11, true), channel());
    CHECK(r.comp_wait.count == 0);
    CHECK(r.comp_wait_samples.empty());
    CHECK(r.move_wait.count > 1000);

    // move waits are Exp(lambda_m)
    const double ks = ks_distance(r.move_wait_samples, move_waiting_dist(p.lambda_m));
    CHECK(ks < 0.01);
}

TEST_CASE("SD waiting times match the analytic mixture (KS < 0.01)") {
    // high lambda_c to collect >= 1e6 samples quickly
    const ArchParams p = params(1, 10, 1000, 1667, 200, kInf, Arch::SD);
    SimConfig cfg = config(p, 6000, 13, true);
    const SimResult r = simulate(cfg, channel());
    REQUIRE(r.comp_wait_samples.size() >= 1000000);
    const double ks = ks_distance(r.comp_wait_samples, waiting_dist_sd(p));
    CHECK(ks < 0.01);
}

TEST_CASE("DD waiting times match the analytic mixture (KS < 0.01)") {
    const ArchParams p = params(1, 10, 1000, 700, 200, kInf, Arch::DD);
    SimConfig cfg = config(p, 6000, 17, true);
    const SimResult r = simulate(cfg, channel());
    REQUIRE(r.comp_wait_samples.size() >= 1000000);
    const double ks = ks_distance(r.comp_wait_samples, waiting_dist_dd(p));
    CHECK(ks < 0.01);

    // empirical atom fraction ~ 1 - lambda_e/mu_m
    const double zero_frac =
        static_cast<double>(std::count(r.comp_wait_samples.begin(),
                                       r.comp_wait_samples.end(), 0.0)) /
        r.comp_wait_samples.size();
    CHECK(std::abs(zero_frac - (1 - p.lambda_e / p.mu_m)) < 0.005);
}

TEST_CASE("phase fractions match the stationary masses within 3 sigma") {
    ArchParams p = params(1, 10, 1000, 1667, 150, kInf, Arch::SD);
    SimConfig cfg = config(p, 20000, 19);
    cfg.replications = 5;
    const ReplicatedResult agg = run_replications(cfg, channel());
    const double se1 = std::max(agg.phase_stderr[0], 1e-12);
    const double se3 = std::max(agg.phase_stderr[2], 1e-12);
    CHECK(std::abs(agg.phase_mean[0] - p.lambda_e / p.mu_e) < 3 * se1);
    CHECK(std::abs(agg.phase_mean[2] - p.lambda_e / p.mu_m) < 3 * se3);
}

TEST_CASE("fidelity estimates match the closed forms within 3 sigma") {
    SUBCASE("SD") {
        const ArchParams p = params(1, 10, 1000, 1667, 150, kInf, Arch::SD);
        SimConfig cfg = config(p, 10000, 23);
        cfg.replications = 6;
        const ReplicatedResult agg = run_replications(cfg, channel());
        const double expect = f1_avg(p, cfg.memory);
        CHECK(std::abs(agg.f_avg_mean - expect) < 3 * agg.f_avg_stderr);
    }
    SUBCASE("DD") {
        const ArchParams p = params(1, 10, 1000, 700, 150, kInf, Arch::DD);
        SimConfig cfg = config(p, 10000, 29);
        cfg.replications = 6;
        const ReplicatedResult agg = run_replications(cfg, channel());
        const double expect = f2_avg(p, cfg.memory);
        CHECK(std::abs(agg.f_avg_mean - expect) < 3 * agg.f_avg_stderr);
    }
    SUBCASE("move fidelity matches the pre-move closed form") {
        const ArchParams p = params(1, 10, 1000, 1667, 150, kInf, Arch::SD);
        SimConfig cfg = config(p, 20000, 31);
        cfg.replications = 5;
        const ReplicatedResult agg = run_replications(cfg, channel());
        const double expect = f_e_premove(p.lambda_m, cfg.memory);
        CHECK(std::abs(agg.f_e_mean - expect) < 3 * std::max(agg.f_e_stderr, 1e-9));
    }
}

TEST_CASE("queue length stabilizes under the drift condition") {
    const ArchParams p = params(2, 10, 500, 800, 50, kInf, Arch::SD);
    SimConfig cfg = config(p, 100000, 37);
    const SimResult r = simulate(cfg, channel());
    REQUIRE(r.queue_length_timeseries.size() > 100);
    const size_t n = r.queue_length_timeseries.size();
    double mid = 0, last = 0;
    size_t nm = 0, nl = 0;
    for (size_t i = n / 4; i < n / 2; ++i, ++nm) mid += r.queue_length_timeseries[i].second;
    for (size_t i = n / 2; i < n; ++i, ++nl) last += r.queue_length_timeseries[i].second;
    mid /= nm;
    last /= nl;
    CHECK(std::abs(last - mid) < 0.1 * std::max(mid, 0.5));
}

TEST_CASE("doubling the duration shrinks the standard error roughly like 1/sqrt(2)") {
    const ArchParams p = params(1, 10, 1000, 1667, 150, kInf, Arch::SD);
    SimConfig short_cfg = config(p, 4000, 41);
    SimConfig long_cfg = config(p, 8000, 41);
    const SimResult a = simulate(short_cfg, channel());
    const SimResult b = simulate(long_cfg, channel());
    const double ratio = b.f_avg_stderr / a.f_avg_stderr;
    CHECK(ratio > (1 / std::sqrt(2.0)) * 0.7);
    CHECK(ratio < (1 / std::sqrt(2.0)) * 1.3);
}

TEST_CASE("finite mu_c regimes") {
    SUBCASE("finite computation slows everyone down") {
        const ArchParams inf_p = params(1, 10, 1000, 1667, 150, kInf, Arch::SD);
        const ArchParams fin_p = params(1, 10, 1000, 1667, 150, 500.0, Arch::SD);
        const SimResult inf_r = simulate(config(inf_p, 5000, 43), channel());
        const SimResult fin_r = simulate(config(fin_p, 5000, 43), channel());
        CHECK(fin_r.comp_wait.mean > inf_r.comp_wait.mean);
        CHECK(fin_r.activity_violations == 0);
    }
    SUBCASE("moves wait for in-service computations (non-preemptive)") {
        // with very slow computations the move wait mean exceeds the pure
        // Exp(lambda_m) mean
        const ArchParams p = params(0.5, 10, 1000, 1667, 20, 25.0, Arch::SD);
        const SimResult r = simulate(config(p, 20000, 47), channel());
        CHECK(r.move_wait.mean > 1.0 / p.lambda_m);
    }
    SUBCASE("DD computations never overlap a move") {
        const ArchParams p = params(2, 30, 800, 900, 300, 1000.0, Arch::DD);
        const SimResult r = simulate(config(p, 5000, 53), channel());
        CHECK(r.activity_violations == 0);
        CHECK(r.comp_recorded > 0);
    }
}

TEST_CASE("estimate_fidelities from recorded samples") {
    const ArchParams p = params(1, 10, 1000, 1667, 150, kInf, Arch::SD);
    const SimResult r = simulate(config(p, 2000, 59, true), channel());
    const FidelityEstimate est = estimate_fidelities(r, channel());
    CHECK(std::abs(est.f_avg - r.f_avg_estimate) < 1e-12);
    CHECK(std::abs(est.f_e - r.f_e_estimate) < 1e-12);

    SimResult empty;
    CHECK_THROWS_AS(estimate_fidelities(empty, channel()), std::invalid_argument);
}

TEST_CASE("replication seeds are independent and reproducible") {
    const ArchParams p = params(1, 10, 1000, 1667, 150, kInf, Arch::SD);
    SimConfig cfg = config(p, 1000, 61);
    cfg.replications = 3;
    const ReplicatedResult a = run_replications(cfg, channel());
    const ReplicatedResult b = run_replications(cfg, channel());
    CHECK(a.f_avg_mean == b.f_avg_mean);
    CHECK(a.runs[0].f_avg_estimate != a.runs[1].f_avg_estimate);
}
