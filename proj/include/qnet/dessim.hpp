#ifndef QNET_DESSIM_HPP
#define QNET_DESSIM_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "qnet/channel.hpp"
#include "qnet/qbd.hpp"

namespace qnet {

/// splitmix64 mix; used to derive independent per-replication streams.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index);

struct RunningStat {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    double variance() const;
    double stddev() const;
    double std_error() const;  // stddev / sqrt(count)
};

struct SimConfig {
    ArchParams params;
    MemoryParams memory;
    double duration = 1e5;  // seconds
    std::uint64_t seed = 1;
    int replications = 1;
    double warmup_fraction = 0.05;
    bool record_samples = false;
    std::size_t max_samples = 4'000'000;
    std::size_t queue_sample_points = 1000;

    void validate() const;
};

struct SimResult {
    // recorded only when record_samples is set (capped at max_samples each)
    std::vector<double> comp_wait_samples;
    std::vector<double> move_wait_samples;
    std::vector<std::pair<double, double>> queue_length_timeseries;  // (time, count)

    std::array<double, 3> phase_time_fractions{};  // head request in stage 1/2/3
    double idle_fraction = 0.0;                    // no outstanding request

    RunningStat comp_wait;
    RunningStat move_wait;
    RunningStat comp_fidelity;      // gate_fidelity_closed(channel, w) per comp wait
    RunningStat move_ent_fidelity;  // (3F-1)/2 per move wait

    double f_avg_estimate = 0.0, f_avg_stderr = 0.0;
    double f_e_estimate = 0.0, f_e_stderr = 0.0;

    std::uint64_t ent_arrived = 0, ent_completed = 0, ent_in_system = 0;
    std::uint64_t comp_arrived = 0, comp_recorded = 0;
    std::uint64_t activity_violations = 0;  // internal monitor; must stay 0
};

/// Single replication, deterministic given cfg.seed. The channel parameterizes
/// the per-sample fidelity streams.
SimResult simulate(const SimConfig& cfg, const NoiseChannel& channel);

struct FidelityEstimate {
    double f_avg, f_avg_stderr;
    double f_e, f_e_stderr;
};

/// Sample-mean fidelities from recorded samples; throws when sample sets are
/// empty.
FidelityEstimate estimate_fidelities(const SimResult& result, const NoiseChannel& channel);

struct ReplicatedResult {
    std::vector<SimResult> runs;
    // across-replication mean and standard error (std/sqrt(R))
    double f_avg_mean = 0.0, f_avg_stderr = 0.0;
    double f_e_mean = 0.0, f_e_stderr = 0.0;
    std::array<double, 3> phase_mean{};
    std::array<double, 3> phase_stderr{};
    std::uint64_t total_comp_samples = 0;
    std::uint64_t total_move_samples = 0;
};

/// Runs cfg.replications independent replications with streams derived from
/// the master seed.
ReplicatedResult run_replications(const SimConfig& cfg, const NoiseChannel& channel);

}  // namespace qnet

#endif
