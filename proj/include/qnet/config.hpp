#ifndef QNET_CONFIG_HPP
#define QNET_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "qnet/dessim.hpp"
#include "qnet/nv.hpp"
#include "qnet/qbd.hpp"

namespace qnet {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string variable;
    std::vector<double> values;
};

/// One structured JSON document with sections
/// {arch_sd, arch_dd, memory_sd, memory_dd, gate_noise, sweep, sim}.
/// Unknown keys are errors. Rates in Hz, times in seconds; mu_c may be the
/// literal string "inf".
struct ToolConfig {
    ArchParams arch_sd{};
    ArchParams arch_dd{};
    MemoryParams memory_sd{};
    MemoryParams memory_dd{};
    GateNoiseTable gate_noise{};
    SweepSpec sweep;
    bool has_sweep = false;

    double sim_duration = 1e5;
    std::uint64_t sim_seed = 1;
    int sim_replications = 5;
    double sim_warmup_fraction = 0.05;
    std::string samples_out;  // optional prefix for raw wait CSVs
};

ToolConfig load_config(const std::string& path);
ToolConfig parse_config(const std::string& json_text);

/// Known sweep variables: lambda_e, mu_e, lambda_m, lambda_c, mu_c (applied to
/// both architectures), mu_m_sd, mu_m_dd, T_sd, T1_sd, T2_sd, T_dd, T1_dd,
/// T2_dd.
void apply_sweep_value(ToolConfig& cfg, const std::string& variable, double value);

std::vector<std::string> known_sweep_variables();

/// Locale-independent shortest-roundtrip formatting (std::to_chars).
std::string format_double(double v);

}  // namespace qnet

#endif
