#include "qnet/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qnet {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& section,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in section '" + section + "'");
    }
}

double get_rate(const json& obj, const std::string& section, const std::string& key,
                bool allow_inf = false) {
    if (!obj.contains(key))
        throw ConfigError("missing key '" + key + "' in section '" + section + "'");
    const json& v = obj.at(key);
    if (v.is_string()) {
        if (allow_inf && v.get<std::string>() == "inf")
            return std::numeric_limits<double>::infinity();
        throw ConfigError("key '" + key + "' in section '" + section +
                          "' must be a number" + (allow_inf ? " or \"inf\"" : ""));
    }
    if (!v.is_number())
        throw ConfigError("key '" + key + "' in section '" + section + "' must be a number");
    return v.get<double>();
}

ArchParams parse_arch(const json& obj, const std::string& section, Arch arch) {
    check_keys(obj, section, {"lambda_e", "mu_e", "lambda_m", "mu_m", "lambda_c", "mu_c"});
    ArchParams p;
    p.lambda_e = get_rate(obj, section, "lambda_e");
    p.mu_e = get_rate(obj, section, "mu_e");
    p.lambda_m = get_rate(obj, section, "lambda_m");
    p.mu_m = get_rate(obj, section, "mu_m");
    p.lambda_c = get_rate(obj, section, "lambda_c");
    p.mu_c = get_rate(obj, section, "mu_c", true);
    p.arch = arch;
    return p;
}

MemoryParams parse_memory(const json& obj, const std::string& section) {
    check_keys(obj, section, {"T", "T1", "T2"});
    MemoryParams m;
    m.T1 = get_rate(obj, section, "T1");
    m.T2 = get_rate(obj, section, "T2");
    m.T = obj.contains("T") ? get_rate(obj, section, "T") : 1.0;
    return m;
}

GateNoiseTable parse_gate_noise(const json& obj) {
    check_keys(obj, "gate_noise",
               {"p_electron_init", "p_carbon_init", "p_rz_carbon", "p_rx_electron",
                "p_rcx", "p_rcy", "include_electron_init"});
    GateNoiseTable t;
    if (obj.contains("p_electron_init")) t.p_electron_init = obj.at("p_electron_init");
    if (obj.contains("p_carbon_init")) t.p_carbon_init = obj.at("p_carbon_init");
    if (obj.contains("p_rz_carbon")) t.p_rz_carbon = obj.at("p_rz_carbon");
    if (obj.contains("p_rx_electron")) t.p_rx_electron = obj.at("p_rx_electron");
    if (obj.contains("p_rcx")) t.p_rcx = obj.at("p_rcx");
    if (obj.contains("p_rcy")) t.p_rcy = obj.at("p_rcy");
    if (obj.contains("include_electron_init"))
        t.include_electron_init = obj.at("include_electron_init").get<bool>();
    return t;
}

SweepSpec parse_sweep(const json& obj) {
    check_keys(obj, "sweep", {"variable", "values", "start", "stop", "count", "scale"});
    SweepSpec s;
    if (!obj.contains("variable")) throw ConfigError("sweep: missing 'variable'");
    s.variable = obj.at("variable").get<std::string>();
    const auto& known = known_sweep_variables();
    if (std::find(known.begin(), known.end(), s.variable) == known.end())
        throw ConfigError("sweep: unknown variable '" + s.variable + "'");
    if (obj.contains("values")) {
        if (obj.contains("start") || obj.contains("stop") || obj.contains("count"))
            throw ConfigError("sweep: give either 'values' or start/stop/count, not both");
        for (const auto& v : obj.at("values")) s.values.push_back(v.get<double>());
    } else {
        if (!obj.contains("start") || !obj.contains("stop") || !obj.contains("count"))
            throw ConfigError("sweep: need 'values' or start/stop/count");
        const double start = obj.at("start").get<double>();
        const double stop = obj.at("stop").get<double>();
        const int count = obj.at("count").get<int>();
        if (count < 1) throw ConfigError("sweep: count must be >= 1");
        std::string scale = obj.contains("scale") ? obj.at("scale").get<std::string>()
                                                  : std::string("linear");
        if (scale != "linear" && scale != "log")
            throw ConfigError("sweep: scale must be 'linear' or 'log'");
        for (int i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            if (scale == "linear")
                s.values.push_back(start + f * (stop - start));
            else {
                if (!(start > 0) || !(stop > 0))
                    throw ConfigError("sweep: log scale needs positive bounds");
                s.values.push_back(start * std::pow(stop / start, f));
            }
        }
    }
    if (s.values.empty()) throw ConfigError("sweep: empty value list");
    return s;
}

}  // namespace

ToolConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what());
    }
    check_keys(root, "(top level)",
               {"arch_sd", "arch_dd", "memory_sd", "memory_dd", "gate_noise", "sweep",
                "sim"});
    ToolConfig cfg;
    for (const char* required : {"arch_sd", "arch_dd", "memory_sd", "memory_dd"})
        if (!root.contains(required))
            throw ConfigError(std::string("missing section '") + required + "'");
    cfg.arch_sd = parse_arch(root.at("arch_sd"), "arch_sd", Arch::SD);
    cfg.arch_dd = parse_arch(root.at("arch_dd"), "arch_dd", Arch::DD);
    cfg.memory_sd = parse_memory(root.at("memory_sd"), "memory_sd");
    cfg.memory_dd = parse_memory(root.at("memory_dd"), "memory_dd");
    if (root.contains("gate_noise")) cfg.gate_noise = parse_gate_noise(root.at("gate_noise"));
    if (root.contains("sweep")) {
        cfg.sweep = parse_sweep(root.at("sweep"));
        cfg.has_sweep = true;
    }
    if (root.contains("sim")) {
        const json& sim = root.at("sim");
        check_keys(sim, "sim",
                   {"duration", "seed", "replications", "warmup_fraction", "samples_out"});
        if (sim.contains("duration")) cfg.sim_duration = sim.at("duration").get<double>();
        if (sim.contains("seed")) cfg.sim_seed = sim.at("seed").get<std::uint64_t>();
        if (sim.contains("replications"))
            cfg.sim_replications = sim.at("replications").get<int>();
        if (sim.contains("warmup_fraction"))
            cfg.sim_warmup_fraction = sim.at("warmup_fraction").get<double>();
        if (sim.contains("samples_out"))
            cfg.samples_out = sim.at("samples_out").get<std::string>();
    }
    try {
        cfg.arch_sd.validate();
        cfg.arch_dd.validate();
        cfg.memory_sd.validate();
        cfg.memory_dd.validate();
        cfg.gate_noise.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ToolConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::string> known_sweep_variables() {
    return {"lambda_e", "mu_e", "lambda_m", "lambda_c", "mu_c", "mu_m_sd", "mu_m_dd",
            "T_sd", "T1_sd", "T2_sd", "T_dd", "T1_dd", "T2_dd"};
}

void apply_sweep_value(ToolConfig& cfg, const std::string& variable, double value) {
    if (variable == "lambda_e")
        cfg.arch_sd.lambda_e = cfg.arch_dd.lambda_e = value;
    else if (variable == "mu_e")
        cfg.arch_sd.mu_e = cfg.arch_dd.mu_e = value;
    else if (variable == "lambda_m")
        cfg.arch_sd.lambda_m = cfg.arch_dd.lambda_m = value;
    else if (variable == "lambda_c")
        cfg.arch_sd.lambda_c = cfg.arch_dd.lambda_c = value;
    else if (variable == "mu_c")
        cfg.arch_sd.mu_c = cfg.arch_dd.mu_c = value;
    else if (variable == "mu_m_sd")
        cfg.arch_sd.mu_m = value;
    else if (variable == "mu_m_dd")
        cfg.arch_dd.mu_m = value;
    else if (variable == "T_sd")
        cfg.memory_sd.T = value;
    else if (variable == "T1_sd")
        cfg.memory_sd.T1 = value;
    else if (variable == "T2_sd")
        cfg.memory_sd.T2 = value;
    else if (variable == "T_dd")
        cfg.memory_dd.T = value;
    else if (variable == "T1_dd")
        cfg.memory_dd.T1 = value;
    else if (variable == "T2_dd")
        cfg.memory_dd.T2 = value;
    else
        throw ConfigError("unknown sweep variable '" + variable + "'");
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace qnet
