// Command-line front end: analytic sweeps, simulation sweeps, circuit reports,
// and a quick self-test of the oracle equivalences.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnet/choi.hpp"
#include "qnet/config.hpp"
#include "qnet/dessim.hpp"
#include "qnet/fidelity.hpp"
#include "qnet/nv.hpp"

namespace {

using nlohmann::json;
using namespace qnet;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct OutputRow {
    double value = 0;
    bool stable_sd = false, stable_dd = false;
    json fields;  // column -> value (string or number)
};

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << text;
    }
}

std::string rows_to_csv(const std::vector<std::string>& columns,
                        const std::vector<json>& rows) {
    std::ostringstream os;
    for (size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const json& r : rows) {
        for (size_t i = 0; i < columns.size(); ++i) {
            if (i) os << ",";
            const json& v = r.at(columns[i]);
            if (v.is_string())
                os << v.get<std::string>();
            else if (v.is_number())
                os << format_double(v.get<double>());
            else
                os << v.dump();
        }
        os << "\n";
    }
    return os.str();
}

std::string rows_to_json(const std::vector<json>& rows) {
    json arr = json::array();
    for (const json& r : rows) arr.push_back(r);
    return arr.dump(2) + "\n";
}

int cmd_analyze(const ToolConfig& base, const std::string& out_path,
                const std::string& format) {
    if (!base.has_sweep || base.sweep.values.empty()) {
        std::cerr << "analyze: config has no sweep values\n";
        return kExitConfig;
    }
    std::vector<json> rows;
    int stable_points = 0;
    for (double v : base.sweep.values) {
        ToolConfig cfg = base;
        try {
            apply_sweep_value(cfg, cfg.sweep.variable, v);
        } catch (const std::exception& e) {
            std::cerr << "analyze: " << e.what() << "\n";
            return kExitConfig;
        }
        json row;
        row["variable"] = cfg.sweep.variable;
        row["value"] = v;
        bool ok_sd = false, ok_dd = false;
        try {
            ok_sd = mean_drift_ok(cfg.arch_sd);
            ok_dd = mean_drift_ok(cfg.arch_dd);
        } catch (const std::exception& e) {
            std::cerr << "analyze: invalid parameters at value " << format_double(v)
                      << ": " << e.what() << "\n";
            return kExitConfig;
        }
        row["stable_sd"] = ok_sd ? "yes" : "no";
        row["stable_dd"] = ok_dd ? "yes" : "no";
        if (ok_sd && ok_dd) {
            ++stable_points;
            const FidelityReport rep =
                compare_architectures(cfg.arch_sd, cfg.arch_dd, cfg.memory_sd, cfg.memory_dd);
            row["f1_avg"] = rep.f_avg_sd;
            row["f2_avg"] = rep.f_avg_dd;
            row["diff"] = rep.f_avg_sd - rep.f_avg_dd;
            row["winner"] = rep.winner == Winner::SD   ? "SD"
                            : rep.winner == Winner::DD ? "DD"
                                                       : "Tie";
            row["f_e_premove_sd"] = f_e_premove(cfg.arch_sd.lambda_m, cfg.memory_sd);
            row["f_e_premove_dd"] = f_e_premove(cfg.arch_dd.lambda_m, cfg.memory_dd);
            row["flag"] = "OK";
        } else {
            for (const char* k :
                 {"f1_avg", "f2_avg", "diff", "f_e_premove_sd", "f_e_premove_dd"})
                row[k] = "nan";
            row["winner"] = "-";
            row["flag"] = "UNSTABLE";
        }
        rows.push_back(std::move(row));
    }
    const std::vector<std::string> columns = {
        "variable", "value", "stable_sd", "stable_dd", "f1_avg", "f2_avg",
        "diff", "winner", "f_e_premove_sd", "f_e_premove_dd", "flag"};
    write_output(out_path, format == "json" ? rows_to_json(rows) : rows_to_csv(columns, rows));
    return stable_points == 0 ? kExitInfeasible : kExitOk;
}

void dump_samples(const std::string& prefix, const std::string& tag,
                  const std::vector<double>& xs) {
    std::ofstream f(prefix + "_" + tag + ".csv", std::ios::binary);
    for (double x : xs) f << format_double(x) << "\n";
}

int cmd_simulate(const ToolConfig& base, const std::string& out_path,
                 const std::string& format, std::optional<std::uint64_t> seed_override) {
    if (!base.has_sweep || base.sweep.values.empty()) {
        std::cerr << "simulate: config has no sweep values\n";
        return kExitConfig;
    }
    std::vector<json> rows;
    int stable_points = 0;
    for (size_t idx = 0; idx < base.sweep.values.size(); ++idx) {
        const double v = base.sweep.values[idx];
        ToolConfig cfg = base;
        try {
            apply_sweep_value(cfg, cfg.sweep.variable, v);
        } catch (const std::exception& e) {
            std::cerr << "simulate: " << e.what() << "\n";
            return kExitConfig;
        }
        json row;
        row["variable"] = cfg.sweep.variable;
        row["value"] = v;
        const bool ok_sd = mean_drift_ok(cfg.arch_sd);
        const bool ok_dd = mean_drift_ok(cfg.arch_dd);
        row["stable_sd"] = ok_sd ? "yes" : "no";
        row["stable_dd"] = ok_dd ? "yes" : "no";
        row["flag"] = (ok_sd && ok_dd) ? "OK" : "UNSTABLE";
        if (!(ok_sd && ok_dd)) {
            for (const char* k : {"f1_analytic", "f2_analytic", "f1_sim", "f1_sim_err",
                                  "f2_sim", "f2_sim_err", "fe_sd_sim", "fe_sd_sim_err",
                                  "fe_dd_sim", "fe_dd_sim_err"})
                row[k] = "nan";
            row["f1_check"] = row["f2_check"] = "-";
            rows.push_back(std::move(row));
            continue;
        }
        ++stable_points;
        const std::uint64_t master = seed_override ? *seed_override : cfg.sim_seed;

        auto run_arch = [&](const ArchParams& p, const MemoryParams& m,
                            std::uint64_t stream) {
            SimConfig sc;
            sc.params = p;
            sc.memory = m;
            sc.duration = cfg.sim_duration;
            sc.seed = stream_seed(master, stream + 1000 * idx);
            sc.replications = cfg.sim_replications;
            sc.warmup_fraction = cfg.sim_warmup_fraction;
            sc.record_samples = !cfg.samples_out.empty();
            NoiseChannel ch{ChannelKind::Composite, m};
            return run_replications(sc, ch);
        };
        const ReplicatedResult sd = run_arch(cfg.arch_sd, cfg.memory_sd, 1);
        const ReplicatedResult dd = run_arch(cfg.arch_dd, cfg.memory_dd, 2);
        row["f1_sim"] = sd.f_avg_mean;
        row["f1_sim_err"] = sd.f_avg_stderr;
        row["f2_sim"] = dd.f_avg_mean;
        row["f2_sim_err"] = dd.f_avg_stderr;
        row["fe_sd_sim"] = sd.f_e_mean;
        row["fe_sd_sim_err"] = sd.f_e_stderr;
        row["fe_dd_sim"] = dd.f_e_mean;
        row["fe_dd_sim_err"] = dd.f_e_stderr;
        if (cfg.arch_sd.mu_c_infinite() && cfg.arch_dd.mu_c_infinite()) {
            const double f1 = f1_avg(cfg.arch_sd, cfg.memory_sd);
            const double f2 = f2_avg(cfg.arch_dd, cfg.memory_dd);
            row["f1_analytic"] = f1;
            row["f2_analytic"] = f2;
            row["f1_check"] =
                std::abs(f1 - sd.f_avg_mean) < 3 * sd.f_avg_stderr ? "PASS" : "FAIL";
            row["f2_check"] =
                std::abs(f2 - dd.f_avg_mean) < 3 * dd.f_avg_stderr ? "PASS" : "FAIL";
        } else {
            row["f1_analytic"] = row["f2_analytic"] = "nan";
            row["f1_check"] = row["f2_check"] = "-";
        }
        if (!cfg.samples_out.empty() && !sd.runs.empty()) {
            dump_samples(cfg.samples_out, "sd_comp", sd.runs.front().comp_wait_samples);
            dump_samples(cfg.samples_out, "sd_move", sd.runs.front().move_wait_samples);
            dump_samples(cfg.samples_out, "dd_comp", dd.runs.front().comp_wait_samples);
            dump_samples(cfg.samples_out, "dd_move", dd.runs.front().move_wait_samples);
        }
        rows.push_back(std::move(row));
    }
    const std::vector<std::string> columns = {
        "variable", "value", "stable_sd", "stable_dd", "f1_analytic", "f2_analytic",
        "f1_sim", "f1_sim_err", "f2_sim", "f2_sim_err", "fe_sd_sim", "fe_sd_sim_err",
        "fe_dd_sim", "fe_dd_sim_err", "f1_check", "f2_check", "flag"};
    write_output(out_path, format == "json" ? rows_to_json(rows) : rows_to_csv(columns, rows));
    return stable_points == 0 ? kExitInfeasible : kExitOk;
}

json coeffs_to_json(const PostMoveCoefficients& c) {
    return json{{"constant", c.constant}, {"t1_coeff", c.t1_coeff}, {"t2_coeff", c.t2_coeff}};
}

int cmd_circuit(const ToolConfig& cfg, const std::string& out_path) {
    json rep;
    const GateNoiseTable& nt = cfg.gate_noise;
    const MemoryParams& mem = cfg.memory_sd;
    const double lambda_m = cfg.arch_sd.lambda_m;

    const PostMoveCoefficients sd_circ = sd_post_move_coefficients_circuit(nt);
    const PostMoveCoefficients dd_circ = dd_post_move_coefficients_circuit(nt);
    const PostMoveCoefficients printed = post_move_coefficients_printed(nt);
    const PostMoveCoefficients reference = post_move_coefficients_reference();

    GateNoiseTable with_einit = nt;
    with_einit.include_electron_init = true;
    const PostMoveCoefficients sd_einit = sd_post_move_coefficients_circuit(with_einit);

    rep["sd"]["circuit_coefficients"] = coeffs_to_json(sd_circ);
    rep["sd"]["circuit_coefficients_with_electron_init"] = coeffs_to_json(sd_einit);
    rep["sd"]["printed_formula_coefficients"] = coeffs_to_json(printed);
    rep["sd"]["reference_coefficients"] = coeffs_to_json(reference);
    const double fe0_circ = sd_circ.ent_fidelity(0.0, mem);
    const double fe0_printed = printed.ent_fidelity(0.0, mem);
    const double fe0_ref = reference.ent_fidelity(0.0, mem);
    rep["sd"]["fe_t0"] = {{"circuit", fe0_circ},
                          {"circuit_with_electron_init", sd_einit.ent_fidelity(0.0, mem)},
                          {"printed_formula", fe0_printed},
                          {"reference", fe0_ref}};
    rep["sd"]["discrepancy"] = {
        {"printed_vs_circuit_fe_t0", std::abs(fe0_printed - fe0_circ)},
        {"reference_vs_circuit_fe_t0", std::abs(fe0_ref - fe0_circ)}};
    rep["dd"]["circuit_coefficients"] = coeffs_to_json(dd_circ);
    rep["dd"]["fe_t0"] = dd_circ.ent_fidelity(0.0, mem);
    rep["comparison"]["sd_minus_dd_fe_t0"] = fe0_circ - dd_circ.ent_fidelity(0.0, mem);

    json sweep = json::array();
    std::vector<double> lms;
    if (cfg.has_sweep && cfg.sweep.variable == "lambda_m")
        lms = cfg.sweep.values;
    else
        for (double x = lambda_m / 100.0; x <= lambda_m * 100.0; x *= 10.0) lms.push_back(x);
    for (double lm : lms) {
        sweep.push_back(json{{"lambda_m", lm},
                             {"fe_avg_circuit_sd", sd_circ.avg_ent_fidelity(lm, mem)},
                             {"fe_avg_circuit_dd", dd_circ.avg_ent_fidelity(lm, mem)},
                             {"fe_avg_printed", printed.avg_ent_fidelity(lm, mem)},
                             {"fe_avg_reference", reference.avg_ent_fidelity(lm, mem)}});
    }
    rep["lambda_m_sweep"] = sweep;
    rep["asymptote"] = {{"fe_inf_circuit", fe0_circ},
                        {"fe_inf_reference", fe0_ref},
                        {"abs_diff", std::abs(fe0_circ - fe0_ref)}};

    const CircuitOutcome ideal_sd =
        sd_move_circuit(GateNoiseTable::noiseless(), MemoryParams{1, 1, 1}, 0.0);
    const CircuitOutcome ideal_dd =
        dd_move_circuit(GateNoiseTable::noiseless(), MemoryParams{1, 1, 1}, 0.0);
    rep["ideal_transfer_check"] = {{"sd_fidelity", ideal_sd.post_move_ent_fidelity},
                                   {"dd_fidelity", ideal_dd.post_move_ent_fidelity}};
    write_output(out_path, rep.dump(2) + "\n");
    return kExitOk;
}

int cmd_selftest(std::uint64_t seed) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    {
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            MemoryParams m;
            m.T = 0.01 * std::pow(10.0, 3 * u(rng));
            m.T1 = 0.01 * std::pow(10.0, 3 * u(rng));
            m.T2 = m.T1 * (0.1 + 1.9 * u(rng));
            const double t = -std::log(u(rng) + 1e-12) * m.T1;
            for (ChannelKind k : {ChannelKind::Depolarizing, ChannelKind::Dephasing,
                                  ChannelKind::AmplitudeDamping, ChannelKind::Composite}) {
                NoiseChannel ch{k, m};
                const double closed = gate_fidelity_closed(ch, t);
                worst = std::max(worst, std::abs(closed - gate_fidelity_bowdrey(ch, t)));
                worst = std::max(worst, std::abs(closed - gate_fidelity_choi_oracle(ch, t)));
            }
        }
        check("fidelity closed == bowdrey == choi (200 draws, tol 1e-10)", worst < 1e-10);
    }
    {
        double worst = 0;
        for (int i = 0; i < 50; ++i) {
            ArchParams p;
            p.mu_e = 1 + 1999 * u(rng);
            p.lambda_m = 1 + 1999 * u(rng);
            p.mu_m = 1 + 1999 * u(rng);
            const double cap = 1.0 / (1 / p.mu_e + 1 / p.lambda_m + 1 / p.mu_m);
            p.lambda_e = cap * (0.05 + 0.9 * u(rng));
            p.lambda_c = 1;
            p.mu_c = std::numeric_limits<double>::infinity();
            const QbdBlocks b = build_blocks(p);
            const Matrix3d r = rate_matrix(p);
            worst = std::max(worst, max_abs(b.a2 + r * b.a1 + r * r * b.a0) /
                                        std::max({p.mu_e, p.lambda_m, p.mu_m}));
            worst = std::max(worst, max_abs(r - rate_matrix_via_inverse(p)));
        }
        check("rate matrix quadratic + two routes (50 draws)", worst < 1e-10);
    }
    {
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            ArchParams p;
            p.mu_e = 1 + 199 * u(rng);
            p.lambda_m = 1 + 199 * u(rng);
            p.mu_m = 1 + 199 * u(rng);
            const double cap = 1.0 / (1 / p.mu_e + 1 / p.lambda_m + 1 / p.mu_m);
            p.lambda_e = cap * (0.05 + 0.9 * u(rng));
            p.lambda_c = 1;
            p.mu_c = std::numeric_limits<double>::infinity();
            MemoryParams m;
            m.T1 = 0.01 + u(rng);
            m.T2 = m.T1 * (0.1 + 0.9 * u(rng));
            NoiseChannel ch{ChannelKind::Composite, m};
            const WaitingTimeDist w = waiting_dist_sd(p);
            worst = std::max(worst, std::abs(avg_fidelity_over_dist(w, ch) -
                                             avg_fidelity_over_dist_quadrature(w, ch)));
            worst = std::max(worst, std::abs(avg_fidelity_over_dist(w, ch) - f1_avg(p, m)));
        }
        check("mixture integral == quadrature == closed forms (20 draws)", worst < 1e-9);
    }
    {
        const CircuitOutcome sd =
            sd_move_circuit(GateNoiseTable::noiseless(), MemoryParams{1, 1, 1}, 0.0);
        const CircuitOutcome dd =
            dd_move_circuit(GateNoiseTable::noiseless(), MemoryParams{1, 1, 1}, 0.0);
        check("ideal move circuits are exact transfers",
              std::abs(sd.post_move_ent_fidelity - 1) < 1e-10 &&
                  std::abs(dd.post_move_ent_fidelity - 1) < 1e-10);
    }
    return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Networked quantum processor architecture evaluation"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "csv";
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("--config", config_path, "JSON config path")->required();
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--seed", seed, "override the master seed");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* analyze = app.add_subcommand("analyze", "closed-form fidelity sweep");
    add_common(analyze, true);
    CLI::App* simulate = app.add_subcommand("simulate", "discrete-event simulation sweep");
    add_common(simulate, true);
    CLI::App* circuit = app.add_subcommand("circuit", "NV move-circuit fidelity report");
    add_common(circuit, true);
    CLI::App* selftest = app.add_subcommand("selftest", "oracle equivalence self-test");
    add_common(selftest, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }

    try {
        if (selftest->parsed()) return cmd_selftest(seed.value_or(12345));
        const ToolConfig cfg = load_config(config_path);
        if (analyze->parsed()) return cmd_analyze(cfg, out_path, format);
        if (simulate->parsed()) return cmd_simulate(cfg, out_path, format, seed);
        if (circuit->parsed()) return cmd_circuit(cfg, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
