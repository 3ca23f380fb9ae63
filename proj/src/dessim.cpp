#include "qnet/dessim.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <queue>
#include <random>
#include <stdexcept>

namespace qnet {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed ^ mix64(index + 1));
}

void RunningStat::add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
}

double RunningStat::variance() const {
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
}

double RunningStat::stddev() const { return std::sqrt(variance()); }

double RunningStat::std_error() const {
    return count > 0 ? stddev() / std::sqrt(static_cast<double>(count)) : 0.0;
}

void SimConfig::validate() const {
    params.validate();
    if (!(duration > 0)) throw std::invalid_argument("SimConfig: duration must be > 0");
    if (replications < 1) throw std::invalid_argument("SimConfig: replications >= 1");
    if (!(warmup_fraction >= 0 && warmup_fraction < 1))
        throw std::invalid_argument("SimConfig: warmup_fraction in [0,1)");
}

namespace {

// Platform-stable exponential sampling (mt19937_64 is specified bit-exactly;
// std::exponential_distribution is not).
class ExpSampler {
  public:
    explicit ExpSampler(std::uint64_t seed) : rng_(seed) {}

    double exp(double rate) {
        const double u = ((rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        return -std::log(u) / rate;
    }

  private:
    std::mt19937_64 rng_;
};

enum class EvType : std::uint8_t {
    EntArrival,
    CompArrival,
    GenDone,
    MoveRequest,
    MoveDone,
    CompDone,
};

struct Event {
    double time;
    std::uint64_t seq;
    EvType type;

    bool operator>(const Event& o) const {
        return time != o.time ? time > o.time : seq > o.seq;
    }
};

enum class JobKind : std::uint8_t { Generation, Move, Computation };

struct Job {
    JobKind kind;
    double ready_time;   // arrival time for computations
};

// Head-of-line entanglement request stage. Stage 3 covers move execution only;
// the gap between a move request and its execution start (finite mu_c) is
// attributed to stage 2.
enum Phase { kIdle = 0, kGen = 1, kWaitMove = 2, kMoving = 3 };

class Engine {
  public:
    Engine(const SimConfig& cfg, const NoiseChannel& channel)
        : cfg_(cfg), channel_(channel), rng_(cfg.seed), sd_(cfg.params.arch == Arch::SD),
          inf_c_(cfg.params.mu_c_infinite()) {}

    SimResult run() {
        const ArchParams& p = cfg_.params;
        warmup_ = cfg_.warmup_fraction * cfg_.duration;
        sample_dt_ = cfg_.duration / static_cast<double>(cfg_.queue_sample_points);
        next_sample_ = 0.0;
        schedule(rng_.exp(p.lambda_e), EvType::EntArrival);
        if (p.lambda_c > 0) schedule(rng_.exp(p.lambda_c), EvType::CompArrival);
        while (!events_.empty()) {
            const Event ev = events_.top();
            if (ev.time > cfg_.duration) break;
            events_.pop();
            advance_clock(ev.time);
            dispatch_event(ev);
        }
        advance_clock(cfg_.duration);
        finalize();
        return std::move(res_);
    }

  private:
    void schedule(double dt, EvType type) {
        events_.push(Event{now_ + dt, seq_++, type});
    }

    void advance_clock(double t) {
        while (next_sample_ <= t && next_sample_ <= cfg_.duration) {
            if (res_.queue_length_timeseries.size() < cfg_.queue_sample_points + 1)
                res_.queue_length_timeseries.emplace_back(next_sample_,
                                                          static_cast<double>(queue_n_));
            next_sample_ += sample_dt_;
        }
        const double a = std::max(last_change_, warmup_);
        const double b = std::min(t, cfg_.duration);
        if (b > a) phase_time_[phase_] += b - a;
        last_change_ = t;
        now_ = t;
    }

    void set_phase(Phase ph) { phase_ = ph; }

    void monitor() {
        // SD serializes everything; DD forbids move || computation.
        const int active = (gen_running_ ? 1 : 0) + (move_running_ ? 1 : 0) +
                           (comp_running_ ? 1 : 0);
        if (sd_ && active > 1) ++res_.activity_violations;
        if (!sd_ && move_running_ && comp_running_) ++res_.activity_violations;
    }

    void record_comp_wait(double arrival, double start) {
        if (arrival < warmup_) return;
        const double w = start - arrival;
        res_.comp_wait.add(w);
        res_.comp_fidelity.add(gate_fidelity_closed(channel_, w));
        ++res_.comp_recorded;
        if (cfg_.record_samples && res_.comp_wait_samples.size() < cfg_.max_samples)
            res_.comp_wait_samples.push_back(w);
    }

    void record_move_wait(double stage2_start, double exec_start) {
        if (stage2_start < warmup_) return;
        const double w = exec_start - stage2_start;
        res_.move_wait.add(w);
        res_.move_ent_fidelity.add(
            ent_fidelity_from_gate(gate_fidelity_closed(channel_, w), 2));
        if (cfg_.record_samples && res_.move_wait_samples.size() < cfg_.max_samples)
            res_.move_wait_samples.push_back(w);
    }

    // ---- infinite mu_c ----

    void flush_pending() {
        for (double arr : pending_comps_) record_comp_wait(arr, now_);
        pending_comps_.clear();
    }

    bool comp_blocked() const {
        if (sd_) return phase_ == kGen || phase_ == kMoving;
        return phase_ == kMoving;
    }

    // ---- finite mu_c server ----

    void try_dispatch() {
        if (server_busy_) return;
        if (!move_queue_.empty()) {
            const Job j = move_queue_.front();
            move_queue_.pop_front();
            start_move(j);
            return;
        }
        if (!fifo_queue_.empty()) {
            const Job j = fifo_queue_.front();
            fifo_queue_.pop_front();
            if (j.kind == JobKind::Computation) {
                server_busy_ = true;
                comp_running_ = true;
                monitor();
                record_comp_wait(j.ready_time, now_);
                schedule(rng_.exp(cfg_.params.mu_c), EvType::CompDone);
            } else {
                server_busy_ = true;
                gen_running_ = true;
                monitor();
                set_phase(kGen);
                schedule(rng_.exp(cfg_.params.mu_e), EvType::GenDone);
            }
        }
    }

    void start_move(const Job& j) {
        server_busy_ = true;
        move_running_ = true;
        monitor();
        record_move_wait(stage2_start_, now_);
        set_phase(kMoving);
        schedule(rng_.exp(cfg_.params.mu_m), EvType::MoveDone);
        (void)j;
    }

    void head_becomes_ready() {
        // next entanglement request starts its generation stage
        if (sd_ && !inf_c_) {
            set_phase(kGen);  // waiting for the server still counts as stage 1
            fifo_queue_.push_back(Job{JobKind::Generation, now_});
            try_dispatch();
        } else {
            set_phase(kGen);
            gen_running_ = true;
            monitor();
            schedule(rng_.exp(cfg_.params.mu_e), EvType::GenDone);
        }
    }

    void dispatch_event(const Event& ev) {
        const ArchParams& p = cfg_.params;
        switch (ev.type) {
            case EvType::EntArrival:
                ++res_.ent_arrived;
                ++queue_n_;
                if (queue_n_ == 1) head_becomes_ready();
                schedule(rng_.exp(p.lambda_e), EvType::EntArrival);
                break;

            case EvType::CompArrival:
                ++res_.comp_arrived;
                if (inf_c_) {
                    if (comp_blocked())
                        pending_comps_.push_back(now_);
                    else
                        record_comp_wait(now_, now_);
                } else {
                    fifo_queue_.push_back(Job{JobKind::Computation, now_});
                    try_dispatch();
                }
                schedule(rng_.exp(p.lambda_c), EvType::CompArrival);
                break;

            case EvType::GenDone:
                gen_running_ = false;
                set_phase(kWaitMove);
                stage2_start_ = now_;
                schedule(rng_.exp(p.lambda_m), EvType::MoveRequest);
                if (inf_c_) {
                    if (sd_) flush_pending();
                } else if (sd_) {
                    // generation occupied the single SD processor
                    server_busy_ = false;
                    try_dispatch();
                }
                break;

            case EvType::MoveRequest:
                if (inf_c_) {
                    record_move_wait(stage2_start_, now_);
                    set_phase(kMoving);
                    move_running_ = true;
                    monitor();
                    schedule(rng_.exp(p.mu_m), EvType::MoveDone);
                } else {
                    // priority over queued computations; an in-service
                    // computation is never preempted
                    move_queue_.push_back(Job{JobKind::Move, now_});
                    try_dispatch();
                }
                break;

            case EvType::MoveDone:
                move_running_ = false;
                ++res_.ent_completed;
                --queue_n_;
                if (!inf_c_) server_busy_ = false;
                if (queue_n_ > 0)
                    head_becomes_ready();
                else
                    set_phase(kIdle);
                if (inf_c_) {
                    flush_pending();
                } else {
                    try_dispatch();
                }
                break;

            case EvType::CompDone:
                comp_running_ = false;
                server_busy_ = false;
                try_dispatch();
                break;
        }
    }

    void finalize() {
        const double window = cfg_.duration - warmup_;
        for (int k = 1; k <= 3; ++k)
            res_.phase_time_fractions[k - 1] = phase_time_[k] / window;
        res_.idle_fraction = phase_time_[0] / window;
        res_.ent_in_system = queue_n_;
        res_.f_avg_estimate = res_.comp_fidelity.mean;
        res_.f_avg_stderr = res_.comp_fidelity.std_error();
        res_.f_e_estimate = res_.move_ent_fidelity.mean;
        res_.f_e_stderr = res_.move_ent_fidelity.std_error();
    }

    SimConfig cfg_;
    NoiseChannel channel_;
    ExpSampler rng_;
    bool sd_;
    bool inf_c_;

    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
    std::uint64_t seq_ = 0;
    double now_ = 0.0, last_change_ = 0.0, warmup_ = 0.0;
    double sample_dt_ = 0.0, next_sample_ = 0.0;

    std::uint64_t queue_n_ = 0;
    Phase phase_ = kIdle;
    double phase_time_[4] = {0, 0, 0, 0};
    double stage2_start_ = 0.0;

    std::deque<double> pending_comps_;  // infinite mu_c: blocked computations
    std::deque<Job> fifo_queue_;        // finite mu_c: computations (+ SD generation)
    std::deque<Job> move_queue_;        // finite mu_c: priority moves
    bool server_busy_ = false;
    bool gen_running_ = false, move_running_ = false, comp_running_ = false;

    SimResult res_;
};

}  // namespace

SimResult simulate(const SimConfig& cfg, const NoiseChannel& channel) {
    cfg.validate();
    if (cfg.params.mu_c_infinite() && !mean_drift_ok(cfg.params))
        std::fprintf(stderr,
                     "warning: mean drift condition violated, run is non-stationary\n");
    Engine engine(cfg, channel);
    return engine.run();
}

FidelityEstimate estimate_fidelities(const SimResult& result, const NoiseChannel& channel) {
    if (result.comp_wait_samples.empty() || result.move_wait_samples.empty())
        throw std::invalid_argument("estimate_fidelities: empty sample sets");
    RunningStat favg, fe;
    for (double w : result.comp_wait_samples) favg.add(gate_fidelity_closed(channel, w));
    for (double w : result.move_wait_samples)
        fe.add(ent_fidelity_from_gate(gate_fidelity_closed(channel, w), 2));
    return {favg.mean, favg.std_error(), fe.mean, fe.std_error()};
}

ReplicatedResult run_replications(const SimConfig& cfg, const NoiseChannel& channel) {
    cfg.validate();
    ReplicatedResult agg;
    RunningStat favg, fe;
    RunningStat phases[3];
    for (int r = 0; r < cfg.replications; ++r) {
        SimConfig one = cfg;
        one.seed = stream_seed(cfg.seed, static_cast<std::uint64_t>(r));
        one.replications = 1;
        SimResult res = simulate(one, channel);
        favg.add(res.f_avg_estimate);
        fe.add(res.f_e_estimate);
        for (int k = 0; k < 3; ++k) phases[k].add(res.phase_time_fractions[k]);
        agg.total_comp_samples += res.comp_fidelity.count;
        agg.total_move_samples += res.move_ent_fidelity.count;
        agg.runs.push_back(std::move(res));
    }
    agg.f_avg_mean = favg.mean;
    agg.f_avg_stderr = favg.std_error();
    agg.f_e_mean = fe.mean;
    agg.f_e_stderr = fe.std_error();
    for (int k = 0; k < 3; ++k) {
        agg.phase_mean[k] = phases[k].mean;
        agg.phase_stderr[k] = phases[k].std_error();
    }
    return agg;
}

}  // namespace qnet
