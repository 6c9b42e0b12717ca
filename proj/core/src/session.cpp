#include "kinebci/session.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kinebci/errors.hpp"
#include "kinebci/random.hpp"

namespace kinebci {

namespace {
constexpr std::uint64_t kTargetStream = 0x7a11;
constexpr std::uint64_t kNoiseStream = 0x40e5;
} // namespace

Axis active_axis(SessionAxis axis) {
    return axis == SessionAxis::horizontal ? Axis::x : Axis::y;
}

void SessionConfig::validate() const {
    acquisition.validate();
    if (n_training_trials < 1)
        throw ConfigError("need at least one training trial");
    if (!(trial_duration_s > 0.0))
        throw ConfigError("trial duration must be positive");
    if (!(test_timeout_s > 0.0))
        throw ConfigError("test timeout must be positive");
    if (trials_per_run < 1)
        throw ConfigError("need at least one trial per run");
    if (!(target_halfwidth > 0.0 && target_halfwidth < 1.0))
        throw ConfigError("target halfwidth must lie in (0, 1)");
    if (n_lags < 0)
        throw ConfigError("lag count must be nonnegative");
    if (!(prerun_s > 0.0) ||
        std::llround(prerun_s * acquisition.fs) < static_cast<long long>(n_lags) + 1)
        throw ConfigError("pre-run must cover at least n_lags+1 samples to warm the decoder");
}

Recording run_training_phase(const SessionConfig& cfg, const SyntheticSubject& subject,
                             std::uint64_t seed) {
    cfg.validate();
    if (subject.n_channels() != cfg.acquisition.n_channels)
        throw ConfigError("subject channel count does not match the session acquisition config");

    const Axis axis = active_axis(cfg.axis);
    Recording rec;
    rec.cfg = cfg.acquisition;
    auto enc = subject.encoder(mix_seed(seed, kNoiseStream));
    for (int trial = 0; trial < cfg.n_training_trials; ++trial) {
        const KinematicsTrace trace =
            gen_pursuit_trajectory(cfg.trial_duration_s, cfg.acquisition.fs, axis,
                                   mix_seed(seed, static_cast<std::uint64_t>(trial)));
        for (std::size_t i = 0; i < trace.size(); ++i) {
            EegFrame frame = enc.step(trace.u[i], trace.v[i]);
            rec.append(std::move(frame.channels), trace.u[i], trace.v[i], trace.x[i],
                       trace.y[i], Phase::training, TargetSide::none);
        }
    }
    return rec;
}

DecoderModel calibrate(const Recording& recording, const FitOptions& opts, int n_lags) {
    return fit(build_design(recording, n_lags), opts);
}

TestPhaseResult run_test_phase(const DecoderModel& model, const SyntheticSubject& subject,
                               const IntentPolicy& policy, const SessionConfig& cfg,
                               std::uint64_t seed) {
    cfg.validate();
    policy.validate();
    model.validate();
    if (subject.n_channels() != cfg.acquisition.n_channels)
        throw ConfigError("subject channel count does not match the session acquisition config");
    if (model.n_channels != cfg.acquisition.n_channels || model.n_lags != cfg.n_lags)
        throw ConfigError("model dimensions do not match the session config");
    const Axis axis = active_axis(cfg.axis);
    if ((axis == Axis::x && !model.has_x) || (axis == Axis::y && !model.has_y))
        throw ConfigError("model does not cover the session axis");

    TestPhaseResult result;
    result.recording.cfg = cfg.acquisition;
    Rng target_rng(mix_seed(seed, kTargetStream));
    auto enc = subject.encoder(mix_seed(seed, kNoiseStream));
    LagWindow window(model.n_channels, model.n_lags);
    const double fs = cfg.acquisition.fs;
    const double dt = 1.0 / fs;

    // Idle decoding before trial 1: the subject intends nothing and the
    // cursor stays at the origin while the lag window warms up.
    const auto prerun_samples = std::llround(cfg.prerun_s * fs);
    for (long long i = 0; i < prerun_samples; ++i) {
        EegFrame frame = enc.step(0.0, 0.0);
        window.push(frame);
        Velocity vel{0.0, 0.0};
        if (window.warm())
            vel = predict(model, window);
        result.recording.append(std::move(frame.channels), vel.u, vel.v, 0.0, 0.0,
                                Phase::prerun, TargetSide::none);
    }

    const auto timeout_samples = std::llround(cfg.test_timeout_s * fs);
    for (int t = 0; t < cfg.trials_per_run; ++t) {
        Trial trial;
        const bool positive_side = target_rng.below(2) == 1;
        if (axis == Axis::x)
            trial.side = positive_side ? TargetSide::right : TargetSide::left;
        else
            trial.side = positive_side ? TargetSide::up : TargetSide::down;
        const double target_center = positive_side ? 1.0 : -1.0;

        double pos = 0.0; // cursor starts each trial at the origin
        for (long long i = 0; i < timeout_samples; ++i) {
            const double v_intent = intend(policy, pos, target_center);
            EegFrame frame = axis == Axis::x ? enc.step(v_intent, 0.0) : enc.step(0.0, v_intent);
            window.push(frame);
            const Velocity vel = predict(model, window);
            const double decoded = axis == Axis::x ? vel.u : vel.v;
            pos = std::clamp(pos + decoded * dt, -1.0, 1.0);
            result.recording.append(std::move(frame.channels), vel.u, vel.v,
                                    axis == Axis::x ? pos : 0.0, axis == Axis::y ? pos : 0.0,
                                    Phase::test, trial.side);
            trial.trace.push_back(pos);
            if (std::abs(pos - target_center) <= cfg.target_halfwidth) {
                trial.hit = true;
                trial.time_to_hit_s = static_cast<double>(i + 1) * dt;
                break;
            }
        }
        result.trials.push_back(std::move(trial));
    }
    return result;
}

RunStats compute_stats(const std::vector<std::vector<Trial>>& runs) {
    if (runs.empty())
        throw ValidationError("no runs to summarize");

    RunStats stats;
    for (const auto& run : runs) {
        if (run.empty())
            throw ValidationError("empty run");
        std::size_t hits = 0;
        for (const Trial& t : run)
            hits += t.hit ? 1 : 0;
        stats.run_rates.push_back(static_cast<double>(hits) / static_cast<double>(run.size()));
        stats.n_trials += run.size();
    }

    double sum = 0.0;
    for (double r : stats.run_rates)
        sum += r;
    stats.mean_rate = sum / static_cast<double>(stats.run_rates.size());

    if (stats.run_rates.size() > 1) {
        double ss = 0.0;
        for (double r : stats.run_rates) {
            const double d = r - stats.mean_rate;
            ss += d * d;
        }
        stats.std_rate = std::sqrt(ss / static_cast<double>(stats.run_rates.size() - 1));
        stats.std_defined = true;
    }
    return stats;
}

} // namespace kinebci
