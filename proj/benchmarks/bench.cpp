#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "kinebci/decoder.hpp"
#include "kinebci/gesture.hpp"
#include "kinebci/random.hpp"
#include "kinebci/session.hpp"
#include "kinebci/signal.hpp"
#include "kinebci/synth.hpp"

using namespace kinebci;

namespace {

Recording white_noise(int n_channels, std::size_t samples, std::uint64_t seed) {
    Recording rec;
    rec.cfg.n_channels = n_channels;
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        std::vector<double> channels(static_cast<std::size_t>(n_channels));
        for (double& c : channels)
            c = rng.gaussian();
        rec.append(std::move(channels), rng.gaussian(), rng.gaussian(), 0.0, 0.0,
                   Phase::training, TargetSide::none);
    }
    return rec;
}

void acquisition_filter_step(benchmark::State& state) {
    AcquisitionConfig cfg;
    AcquisitionFilter filter(cfg);
    EegFrame frame;
    frame.channels.assign(static_cast<std::size_t>(cfg.n_channels), 0.25);
    for (auto _ : state) {
        ++frame.t;
        benchmark::DoNotOptimize(filter.step(frame));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(acquisition_filter_step);

void lag_window_predict(benchmark::State& state) {
    const Recording rec = white_noise(14, 4096, 1);
    const DecoderModel model = fit(build_design(rec, 5));
    LagWindow window(14, 5);
    std::size_t i = 0;
    // Keep feeding the same frames with fresh timestamps.
    EegFrame frame;
    for (auto _ : state) {
        frame = rec.frames[i % rec.size()];
        frame.t = static_cast<std::int64_t>(i++);
        window.push(frame);
        if (window.warm())
            benchmark::DoNotOptimize(predict(model, window));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(lag_window_predict);

void design_and_fit(benchmark::State& state) {
    // Full-size calibration problem: 5 x 60 s at 128 Hz, 85 columns.
    const Recording rec = white_noise(14, 38400, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit(build_design(rec, 5)));
    }
}
BENCHMARK(design_and_fit)->Unit(benchmark::kMillisecond);

void closed_loop_run(benchmark::State& state) {
    const auto subject = SyntheticSubject::random(14, 5, 0.001, 3);
    SessionConfig cfg;
    cfg.n_training_trials = 1;
    cfg.trial_duration_s = 30.0;
    const Recording training = run_training_phase(cfg, subject, 4);
    const DecoderModel model = calibrate(training);
    const IntentPolicy policy;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_test_phase(model, subject, policy, cfg, ++seed));
    }
}
BENCHMARK(closed_loop_run)->Unit(benchmark::kMillisecond);

void replay_commands(benchmark::State& state) {
    Recording rec;
    rec.cfg.n_channels = 1;
    Rng rng(5);
    double x = 0.0;
    for (int i = 0; i < 38400; ++i) {
        x += 0.05 * rng.gaussian();
        x = x > 1.0 ? 1.0 : (x < -1.0 ? -1.0 : x);
        rec.append({0.0}, 0.0, 0.0, x, 0.0, Phase::test, TargetSide::none);
    }
    const ReplayConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(replay(rec, cfg));
    }
    state.SetItemsProcessed(state.iterations() * 38400);
}
BENCHMARK(replay_commands)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
