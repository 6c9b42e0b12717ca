#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <deque>
#include <vector>

#include "kinebci/errors.hpp"
#include "kinebci/random.hpp"
#include "kinebci/signal.hpp"

using namespace kinebci;

namespace {

EegFrame frame_at(std::int64_t t, std::vector<double> channels) {
    EegFrame f;
    f.t = t;
    f.channels = std::move(channels);
    return f;
}

// Runs a scalar series through a fresh single-channel acquisition chain.
std::vector<double> filter_series(const std::vector<double>& in, const AcquisitionConfig& cfg) {
    AcquisitionFilter filter(cfg);
    std::vector<double> out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
        out.push_back(filter.step(frame_at(static_cast<std::int64_t>(i), {in[i]})).channels[0]);
    return out;
}

AcquisitionConfig mono_config() {
    AcquisitionConfig cfg;
    cfg.n_channels = 1;
    return cfg;
}

} // namespace

TEST_CASE("acquisition config defaults and validation") {
    AcquisitionConfig cfg;
    CHECK(cfg.fs == 128.0);
    CHECK(cfg.hp_cutoff == 0.16);
    CHECK(cfg.lp_cutoff == 30.0);
    CHECK(cfg.n_channels == 14);
    CHECK_NOTHROW(cfg.validate());

    AcquisitionConfig bad = cfg;
    bad.hp_cutoff = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.hp_cutoff = 31.0; // above lp
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.lp_cutoff = 64.0; // at Nyquist
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.n_channels = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("high-pass stage rejects DC exactly in its coefficients") {
    const OnePoleHighPass hp = OnePoleHighPass::at(0.16, 128.0);
    // DC gain (b0 + b1) / (1 + a1) must vanish through the numerator.
    CHECK(hp.b0() + hp.b1() == 0.0);
}

TEST_CASE("constant input decays below one percent through the chain") {
    const double c = 2.5;
    const AcquisitionConfig cfg = mono_config();
    const auto samples = static_cast<std::size_t>(10.0 / cfg.hp_cutoff * cfg.fs);
    const std::vector<double> in(samples, c);
    const std::vector<double> out = filter_series(in, cfg);
    for (std::size_t i = samples - 128; i < samples; ++i)
        CHECK(std::abs(out[i]) < 0.01 * c);
}

TEST_CASE("all-zero input stays all-zero from zeroed state") {
    AcquisitionFilter filter(AcquisitionConfig{});
    for (int t = 0; t < 64; ++t) {
        const EegFrame out = filter.step(frame_at(t, std::vector<double>(14, 0.0)));
        for (double v : out.channels)
            CHECK(v == 0.0);
    }
}

TEST_CASE("chain gain at the low-pass cutoff is -3 dB within half a dB") {
    const AcquisitionConfig cfg = mono_config();
    const double f = cfg.lp_cutoff;
    const auto samples = static_cast<std::size_t>(10.0 * cfg.fs);
    std::vector<double> in(samples);
    for (std::size_t i = 0; i < samples; ++i)
        in[i] = std::sin(2.0 * M_PI * f * static_cast<double>(i) / cfg.fs);
    const std::vector<double> out = filter_series(in, cfg);

    // Quadrature demodulation over the final second: exactly 30 cycles at
    // fs=128, so the estimate is exact for a steady-state sinusoid.
    std::complex<double> acc = 0.0;
    const std::size_t tail = static_cast<std::size_t>(cfg.fs);
    for (std::size_t i = samples - tail; i < samples; ++i)
        acc += out[i] * std::polar(1.0, -2.0 * M_PI * f * static_cast<double>(i) / cfg.fs);
    const double amplitude = 2.0 * std::abs(acc) / static_cast<double>(tail);
    const double gain_db = 20.0 * std::log10(amplitude);
    CHECK(gain_db > -3.5);
    CHECK(gain_db < -2.5);
}

TEST_CASE("filtering is linear from zero state") {
    const AcquisitionConfig cfg = mono_config();
    Rng rng(401);
    std::vector<double> x(256), y(256), mix(256);
    const double a = 0.7, b = -1.3;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.gaussian();
        y[i] = rng.gaussian();
        mix[i] = a * x[i] + b * y[i];
    }
    const auto fx = filter_series(x, cfg);
    const auto fy = filter_series(y, cfg);
    const auto fmix = filter_series(mix, cfg);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::abs(fmix[i] - (a * fx[i] + b * fy[i])) < 1e-9);
}

TEST_CASE("filtering is causal: the future cannot change the past") {
    const AcquisitionConfig cfg = mono_config();
    Rng rng(402);
    std::vector<double> full(200), truncated;
    for (double& v : full)
        v = rng.gaussian();
    const std::size_t cut = 120;
    truncated.assign(full.begin(), full.begin() + cut);
    for (std::size_t i = cut; i < full.size(); ++i)
        truncated.push_back(full[i] + 100.0); // diverge after the cut

    const auto out_full = filter_series(full, cfg);
    const auto out_trunc = filter_series(truncated, cfg);
    for (std::size_t i = 0; i < cut; ++i)
        CHECK(out_full[i] == out_trunc[i]);
}

TEST_CASE("filter reset returns to the all-zero state") {
    AcquisitionFilter filter(mono_config());
    for (int t = 0; t < 50; ++t)
        filter.step(frame_at(t, {1.0}));
    filter.reset();

    AcquisitionFilter fresh(mono_config());
    Rng rng(403);
    for (int t = 0; t < 50; ++t) {
        const double v = rng.gaussian();
        CHECK(filter.step(frame_at(t, {v})).channels[0] ==
              fresh.step(frame_at(t, {v})).channels[0]);
    }
}

TEST_CASE("filter rejects a channel-count mismatch") {
    AcquisitionFilter filter(AcquisitionConfig{});
    CHECK_THROWS_AS(filter.step(frame_at(0, {1.0, 2.0})), ConfigError);
}

TEST_CASE("lag window warms after exactly K+1 frames") {
    LagWindow window(2, 5);
    for (int t = 0; t < 5; ++t) {
        window.push(frame_at(t, {1.0 * t, 2.0 * t}));
        CHECK_FALSE(window.warm());
    }
    window.push(frame_at(5, {5.0, 10.0}));
    CHECK(window.warm());
    CHECK(window.at_lag(0).t == 5);
    CHECK(window.at_lag(5).t == 0);
}

TEST_CASE("lag window keeps the newest K+1 frames") {
    LagWindow window(1, 5);
    for (int t = 0; t < 10; ++t)
        window.push(frame_at(t, {static_cast<double>(t)}));
    for (int k = 0; k <= 5; ++k)
        CHECK(window.at_lag(k).t == 9 - k);
}

TEST_CASE("lag window matches a brute-force sliding window") {
    const int n_lags = 3;
    LagWindow window(2, n_lags);
    std::deque<EegFrame> reference;
    Rng rng(404);
    for (int t = 0; t < 40; ++t) {
        const EegFrame f = frame_at(t, {rng.gaussian(), rng.gaussian()});
        window.push(f);
        reference.push_front(f);
        if (reference.size() > static_cast<std::size_t>(n_lags + 1))
            reference.pop_back();
        CHECK(window.size() == static_cast<int>(reference.size()));
        for (std::size_t k = 0; k < reference.size(); ++k) {
            CHECK(window.at_lag(static_cast<int>(k)).t == reference[k].t);
            CHECK(window.at_lag(static_cast<int>(k)).channels == reference[k].channels);
        }
    }
}

TEST_CASE("lag window rejects out-of-order and mis-sized frames") {
    LagWindow window(2, 2);
    window.push(frame_at(0, {0.0, 0.0}));
    window.push(frame_at(1, {0.0, 0.0}));
    CHECK_THROWS_AS(window.push(frame_at(1, {0.0, 0.0})), SequenceError);
    CHECK_THROWS_AS(window.push(frame_at(0, {0.0, 0.0})), SequenceError);
    CHECK_THROWS_AS(window.push(frame_at(2, {0.0})), ConfigError);
}

TEST_CASE("lag window reset forgets its history") {
    LagWindow window(1, 2);
    for (int t = 0; t < 5; ++t)
        window.push(frame_at(t, {1.0}));
    CHECK(window.warm());
    window.reset();
    CHECK_FALSE(window.warm());
    CHECK(window.size() == 0);
    // after a reset, earlier timestamps are acceptable again
    CHECK_NOTHROW(window.push(frame_at(0, {1.0})));
}
