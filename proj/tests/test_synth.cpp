#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kinebci/decoder.hpp"
#include "kinebci/errors.hpp"
#include "kinebci/session.hpp"
#include "kinebci/synth.hpp"

#include "oracle.hpp"
#include "testutil.hpp"

using namespace kinebci;

TEST_CASE("pursuit trajectory has duration*fs samples and the other axis zero") {
    const KinematicsTrace trace = gen_pursuit_trajectory(60.0, 128.0, Axis::x, 1);
    CHECK(trace.size() == 7680);
    CHECK(trace.u.size() == 7680);
    CHECK(trace.x.size() == 7680);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        CHECK(trace.v[i] == 0.0);
        CHECK(trace.y[i] == 0.0);
    }

    const KinematicsTrace vertical = gen_pursuit_trajectory(1.0, 128.0, Axis::y, 2);
    CHECK(vertical.size() == 128);
    for (std::size_t i = 0; i < vertical.size(); ++i) {
        CHECK(vertical.u[i] == 0.0);
        CHECK(vertical.x[i] == 0.0);
    }
}

TEST_CASE("pursuit trajectory is deterministic in the seed") {
    const KinematicsTrace a = gen_pursuit_trajectory(5.0, 128.0, Axis::x, 77);
    const KinematicsTrace b = gen_pursuit_trajectory(5.0, 128.0, Axis::x, 77);
    CHECK(a.u == b.u);
    CHECK(a.x == b.x);
    const KinematicsTrace c = gen_pursuit_trajectory(5.0, 128.0, Axis::x, 78);
    CHECK(a.u != c.u);
}

TEST_CASE("pursuit position never leaves [-1, 1] over a million samples") {
    const double fs = 128.0;
    const double duration = 1'000'000.0 / fs;
    const KinematicsTrace trace = gen_pursuit_trajectory(duration, fs, Axis::x, 3);
    REQUIRE(trace.size() == 1'000'000);
    for (double p : trace.x) {
        CHECK(p <= 1.0);
        CHECK(p >= -1.0);
    }
}

TEST_CASE("pursuit velocity is normalized to the requested rms") {
    const KinematicsTrace trace = gen_pursuit_trajectory(60.0, 128.0, Axis::x, 4, 0.5, 0.4);
    double ss = 0.0;
    for (double u : trace.u)
        ss += u * u;
    CHECK(std::sqrt(ss / static_cast<double>(trace.size())) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("pursuit rejects invalid parameters") {
    CHECK_THROWS_AS(gen_pursuit_trajectory(0.0, 128.0, Axis::x, 1), ConfigError);
    CHECK_THROWS_AS(gen_pursuit_trajectory(1.0, 0.0, Axis::x, 1), ConfigError);
    CHECK_THROWS_AS(gen_pursuit_trajectory(1.0, 128.0, Axis::x, 1, 64.0), ConfigError);
}

TEST_CASE("subject weights are reproducible and sized N x (K+1)") {
    const auto a = SyntheticSubject::random(14, 5, 0.5, 9);
    const auto b = SyntheticSubject::random(14, 5, 0.5, 9);
    for (int n = 0; n < 14; ++n)
        for (int k = 0; k <= 5; ++k) {
            CHECK(a.weight(Axis::x, n, k) == b.weight(Axis::x, n, k));
            CHECK(a.weight(Axis::y, n, k) == b.weight(Axis::y, n, k));
        }
    CHECK_THROWS_AS(SyntheticSubject::random(0, 5, 0.5, 9), ConfigError);
    CHECK_THROWS_AS(SyntheticSubject::random(14, 5, -0.1, 9), ConfigError);
}

TEST_CASE("encoding is the stated linear map at sigma = 0") {
    const auto subject = SyntheticSubject::random(4, 2, 0.0, 10);
    KinematicsTrace trace;
    trace.fs = 128.0;
    Rng rng(11);
    for (int i = 0; i < 32; ++i) {
        trace.u.push_back(rng.gaussian());
        trace.v.push_back(rng.gaussian());
        trace.x.push_back(0.0);
        trace.y.push_back(0.0);
    }
    const Recording rec = encode_eeg(subject, trace);

    for (std::size_t t = 0; t < rec.size(); ++t)
        for (int n = 0; n < 4; ++n) {
            double expected = 0.0;
            for (int k = 0; k <= 2; ++k) {
                const double u = t >= static_cast<std::size_t>(k) ? trace.u[t - k] : 0.0;
                const double v = t >= static_cast<std::size_t>(k) ? trace.v[t - k] : 0.0;
                expected += subject.weight(Axis::x, n, k) * u +
                            subject.weight(Axis::y, n, k) * v;
            }
            CHECK(rec.frames[t].channels[static_cast<std::size_t>(n)] ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
}

TEST_CASE("zero velocity at sigma = 0 encodes to all-zero channels") {
    const auto subject = SyntheticSubject::random(5, 3, 0.0, 12);
    KinematicsTrace trace;
    trace.fs = 128.0;
    trace.u.assign(64, 0.0);
    trace.v.assign(64, 0.0);
    trace.x.assign(64, 0.0);
    trace.y.assign(64, 0.0);
    const Recording rec = encode_eeg(subject, trace);
    for (const auto& f : rec.frames)
        for (double v : f.channels)
            CHECK(v == 0.0);
}

TEST_CASE("encoding is homogeneous at sigma = 0") {
    const auto subject = SyntheticSubject::random(6, 4, 0.0, 13);
    const KinematicsTrace base = gen_pursuit_trajectory(2.0, 128.0, Axis::x, 14);
    KinematicsTrace scaled = base;
    const double alpha = -2.5;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        scaled.u[i] *= alpha;
        scaled.v[i] *= alpha;
    }
    const Recording rec = encode_eeg(subject, base);
    const Recording rec_scaled = encode_eeg(subject, scaled);
    for (std::size_t t = 0; t < rec.size(); ++t)
        for (std::size_t c = 0; c < 6; ++c)
            CHECK(rec_scaled.frames[t].channels[c] ==
                  doctest::Approx(alpha * rec.frames[t].channels[c]).epsilon(1e-12));
}

TEST_CASE("batch encoding equals the streaming encoder sample for sample") {
    const auto subject = SyntheticSubject::random(4, 3, 0.8, 15);
    const KinematicsTrace trace = gen_pursuit_trajectory(1.0, 128.0, Axis::x, 16);
    const Recording rec = encode_eeg(subject, trace, 42);
    auto enc = subject.encoder(42);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const EegFrame frame = enc.step(trace.u[i], trace.v[i]);
        CHECK(frame.t == rec.frames[i].t);
        CHECK(frame.channels == rec.frames[i].channels);
    }
}

TEST_CASE("distinct noise stream seeds give distinct channel noise") {
    const auto subject = SyntheticSubject::random(3, 2, 1.0, 17);
    const KinematicsTrace trace = gen_pursuit_trajectory(1.0, 128.0, Axis::x, 18);
    const Recording a = encode_eeg(subject, trace, 1);
    const Recording b = encode_eeg(subject, trace, 2);
    const Recording c = encode_eeg(subject, trace, 1);
    CHECK(a.frames[0].channels != b.frames[0].channels);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.frames[i].channels == c.frames[i].channels);
}

TEST_CASE("noiseless pipeline round trip reaches r = 1 with a whisper of ridge") {
    // sigma = 0 makes the design rank-deficient (the channels span only the
    // few-dimensional velocity-history space), so plain OLS correctly
    // refuses; a vanishing ridge regularizes without visibly biasing.
    const auto subject = SyntheticSubject::random(14, 5, 0.0, 19);
    const KinematicsTrace trace = gen_pursuit_trajectory(60.0, 128.0, Axis::x, 20);
    const Recording rec = encode_eeg(subject, trace);

    CHECK_THROWS_AS(fit(build_design(rec, 5)), RankDeficiencyError);

    FitOptions opts;
    opts.ridge = 1e-10;
    const DecoderModel model = fit(build_design(rec, 5), opts);
    const EvalReport report = evaluate(model, rec);
    REQUIRE(report.x.r_defined);
    CHECK(report.x.r == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("zero encoding weights make decoding a held-out null experiment") {
    // With nothing of the intent in the channels, a fitted decoder must not
    // correlate with held-out velocity beyond chance: |r| < 0.1 at 60 s.
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto subject = SyntheticSubject::random(14, 5, 1.0, seed, /*weight_scale=*/0.0);
        const KinematicsTrace train = gen_pursuit_trajectory(60.0, 128.0, Axis::x,
                                                             mix_seed(seed, 1));
        const Recording train_rec = encode_eeg(subject, train, 1);
        const DecoderModel model = fit(build_design(train_rec, 5));

        const KinematicsTrace held = gen_pursuit_trajectory(60.0, 128.0, Axis::x,
                                                            mix_seed(seed, 2));
        const Recording held_rec = encode_eeg(subject, held, 2);
        const EvalReport report = evaluate(model, held_rec);
        REQUIRE(report.x.r_defined);
        CHECK(std::abs(report.x.r) < 0.1);
    }
}

TEST_CASE("reverse labeling produces an exactly recoverable dataset") {
    Recording noise = testutil::white_noise_recording(14, 7680, 21);
    const DecoderModel truth = testutil::random_model(14, 5, 22);
    const Recording rec = reverse_label(noise, truth);

    const DecoderModel fitted = fit(build_design(rec, 5));
    const auto beta_truth_x = oracle::model_as_beta(truth, Axis::x);
    const auto beta_fit_x = oracle::model_as_beta(fitted, Axis::x);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < beta_truth_x.size(); ++i) {
        worst = std::max(worst, std::abs(beta_truth_x[i] - beta_fit_x[i]));
        scale = std::max(scale, std::abs(beta_truth_x[i]));
    }
    CHECK(worst / scale < 1e-8);
}

TEST_CASE("reverse labeling keeps positions inside the screen") {
    Recording noise = testutil::white_noise_recording(4, 2000, 23);
    DecoderModel truth = testutil::random_model(4, 2, 24, true, true, 2.0);
    const Recording rec = reverse_label(noise, truth);
    for (std::size_t i = 0; i < rec.size(); ++i) {
        CHECK(std::abs(rec.x[i]) <= 1.0);
        CHECK(std::abs(rec.y[i]) <= 1.0);
    }
}

TEST_CASE("reverse labeling with an all-zero truth gives an all-zero fit") {
    Recording noise = testutil::white_noise_recording(5, 500, 25);
    DecoderModel zero;
    zero.n_channels = 5;
    zero.n_lags = 2;
    zero.weights_x.assign(15, 0.0);
    zero.weights_y.assign(15, 0.0);
    const Recording rec = reverse_label(noise, zero);
    for (double u : rec.u)
        CHECK(u == 0.0);
    const DecoderModel fitted = fit(build_design(rec, 2));
    CHECK_FALSE(fitted.has_x);
    for (double w : fitted.weights_x)
        CHECK(w == 0.0);
}

TEST_CASE("a duplicated channel surfaces as a rank-deficiency error") {
    Recording noise = testutil::white_noise_recording(5, 500, 26);
    for (auto& f : noise.frames)
        f.channels[2] = f.channels[1];
    const DecoderModel truth = testutil::random_model(5, 2, 27);
    const Recording rec = reverse_label(noise, truth);
    CHECK_THROWS_AS(fit(build_design(rec, 2)), RankDeficiencyError);
}

TEST_CASE("reverse labeling refuses a too-short recording") {
    Recording noise = testutil::white_noise_recording(3, 4, 28);
    const DecoderModel truth = testutil::random_model(3, 5, 29);
    CHECK_THROWS_AS(reverse_label(noise, truth), InsufficientDataError);
}

TEST_CASE("intent policy pulls toward the target and clamps at the cap") {
    IntentPolicy policy; // gain 2, cap 0.5
    CHECK(intend(policy, 0.7, 0.7) == 0.0);
    CHECK(intend(policy, 0.0, 1.0) == 0.5);
    CHECK(intend(policy, 0.0, -1.0) == -0.5);
    CHECK(intend(policy, 0.9, 1.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(intend(policy, -0.9, -1.0) == doctest::Approx(-0.2).epsilon(1e-12));

    IntentPolicy bad;
    bad.gain = 0.0;
    CHECK_THROWS_AS(intend(bad, 0.0, 1.0), ConfigError);
    bad = IntentPolicy{};
    bad.cap = -1.0;
    CHECK_THROWS_AS(intend(bad, 0.0, 1.0), ConfigError);
}

TEST_CASE("a well-fit decoder reaches the target in at least 95% of trials") {
    const auto subject = SyntheticSubject::random(14, 5, 1e-3, 30);
    SessionConfig cfg;
    const Recording training = run_training_phase(cfg, subject, 31);
    const DecoderModel model = calibrate(training);

    cfg.trials_per_run = 102;
    const TestPhaseResult result = run_test_phase(model, subject, IntentPolicy{}, cfg, 32);
    std::size_t hits = 0;
    for (const Trial& t : result.trials)
        hits += t.hit ? 1 : 0;
    CHECK(result.trials.size() == 102);
    CHECK(static_cast<double>(hits) / 102.0 >= 0.95);
}
