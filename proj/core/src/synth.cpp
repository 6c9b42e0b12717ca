#include "kinebci/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kinebci/errors.hpp"
#include "kinebci/signal.hpp"

namespace kinebci {

SyntheticSubject SyntheticSubject::random(int n_channels, int n_lags, double sigma,
                                          std::uint64_t seed, double weight_scale) {
    if (n_channels < 1 || n_lags < 0)
        throw ConfigError("subject dimensions invalid");
    if (sigma < 0.0)
        throw ConfigError("noise sigma must be nonnegative");
    SyntheticSubject s;
    s.n_channels_ = n_channels;
    s.n_lags_ = n_lags;
    s.sigma_ = sigma;
    s.seed_ = seed;
    const std::size_t count = static_cast<std::size_t>(n_channels) *
                              static_cast<std::size_t>(n_lags + 1);
    s.gx_.resize(count);
    s.gy_.resize(count);
    Rng rng(mix_seed(seed, 0x5b));
    for (double& g : s.gx_)
        g = weight_scale * rng.gaussian();
    for (double& g : s.gy_)
        g = weight_scale * rng.gaussian();
    return s;
}

double SyntheticSubject::weight(Axis axis, int channel, int lag) const {
    const auto& g = axis == Axis::x ? gx_ : gy_;
    return g[static_cast<std::size_t>(channel * (n_lags_ + 1) + lag)];
}

SyntheticSubject SyntheticSubject::with_sigma(double sigma) const {
    if (sigma < 0.0)
        throw ConfigError("noise sigma must be nonnegative");
    SyntheticSubject s = *this;
    s.sigma_ = sigma;
    return s;
}

SyntheticSubject::Encoder::Encoder(const SyntheticSubject& subject, std::uint64_t stream_seed)
    : subject_(&subject),
      rng_(mix_seed(subject.seed(), mix_seed(stream_seed, 0xee6))),
      hist_u_(static_cast<std::size_t>(subject.n_lags() + 1), 0.0),
      hist_v_(static_cast<std::size_t>(subject.n_lags() + 1), 0.0) {}

EegFrame SyntheticSubject::Encoder::step(double u_intent, double v_intent) {
    // Shift the velocity history; index k holds the value at lag k.
    for (std::size_t k = hist_u_.size() - 1; k > 0; --k) {
        hist_u_[k] = hist_u_[k - 1];
        hist_v_[k] = hist_v_[k - 1];
    }
    hist_u_[0] = u_intent;
    hist_v_[0] = v_intent;

    const int lags = subject_->n_lags();
    EegFrame frame;
    frame.t = t_++;
    frame.channels.resize(static_cast<std::size_t>(subject_->n_channels()));
    for (int n = 0; n < subject_->n_channels(); ++n) {
        double value = 0.0;
        for (int k = 0; k <= lags; ++k)
            value += subject_->weight(Axis::x, n, k) * hist_u_[static_cast<std::size_t>(k)] +
                     subject_->weight(Axis::y, n, k) * hist_v_[static_cast<std::size_t>(k)];
        if (subject_->sigma() > 0.0)
            value += subject_->sigma() * rng_.gaussian();
        frame.channels[static_cast<std::size_t>(n)] = value;
    }
    return frame;
}

void IntentPolicy::validate() const {
    if (!(gain > 0.0))
        throw ConfigError("intent gain must be positive");
    if (!(cap > 0.0))
        throw ConfigError("intent velocity cap must be positive");
}

KinematicsTrace gen_pursuit_trajectory(double duration_s, double fs, Axis axis,
                                       std::uint64_t seed, double cutoff_hz,
                                       double vel_rms) {
    if (!(duration_s > 0.0) || !(fs > 0.0))
        throw ConfigError("pursuit duration and sampling rate must be positive");
    if (!(cutoff_hz > 0.0 && cutoff_hz < fs / 2.0))
        throw ConfigError("pursuit cutoff must lie in (0, fs/2)");

    const auto count = static_cast<std::size_t>(std::llround(duration_s * fs));
    std::vector<double> vel(count, 0.0);

    Rng rng(mix_seed(seed, 0x9a));
    Biquad smooth = Biquad::butterworth_lowpass(cutoff_hz, fs);
    for (double& s : vel)
        s = smooth.step(rng.gaussian());

    double sumsq = 0.0;
    for (double s : vel)
        sumsq += s * s;
    const double rms = std::sqrt(sumsq / static_cast<double>(count));
    if (rms > 0.0) {
        const double gain = vel_rms / rms;
        for (double& s : vel)
            s *= gain;
    }

    // Integrate with reflection at the bounds. The sign flips with each
    // bounce so the recorded velocity keeps tracking the actual motion.
    KinematicsTrace trace;
    trace.fs = fs;
    std::vector<double> pos(count, 0.0);
    const double dt = 1.0 / fs;
    double p = 0.0;
    double direction = 1.0;
    for (std::size_t i = 0; i < count; ++i) {
        vel[i] *= direction;
        p += vel[i] * dt;
        if (p > 1.0) {
            p = 2.0 - p;
            direction = -direction;
        } else if (p < -1.0) {
            p = -2.0 - p;
            direction = -direction;
        }
        pos[i] = p;
    }

    std::vector<double> zeros(count, 0.0);
    if (axis == Axis::x) {
        trace.u = std::move(vel);
        trace.x = std::move(pos);
        trace.v = zeros;
        trace.y = std::move(zeros);
    } else {
        trace.v = std::move(vel);
        trace.y = std::move(pos);
        trace.u = zeros;
        trace.x = std::move(zeros);
    }
    return trace;
}

Recording encode_eeg(const SyntheticSubject& subject, const KinematicsTrace& trace,
                     std::uint64_t stream_seed, Phase phase, TargetSide side) {
    if (trace.size() < static_cast<std::size_t>(subject.n_lags() + 1))
        throw InsufficientDataError("trace shorter than the subject's lag depth");
    if (trace.v.size() != trace.size() || trace.x.size() != trace.size() ||
        trace.y.size() != trace.size())
        throw ConfigError("kinematics trace series lengths disagree");

    Recording rec;
    rec.cfg.fs = trace.fs;
    rec.cfg.n_channels = subject.n_channels();
    auto enc = subject.encoder(stream_seed);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        EegFrame frame = enc.step(trace.u[i], trace.v[i]);
        rec.append(std::move(frame.channels), trace.u[i], trace.v[i], trace.x[i], trace.y[i],
                   phase, side);
    }
    return rec;
}

Recording reverse_label(const Recording& subject_eeg, const DecoderModel& truth_model) {
    truth_model.validate();
    if (subject_eeg.size() < static_cast<std::size_t>(truth_model.n_lags + 1))
        throw InsufficientDataError("recording shorter than the model's lag depth");

    Recording rec = subject_eeg;
    LagWindow window(truth_model.n_channels, truth_model.n_lags);
    const double dt = 1.0 / rec.cfg.fs;
    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        window.push(rec.frames[i]);
        Velocity vel{0.0, 0.0};
        if (window.warm())
            vel = predict(truth_model, window);
        rec.u[i] = vel.u;
        rec.v[i] = vel.v;
        px = std::clamp(px + vel.u * dt, -1.0, 1.0);
        py = std::clamp(py + vel.v * dt, -1.0, 1.0);
        rec.x[i] = px;
        rec.y[i] = py;
    }
    return rec;
}

double intend(const IntentPolicy& policy, double cursor_pos, double target_pos) {
    policy.validate();
    return std::clamp(policy.gain * (target_pos - cursor_pos), -policy.cap, policy.cap);
}

} // namespace kinebci
