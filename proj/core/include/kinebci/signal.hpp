#ifndef KINEBCI_SIGNAL_HPP
#define KINEBCI_SIGNAL_HPP

#include <cstdint>
#include <vector>

#include "kinebci/errors.hpp"

namespace kinebci {

/// One sample of per-channel voltages (microvolts) at sample index t.
struct EegFrame {
    std::int64_t t = 0;
    std::vector<double> channels;
};

/// Acquisition-chain settings: sampling rate, filter corners, channel count.
struct AcquisitionConfig {
    double fs = 128.0;
    double hp_cutoff = 0.16;
    double lp_cutoff = 30.0;
    int n_channels = 14;

    /// Throws ConfigError unless 0 < hp < lp < fs/2 and n_channels >= 1.
    void validate() const;
};

// Direct form I biquad. Coefficient convention:
//   y[t] = b0 x[t] + b1 x[t-1] + b2 x[t-2] - a1 y[t-1] - a2 y[t-2]
class Biquad {
public:
    Biquad() = default;
    Biquad(double b0, double b1, double b2, double a1, double a2)
        : b0_(b0), b1_(b1), b2_(b2), a1_(a1), a2_(a2) {}

    /// 2nd-order Butterworth low-pass, bilinear transform with prewarping.
    static Biquad butterworth_lowpass(double cutoff_hz, double fs);

    double step(double x) {
        double y = b0_ * x + b1_ * x1_ + b2_ * x2_ - a1_ * y1_ - a2_ * y2_;
        x2_ = x1_;
        x1_ = x;
        y2_ = y1_;
        y1_ = y;
        return y;
    }

    void reset() { x1_ = x2_ = y1_ = y2_ = 0.0; }

    double b0() const { return b0_; }
    double b1() const { return b1_; }
    double b2() const { return b2_; }
    double a1() const { return a1_; }
    double a2() const { return a2_; }

private:
    double b0_ = 1.0, b1_ = 0.0, b2_ = 0.0;
    double a1_ = 0.0, a2_ = 0.0;
    double x1_ = 0.0, x2_ = 0.0, y1_ = 0.0, y2_ = 0.0;
};

// Single-pole high-pass, bilinear transform with prewarping:
//   y[t] = b0 x[t] + b1 x[t-1] - a1 y[t-1]
// with c = tan(pi fc / fs), b0 = 1/(1+c), b1 = -b0, a1 = -(1-c)/(1+c).
// b0 + b1 == 0, so the DC gain is exactly zero.
class OnePoleHighPass {
public:
    OnePoleHighPass() = default;
    static OnePoleHighPass at(double cutoff_hz, double fs);

    double step(double x) {
        double y = b0_ * x + b1_ * x1_ - a1_ * y1_;
        x1_ = x;
        y1_ = y;
        return y;
    }

    void reset() { x1_ = y1_ = 0.0; }

    double b0() const { return b0_; }
    double b1() const { return b1_; }
    double a1() const { return a1_; }

private:
    double b0_ = 1.0, b1_ = 0.0, a1_ = 0.0;
    double x1_ = 0.0, y1_ = 0.0;
};

// Causal per-channel acquisition chain: high-pass then low-pass. State is
// all zeros after construction or reset(); outputs at t depend only on
// inputs at times <= t.
class AcquisitionFilter {
public:
    explicit AcquisitionFilter(const AcquisitionConfig& cfg);

    /// Filters one frame through both stages. Throws ConfigError when the
    /// frame's channel count does not match the configuration.
    EegFrame step(const EegFrame& frame);

    void reset();

    const AcquisitionConfig& config() const { return cfg_; }
    const OnePoleHighPass& highpass_prototype() const { return hp_proto_; }
    const Biquad& lowpass_prototype() const { return lp_proto_; }

private:
    AcquisitionConfig cfg_;
    OnePoleHighPass hp_proto_;
    Biquad lp_proto_;
    std::vector<OnePoleHighPass> hp_;
    std::vector<Biquad> lp_;
};

// Sliding window over the most recent n_lags+1 frames, newest first.
class LagWindow {
public:
    LagWindow(int n_channels, int n_lags);

    /// Accepts the next frame. Throws SequenceError when t does not
    /// strictly increase, ConfigError on a channel-count mismatch.
    void push(const EegFrame& frame);

    /// True once n_lags+1 frames have been seen.
    bool warm() const { return count_ >= capacity(); }

    /// Frame at lag k: k=0 is the newest, k=n_lags the oldest held.
    /// Requires k < size().
    const EegFrame& at_lag(int k) const;

    int n_channels() const { return n_channels_; }
    int n_lags() const { return n_lags_; }
    int size() const { return count_ < capacity() ? count_ : capacity(); }
    std::int64_t newest_t() const;

    void reset();

private:
    int capacity() const { return n_lags_ + 1; }

    int n_channels_;
    int n_lags_;
    int count_ = 0;
    int head_ = 0; // slot of the newest frame once count_ > 0
    std::vector<EegFrame> slots_;
};

} // namespace kinebci

#endif
