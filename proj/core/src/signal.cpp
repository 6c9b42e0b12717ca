#include "kinebci/signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace kinebci {

void AcquisitionConfig::validate() const {
    if (n_channels < 1)
        throw ConfigError("n_channels must be >= 1, got " + std::to_string(n_channels));
    if (!(fs > 0.0))
        throw ConfigError("sampling rate must be positive");
    if (!(hp_cutoff > 0.0 && hp_cutoff < lp_cutoff && lp_cutoff < fs / 2.0))
        throw ConfigError("filter cutoffs must satisfy 0 < hp < lp < fs/2");
}

Biquad Biquad::butterworth_lowpass(double cutoff_hz, double fs) {
    const double k = std::tan(std::numbers::pi * cutoff_hz / fs);
    const double q = 1.0 / std::sqrt(2.0);
    const double norm = 1.0 / (1.0 + k / q + k * k);
    const double b0 = k * k * norm;
    return Biquad(b0, 2.0 * b0, b0,
                  2.0 * (k * k - 1.0) * norm,
                  (1.0 - k / q + k * k) * norm);
}

OnePoleHighPass OnePoleHighPass::at(double cutoff_hz, double fs) {
    const double c = std::tan(std::numbers::pi * cutoff_hz / fs);
    OnePoleHighPass f;
    f.b0_ = 1.0 / (1.0 + c);
    f.b1_ = -f.b0_;
    f.a1_ = -(1.0 - c) / (1.0 + c);
    return f;
}

AcquisitionFilter::AcquisitionFilter(const AcquisitionConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    hp_proto_ = OnePoleHighPass::at(cfg_.hp_cutoff, cfg_.fs);
    lp_proto_ = Biquad::butterworth_lowpass(cfg_.lp_cutoff, cfg_.fs);
    hp_.assign(static_cast<std::size_t>(cfg_.n_channels), hp_proto_);
    lp_.assign(static_cast<std::size_t>(cfg_.n_channels), lp_proto_);
}

EegFrame AcquisitionFilter::step(const EegFrame& frame) {
    if (frame.channels.size() != static_cast<std::size_t>(cfg_.n_channels))
        throw ConfigError("frame has " + std::to_string(frame.channels.size()) +
                          " channels, configured for " + std::to_string(cfg_.n_channels));
    EegFrame out;
    out.t = frame.t;
    out.channels.resize(frame.channels.size());
    for (std::size_t n = 0; n < frame.channels.size(); ++n)
        out.channels[n] = lp_[n].step(hp_[n].step(frame.channels[n]));
    return out;
}

void AcquisitionFilter::reset() {
    for (auto& f : hp_)
        f.reset();
    for (auto& f : lp_)
        f.reset();
}

LagWindow::LagWindow(int n_channels, int n_lags)
    : n_channels_(n_channels), n_lags_(n_lags) {
    if (n_channels < 1)
        throw ConfigError("lag window needs at least one channel");
    if (n_lags < 0)
        throw ConfigError("lag count must be nonnegative");
    slots_.resize(static_cast<std::size_t>(capacity()));
}

void LagWindow::push(const EegFrame& frame) {
    if (frame.channels.size() != static_cast<std::size_t>(n_channels_))
        throw ConfigError("frame has " + std::to_string(frame.channels.size()) +
                          " channels, window expects " + std::to_string(n_channels_));
    if (count_ > 0 && frame.t <= newest_t())
        throw SequenceError("frame t=" + std::to_string(frame.t) +
                            " not after newest t=" + std::to_string(newest_t()));
    head_ = count_ == 0 ? 0 : (head_ + 1) % capacity();
    slots_[static_cast<std::size_t>(head_)] = frame;
    if (count_ < capacity())
        ++count_;
}

const EegFrame& LagWindow::at_lag(int k) const {
    if (k < 0 || k >= size())
        throw NotWarmError("lag " + std::to_string(k) + " not available, window holds " +
                           std::to_string(size()) + " frame(s)");
    const int cap = capacity();
    return slots_[static_cast<std::size_t>((head_ + cap - k % cap) % cap)];
}

std::int64_t LagWindow::newest_t() const {
    if (count_ == 0)
        throw NotWarmError("empty lag window has no newest frame");
    return slots_[static_cast<std::size_t>(head_)].t;
}

void LagWindow::reset() {
    count_ = 0;
    head_ = 0;
}

} // namespace kinebci
