#ifndef KINEBCI_SYNTH_HPP
#define KINEBCI_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "kinebci/decoder.hpp"
#include "kinebci/random.hpp"
#include "kinebci/recording.hpp"

namespace kinebci {

/// Velocity and position series for both screen axes, sampled at fs.
struct KinematicsTrace {
    double fs = 128.0;
    std::vector<double> u, v;
    std::vector<double> x, y;

    std::size_t size() const { return u.size(); }
};

// Ground-truth stand-in for the human subject. Channel voltages are a
// fixed linear encoding of the intended velocity history plus i.i.d.
// Gaussian noise:
//
//   e_n[t] = sum_k gx[n][k] u[t-k] + sum_k gy[n][k] v[t-k] + noise(sigma)
//
// Histories shorter than K+1 are zero padded. Identical seeds reproduce
// identical channel data bit for bit.
class SyntheticSubject {
public:
    /// Subject with encoding weights drawn N(0, weight_scale^2) from seed.
    static SyntheticSubject random(int n_channels, int n_lags, double sigma,
                                   std::uint64_t seed, double weight_scale = 1.0);

    int n_channels() const { return n_channels_; }
    int n_lags() const { return n_lags_; }
    double sigma() const { return sigma_; }
    std::uint64_t seed() const { return seed_; }

    double weight(Axis axis, int channel, int lag) const;

    /// Same subject (same encoding weights and seed) at another noise level.
    SyntheticSubject with_sigma(double sigma) const;

    // Streaming forward model for closed-loop use. The noise stream is
    // seeded from the subject seed mixed with stream_seed, so distinct
    // sessions of one subject draw distinct noise.
    class Encoder {
    public:
        Encoder(const SyntheticSubject& subject, std::uint64_t stream_seed);

        /// Encodes the next intended-velocity sample into a frame.
        EegFrame step(double u_intent, double v_intent);

    private:
        const SyntheticSubject* subject_;
        Rng rng_;
        std::vector<double> hist_u_, hist_v_; // newest first, K+1 entries
        std::int64_t t_ = 0;
    };

    Encoder encoder(std::uint64_t stream_seed) const { return Encoder(*this, stream_seed); }

private:
    SyntheticSubject() = default;

    int n_channels_ = 0;
    int n_lags_ = 0;
    double sigma_ = 0.0;
    std::uint64_t seed_ = 0;
    std::vector<double> gx_, gy_; // row-major [channel][lag], microvolts per unit/s
};

/// Goal-directed intent: proportional pull toward the target, capped.
struct IntentPolicy {
    double gain = 2.0; // units/s per unit of positional error
    double cap = 0.5;  // units/s

    void validate() const;
};

/// Band-limited random pursuit on one axis: smoothed Gaussian velocity
/// (2nd-order Butterworth, cutoff_hz) normalized to vel_rms, position
/// integrated with reflection at the screen bounds. The other axis is
/// identically zero.
KinematicsTrace gen_pursuit_trajectory(double duration_s, double fs, Axis axis,
                                       std::uint64_t seed, double cutoff_hz = 0.5,
                                       double vel_rms = 0.4);

/// Runs the forward model over a whole trace. The returned recording
/// carries the trace kinematics as labels, annotated with `phase`.
Recording encode_eeg(const SyntheticSubject& subject, const KinematicsTrace& trace,
                     std::uint64_t stream_seed = 0, Phase phase = Phase::training,
                     TargetSide side = TargetSide::none);

/// Overwrites the velocity labels of an EEG recording with the truth
/// model's own predictions, yielding a dataset whose optimal fit residual
/// is exactly zero. Positions are re-integrated from the new labels.
Recording reverse_label(const Recording& subject_eeg, const DecoderModel& truth_model);

/// Intended velocity toward the target: clamp(gain * error, +/-cap) on the
/// active axis (chosen by which coordinate pair differs), zero elsewhere.
double intend(const IntentPolicy& policy, double cursor_pos, double target_pos);

} // namespace kinebci

#endif
