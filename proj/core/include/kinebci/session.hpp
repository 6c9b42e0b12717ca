#ifndef KINEBCI_SESSION_HPP
#define KINEBCI_SESSION_HPP

#include <cstdint>
#include <vector>

#include "kinebci/decoder.hpp"
#include "kinebci/recording.hpp"
#include "kinebci/synth.hpp"

namespace kinebci {

enum class SessionAxis { horizontal, vertical };

Axis active_axis(SessionAxis axis);

// Three-phase cursor-control session: training trials of pursuit
// tracking, a one-shot calibration fit, and timed target-acquisition test
// trials decoded per sample at fs.
struct SessionConfig {
    int n_training_trials = 5;
    double trial_duration_s = 60.0;
    double test_timeout_s = 15.0;
    int trials_per_run = 6;
    SessionAxis axis = SessionAxis::horizontal;
    double target_halfwidth = 0.1;
    double prerun_s = 2.0; // idle decoding before the first test trial
    AcquisitionConfig acquisition;
    int n_lags = 5;

    void validate() const;
};

/// One timed target-acquisition attempt. `trace` is the active-axis cursor
/// position at every sample of the trial.
struct Trial {
    TargetSide side = TargetSide::none;
    std::vector<double> trace;
    bool hit = false;
    double time_to_hit_s = 0.0; // valid when hit
};

struct RunStats {
    std::vector<double> run_rates;
    double mean_rate = 0.0;
    double std_rate = 0.0;    // sample standard deviation across runs
    bool std_defined = false; // false for a single run
    std::size_t n_trials = 0;
};

struct TestPhaseResult {
    std::vector<Trial> trials;
    Recording recording;
};

/// Concatenated pursuit-tracking trials encoded to EEG. Trial r draws its
/// trajectory from mix(seed, r); noise comes from the subject seed mixed
/// with `seed`.
Recording run_training_phase(const SessionConfig& cfg, const SyntheticSubject& subject,
                             std::uint64_t seed);

/// Builds the lag-embedded design from the recording and fits the decoder.
DecoderModel calibrate(const Recording& recording, const FitOptions& opts = {}, int n_lags = 5);

/// Closed-loop test phase: per trial a target side is drawn uniformly, the
/// subject intends toward it, EEG is synthesized, the decoder predicts,
/// and the cursor integrates the decoded velocity (clamped to [-1, 1]).
/// A hit ends the trial early; otherwise it times out. The cursor resets
/// to the origin between trials.
TestPhaseResult run_test_phase(const DecoderModel& model, const SyntheticSubject& subject,
                               const IntentPolicy& policy, const SessionConfig& cfg,
                               std::uint64_t seed);

/// Per-run success rates, their mean, and the sample (n-1) standard
/// deviation across runs. A single run reports zero spread with
/// std_defined = false. Throws ValidationError on empty input.
RunStats compute_stats(const std::vector<std::vector<Trial>>& runs);

} // namespace kinebci

#endif
