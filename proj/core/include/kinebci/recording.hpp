#ifndef KINEBCI_RECORDING_HPP
#define KINEBCI_RECORDING_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "kinebci/signal.hpp"

namespace kinebci {

enum class Phase { training, test, prerun };

enum class TargetSide { none, right, left, up, down };

std::string to_token(Phase p);
std::string to_token(TargetSide s);
Phase phase_from_token(const std::string& tok);
TargetSide target_from_token(const std::string& tok);

// Aligned time series of EEG frames, kinematic labels, and per-sample
// phase/target annotations. Velocities u,v are in screen-units/second,
// positions x,y in normalized screen units.
struct Recording {
    AcquisitionConfig cfg;
    std::vector<EegFrame> frames;
    std::vector<double> u, v;
    std::vector<double> x, y;
    std::vector<Phase> phase;
    std::vector<TargetSide> target;

    std::size_t size() const { return frames.size(); }
    bool empty() const { return frames.empty(); }

    /// Appends one sample, stamping t from the current length.
    void append(std::vector<double> channels, double vel_u, double vel_v,
                double pos_x, double pos_y, Phase ph, TargetSide side);

    /// Appends every sample of another recording, restamping t so the
    /// combined series stays contiguous. Channel counts must match.
    void concat(const Recording& other);

    /// Throws ValidationError unless all series share one length, every
    /// frame has cfg.n_channels channels, and t runs 0,1,2,...
    void validate() const;
};

} // namespace kinebci

#endif
