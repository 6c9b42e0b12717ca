#include "kinebci/recording.hpp"

#include "kinebci/errors.hpp"

namespace kinebci {

std::string to_token(Phase p) {
    switch (p) {
    case Phase::training: return "training";
    case Phase::test: return "test";
    case Phase::prerun: return "prerun";
    }
    throw ValidationError("unknown phase value");
}

std::string to_token(TargetSide s) {
    switch (s) {
    case TargetSide::none: return "-";
    case TargetSide::right: return "RT";
    case TargetSide::left: return "LT";
    case TargetSide::up: return "UT";
    case TargetSide::down: return "DT";
    }
    throw ValidationError("unknown target value");
}

Phase phase_from_token(const std::string& tok) {
    if (tok == "training") return Phase::training;
    if (tok == "test") return Phase::test;
    if (tok == "prerun") return Phase::prerun;
    throw ValidationError("unknown phase token '" + tok + "'");
}

TargetSide target_from_token(const std::string& tok) {
    if (tok == "-") return TargetSide::none;
    if (tok == "RT") return TargetSide::right;
    if (tok == "LT") return TargetSide::left;
    if (tok == "UT") return TargetSide::up;
    if (tok == "DT") return TargetSide::down;
    throw ValidationError("unknown target token '" + tok + "'");
}

void Recording::append(std::vector<double> channels, double vel_u, double vel_v,
                       double pos_x, double pos_y, Phase ph, TargetSide side) {
    if (channels.size() != static_cast<std::size_t>(cfg.n_channels))
        throw ConfigError("sample has " + std::to_string(channels.size()) +
                          " channels, recording expects " + std::to_string(cfg.n_channels));
    EegFrame frame;
    frame.t = static_cast<std::int64_t>(frames.size());
    frame.channels = std::move(channels);
    frames.push_back(std::move(frame));
    u.push_back(vel_u);
    v.push_back(vel_v);
    x.push_back(pos_x);
    y.push_back(pos_y);
    phase.push_back(ph);
    target.push_back(side);
}

void Recording::concat(const Recording& other) {
    if (other.cfg.n_channels != cfg.n_channels)
        throw ConfigError("cannot concatenate recordings with different channel counts");
    for (std::size_t i = 0; i < other.size(); ++i)
        append(other.frames[i].channels, other.u[i], other.v[i], other.x[i], other.y[i],
               other.phase[i], other.target[i]);
}

void Recording::validate() const {
    const std::size_t n = frames.size();
    if (u.size() != n || v.size() != n || x.size() != n || y.size() != n ||
        phase.size() != n || target.size() != n)
        throw ValidationError("recording series lengths disagree");
    for (std::size_t i = 0; i < n; ++i) {
        if (frames[i].t != static_cast<std::int64_t>(i))
            throw ValidationError("frame t not contiguous from 0 at index " + std::to_string(i));
        if (frames[i].channels.size() != static_cast<std::size_t>(cfg.n_channels))
            throw ValidationError("frame channel count mismatch at index " + std::to_string(i));
    }
}

} // namespace kinebci
