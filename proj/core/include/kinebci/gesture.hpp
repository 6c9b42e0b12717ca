#ifndef KINEBCI_GESTURE_HPP
#define KINEBCI_GESTURE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kinebci/recording.hpp"

namespace kinebci {

enum class GestureKind { right_hand, left_hand, neutral };

struct GestureCommand {
    GestureKind kind = GestureKind::neutral;
    std::int64_t timestamp_ms = 0;

    bool operator==(const GestureCommand&) const = default;
};

struct ReplayConfig {
    double command_rate_hz = 8.0;
    double dead_zone = 0.0; // hold the previous gesture within +/- dead_zone

    void validate() const;
};

/// Sign rule on horizontal cursor position: x > dead_zone commands the
/// right hand, x < -dead_zone the left hand, and inside the dead zone the
/// previous kind is held (neutral when there is none).
GestureKind map_position(double x, double dead_zone,
                         std::optional<GestureKind> prev = std::nullopt);

/// Replays a recording's horizontal positions as a gesture stream: the
/// latest sample at each command tick is mapped through the sign rule, a
/// command is emitted on every kind change, and the current kind is
/// repeated as a keepalive after one second without traffic. Throws
/// ValidationError on an empty recording.
std::vector<GestureCommand> replay(const Recording& recording, const ReplayConfig& cfg);

/// Wire form of one command: "CMD <K> <timestamp_ms>\n", K in {R, L, N}.
std::string encode_command(const GestureCommand& cmd);

/// Whole stream framed by "HELLO kinebci/1\n" and "BYE\n". Bit exact.
std::string encode_stream(const std::vector<GestureCommand>& commands);

/// Parses a framed stream back into commands. Throws ValidationError on
/// any deviation from the grammar.
std::vector<GestureCommand> parse_stream(const std::string& wire);

} // namespace kinebci

#endif
