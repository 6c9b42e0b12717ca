#include "kinebci/gesture.hpp"

#include <cmath>
#include <string>

#include "kinebci/errors.hpp"

namespace kinebci {

namespace {

constexpr const char* kHello = "HELLO kinebci/1\n";
constexpr const char* kBye = "BYE\n";

char kind_letter(GestureKind kind) {
    switch (kind) {
    case GestureKind::right_hand: return 'R';
    case GestureKind::left_hand: return 'L';
    case GestureKind::neutral: return 'N';
    }
    throw ValidationError("unknown gesture kind");
}

GestureKind kind_from_letter(char c) {
    switch (c) {
    case 'R': return GestureKind::right_hand;
    case 'L': return GestureKind::left_hand;
    case 'N': return GestureKind::neutral;
    default: throw ValidationError(std::string("unknown gesture letter '") + c + "'");
    }
}

} // namespace

void ReplayConfig::validate() const {
    if (!(command_rate_hz > 0.0))
        throw ConfigError("command rate must be positive");
    if (dead_zone < 0.0)
        throw ConfigError("dead zone must be nonnegative");
}

GestureKind map_position(double x, double dead_zone, std::optional<GestureKind> prev) {
    if (x > dead_zone)
        return GestureKind::right_hand;
    if (x < -dead_zone)
        return GestureKind::left_hand;
    return prev.value_or(GestureKind::neutral);
}

std::vector<GestureCommand> replay(const Recording& recording, const ReplayConfig& cfg) {
    cfg.validate();
    if (recording.empty())
        throw ValidationError("cannot replay an empty recording");
    if (recording.x.size() != recording.size())
        throw ValidationError("recording lacks position labels");

    const double fs = recording.cfg.fs;
    const auto total = static_cast<std::int64_t>(recording.size());
    std::vector<GestureCommand> commands;
    std::optional<GestureKind> prev;
    std::int64_t last_emit_ms = 0;

    for (std::int64_t tick = 0;; ++tick) {
        const double tick_s = static_cast<double>(tick) / cfg.command_rate_hz;
        const auto sample = static_cast<std::int64_t>(std::floor(tick_s * fs + 1e-9));
        if (sample >= total)
            break;
        const auto tick_ms =
            static_cast<std::int64_t>(std::llround(tick_s * 1000.0));
        const GestureKind kind =
            map_position(recording.x[static_cast<std::size_t>(sample)], cfg.dead_zone, prev);
        if (!prev.has_value() || kind != *prev) {
            commands.push_back({kind, tick_ms});
            prev = kind;
            last_emit_ms = tick_ms;
        } else if (tick_ms - last_emit_ms >= 1000) {
            commands.push_back({kind, tick_ms}); // keepalive
            last_emit_ms = tick_ms;
        }
    }
    return commands;
}

std::string encode_command(const GestureCommand& cmd) {
    return std::string("CMD ") + kind_letter(cmd.kind) + ' ' + std::to_string(cmd.timestamp_ms) +
           '\n';
}

std::string encode_stream(const std::vector<GestureCommand>& commands) {
    std::string wire = kHello;
    for (const GestureCommand& cmd : commands)
        wire += encode_command(cmd);
    wire += kBye;
    return wire;
}

std::vector<GestureCommand> parse_stream(const std::string& wire) {
    std::size_t pos = 0;
    auto next_line = [&]() -> std::string {
        const std::size_t eol = wire.find('\n', pos);
        if (eol == std::string::npos)
            throw ValidationError("unterminated line in wire stream");
        std::string line = wire.substr(pos, eol - pos);
        pos = eol + 1;
        return line;
    };

    if (next_line() != "HELLO kinebci/1")
        throw ValidationError("wire stream missing HELLO frame");

    std::vector<GestureCommand> commands;
    for (;;) {
        const std::string line = next_line();
        if (line == "BYE")
            break;
        // CMD <K> <ms>
        if (line.size() < 7 || line.compare(0, 4, "CMD ") != 0 || line[5] != ' ')
            throw ValidationError("malformed command line '" + line + "'");
        GestureCommand cmd;
        cmd.kind = kind_from_letter(line[4]);
        const std::string digits = line.substr(6);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("malformed timestamp in '" + line + "'");
        try {
            cmd.timestamp_ms = std::stoll(digits);
        } catch (const std::exception&) {
            throw ValidationError("timestamp out of range in '" + line + "'");
        }
        commands.push_back(cmd);
    }
    if (pos != wire.size())
        throw ValidationError("trailing bytes after BYE frame");
    return commands;
}

} // namespace kinebci
