#ifndef KINEBCI_IO_HPP
#define KINEBCI_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kinebci/decoder.hpp"
#include "kinebci/gesture.hpp"
#include "kinebci/recording.hpp"
#include "kinebci/session.hpp"

namespace kinebci {

// Recording CSV: a comment line "# kinebci-recording v1 fs=<fs> n=<N>",
// a header row "t,ch0..ch{N-1},u,v,x,y,phase,target", then one row per
// sample. Numbers round-trip exactly (shortest form that reparses to the
// same double).
void write_recording_csv(const Recording& rec, std::ostream& out);
void write_recording_csv(const Recording& rec, const std::filesystem::path& path);
Recording read_recording_csv(std::istream& in);
Recording read_recording_csv(const std::filesystem::path& path);

// Model file: line-based "kinebci-model v1" format with n_channels,
// n_lags, axes, optional "meta <key> <value>" provenance lines, and
// per-axis intercept plus row-major weight lines. Coefficients are
// written in scientific notation with 17 significant digits.
void write_model(const DecoderModel& model, std::ostream& out);
void write_model(const DecoderModel& model, const std::filesystem::path& path);
DecoderModel read_model(std::istream& in);
DecoderModel read_model(const std::filesystem::path& path);

// Aligned-text run report with percentages at one decimal place.
std::string format_report(const RunStats& stats, SessionAxis axis);
void write_report(const RunStats& stats, SessionAxis axis, const std::filesystem::path& path);

// Decoded-vs-observed pairs for plotting.
void write_eval_csv(const EvalReport& report, std::ostream& out);
void write_eval_csv(const EvalReport& report, const std::filesystem::path& path);

void write_wire(const std::vector<GestureCommand>& commands, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// FNV-1a 64-bit content hash, printed as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hash_hex(std::uint64_t hash);
std::string hash_file(const std::filesystem::path& path);

/// Shortest decimal form that reparses to exactly the same double.
std::string format_double(double value);
/// Scientific notation with 16 fractional digits (17 significant).
std::string format_coefficient(double value);

} // namespace kinebci

#endif
