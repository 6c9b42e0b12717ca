#include "kinebci/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kinebci/errors.hpp"

namespace kinebci {

namespace {

double parse_double(std::string_view text, const std::string& context) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ValidationError("bad number '" + std::string(text) + "' in " + context);
    return value;
}

std::int64_t parse_int(std::string_view text, const std::string& context) {
    std::int64_t value = 0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ValidationError("bad integer '" + std::string(text) + "' in " + context);
    return value;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t at = line.find(sep, start);
        if (at == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, at - start));
        start = at + 1;
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc())
        throw IoError("number formatting failed");
    return std::string(buf, ptr);
}

std::string format_coefficient(double value) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific, 16);
    if (ec != std::errc())
        throw IoError("number formatting failed");
    return std::string(buf, ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hash_hex(std::uint64_t hash) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
    return std::string(buf, 16);
}

std::string hash_file(const std::filesystem::path& path) {
    return hash_hex(fnv1a64(read_text_file(path)));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof())
        throw IoError("error while reading '" + path.string() + "'");
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out = open_out(path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw IoError("error while writing '" + path.string() + "'");
}

void write_recording_csv(const Recording& rec, std::ostream& out) {
    rec.validate();
    const int n = rec.cfg.n_channels;
    out << "# kinebci-recording v1 fs=" << format_double(rec.cfg.fs) << " n=" << n << '\n';
    out << 't';
    for (int c = 0; c < n; ++c)
        out << ",ch" << c;
    out << ",u,v,x,y,phase,target\n";
    for (std::size_t i = 0; i < rec.size(); ++i) {
        out << rec.frames[i].t;
        for (int c = 0; c < n; ++c)
            out << ',' << format_double(rec.frames[i].channels[static_cast<std::size_t>(c)]);
        out << ',' << format_double(rec.u[i]) << ',' << format_double(rec.v[i]) << ','
            << format_double(rec.x[i]) << ',' << format_double(rec.y[i]) << ','
            << to_token(rec.phase[i]) << ',' << to_token(rec.target[i]) << '\n';
    }
}

void write_recording_csv(const Recording& rec, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    write_recording_csv(rec, out);
    if (!out)
        throw IoError("error while writing '" + path.string() + "'");
}

Recording read_recording_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("empty recording file");

    Recording rec;
    {
        // "# kinebci-recording v1 fs=<fs> n=<N>"
        std::istringstream header(line);
        std::string hash, magic, version, fs_field, n_field;
        header >> hash >> magic >> version >> fs_field >> n_field;
        if (hash != "#" || magic != "kinebci-recording" || version != "v1" ||
            fs_field.rfind("fs=", 0) != 0 || n_field.rfind("n=", 0) != 0)
            throw ValidationError("not a kinebci-recording v1 file");
        rec.cfg.fs = parse_double(fs_field.substr(3), "recording header");
        rec.cfg.n_channels =
            static_cast<int>(parse_int(n_field.substr(2), "recording header"));
        if (rec.cfg.n_channels < 1)
            throw ValidationError("recording header declares no channels");
    }

    if (!std::getline(in, line))
        throw ValidationError("recording file missing column header");
    const std::size_t columns = static_cast<std::size_t>(rec.cfg.n_channels) + 7;
    if (split(line, ',').size() != columns)
        throw ValidationError("recording column header does not match channel count");

    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != columns)
            throw ValidationError("recording row has " + std::to_string(fields.size()) +
                                  " fields, expected " + std::to_string(columns));
        const std::string context = "recording row t=" + fields[0];
        const std::int64_t t = parse_int(fields[0], context);
        if (t != static_cast<std::int64_t>(rec.size()))
            throw ValidationError("recording t not contiguous at " + fields[0]);
        std::vector<double> channels(static_cast<std::size_t>(rec.cfg.n_channels));
        for (int c = 0; c < rec.cfg.n_channels; ++c)
            channels[static_cast<std::size_t>(c)] =
                parse_double(fields[static_cast<std::size_t>(c) + 1], context);
        const std::size_t base = static_cast<std::size_t>(rec.cfg.n_channels) + 1;
        rec.append(std::move(channels), parse_double(fields[base], context),
                   parse_double(fields[base + 1], context),
                   parse_double(fields[base + 2], context),
                   parse_double(fields[base + 3], context),
                   phase_from_token(fields[base + 4]), target_from_token(fields[base + 5]));
    }
    rec.validate();
    return rec;
}

Recording read_recording_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    return read_recording_csv(in);
}

namespace {

std::string axes_token(const DecoderModel& model) {
    std::string axes;
    if (model.has_x)
        axes += 'x';
    if (model.has_y)
        axes += 'y';
    return axes.empty() ? "-" : axes;
}

void write_axis_block(std::ostream& out, char axis, double intercept,
                      const std::vector<double>& weights) {
    out << "intercept_" << axis << ' ' << format_coefficient(intercept) << '\n';
    out << "weights_" << axis;
    for (double w : weights)
        out << ' ' << format_coefficient(w);
    out << '\n';
}

} // namespace

void write_model(const DecoderModel& model, std::ostream& out) {
    model.validate();
    out << "kinebci-model v1\n";
    out << "n_channels " << model.n_channels << '\n';
    out << "n_lags " << model.n_lags << '\n';
    out << "axes " << axes_token(model) << '\n';
    for (const auto& [key, value] : model.meta)
        out << "meta " << key << ' ' << value << '\n';
    if (model.has_x)
        write_axis_block(out, 'x', model.intercept_x, model.weights_x);
    if (model.has_y)
        write_axis_block(out, 'y', model.intercept_y, model.weights_y);
    out << "end\n";
}

void write_model(const DecoderModel& model, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    write_model(model, out);
    if (!out)
        throw IoError("error while writing '" + path.string() + "'");
}

DecoderModel read_model(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "kinebci-model v1")
        throw ValidationError("not a kinebci-model v1 file");

    DecoderModel model;
    model.n_channels = 0;
    model.n_lags = -1;
    bool saw_end = false;
    std::string axes;

    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line == "end") {
            saw_end = true;
            break;
        }
        std::istringstream fields(line);
        std::string key;
        fields >> key;
        if (key == "n_channels") {
            fields >> model.n_channels;
        } else if (key == "n_lags") {
            fields >> model.n_lags;
        } else if (key == "axes") {
            fields >> axes;
        } else if (key == "meta") {
            std::string name, value;
            fields >> name;
            std::getline(fields, value);
            if (!value.empty() && value.front() == ' ')
                value.erase(value.begin());
            model.meta[name] = value;
        } else if (key == "intercept_x" || key == "intercept_y") {
            std::string value;
            fields >> value;
            (key == "intercept_x" ? model.intercept_x : model.intercept_y) =
                parse_double(value, key);
        } else if (key == "weights_x" || key == "weights_y") {
            auto& weights = key == "weights_x" ? model.weights_x : model.weights_y;
            std::string value;
            while (fields >> value)
                weights.push_back(parse_double(value, key));
        } else {
            throw ValidationError("unknown model field '" + key + "'");
        }
        if (fields.bad())
            throw ValidationError("malformed model line '" + line + "'");
    }
    if (!saw_end)
        throw ValidationError("model file missing end marker");
    if (model.n_channels < 1 || model.n_lags < 0)
        throw ValidationError("model file missing dimensions");
    if (axes.empty())
        throw ValidationError("model file missing axes field");

    model.has_x = axes.find('x') != std::string::npos;
    model.has_y = axes.find('y') != std::string::npos;
    const std::size_t expected = static_cast<std::size_t>(model.n_channels) *
                                 static_cast<std::size_t>(model.n_lags + 1);
    auto check_axis = [&](bool present, std::vector<double>& weights, const char* label) {
        if (present && weights.size() != expected)
            throw ValidationError(std::string("model ") + label + " has " +
                                  std::to_string(weights.size()) + " weights, expected " +
                                  std::to_string(expected));
        if (!present) {
            if (!weights.empty())
                throw ValidationError(std::string("model carries ") + label +
                                      " for an absent axis");
            weights.assign(expected, 0.0);
        }
    };
    check_axis(model.has_x, model.weights_x, "weights_x");
    check_axis(model.has_y, model.weights_y, "weights_y");
    try {
        model.validate();
    } catch (const ConfigError& e) {
        throw ValidationError(e.what());
    }
    return model;
}

DecoderModel read_model(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    return read_model(in);
}

namespace {

std::string percent(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", rate * 100.0);
    return buf;
}

} // namespace

std::string format_report(const RunStats& stats, SessionAxis axis) {
    std::ostringstream out;
    out << "# kinebci-report v1\n";
    out << "axis           " << (axis == SessionAxis::horizontal ? "horizontal" : "vertical")
        << '\n';
    out << "runs           " << stats.run_rates.size() << '\n';
    out << "trials         " << stats.n_trials << '\n';
    out << "success rate   " << percent(stats.mean_rate) << " (+/- " << percent(stats.std_rate)
        << ')';
    if (!stats.std_defined)
        out << " [single run; spread undefined]";
    out << '\n';
    out << "per-run rates ";
    for (double r : stats.run_rates)
        out << ' ' << percent(r);
    out << '\n';
    return out.str();
}

void write_report(const RunStats& stats, SessionAxis axis, const std::filesystem::path& path) {
    write_text_file(path, format_report(stats, axis));
}

void write_eval_csv(const EvalReport& report, std::ostream& out) {
    out << "# kinebci-eval v1\n";
    out << "t,observed_u,decoded_u,observed_v,decoded_v\n";
    for (std::size_t i = 0; i < report.series.t.size(); ++i)
        out << report.series.t[i] << ',' << format_double(report.series.observed_u[i]) << ','
            << format_double(report.series.decoded_u[i]) << ','
            << format_double(report.series.observed_v[i]) << ','
            << format_double(report.series.decoded_v[i]) << '\n';
}

void write_eval_csv(const EvalReport& report, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    write_eval_csv(report, out);
    if (!out)
        throw IoError("error while writing '" + path.string() + "'");
}

void write_wire(const std::vector<GestureCommand>& commands, const std::filesystem::path& path) {
    write_text_file(path, encode_stream(commands));
}

} // namespace kinebci
