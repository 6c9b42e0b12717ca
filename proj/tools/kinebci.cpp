// kinebci command-line front end: synthesize sessions, calibrate decoders,
// evaluate them, simulate closed-loop test phases, and replay cursor traces
// as robot gesture streams.
//
// Exit codes: 0 success, 2 usage, 3 data/validation, 4 rank deficiency.

#include <cmath>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kinebci/decoder.hpp"
#include "kinebci/errors.hpp"
#include "kinebci/gesture.hpp"
#include "kinebci/io.hpp"
#include "kinebci/session.hpp"
#include "kinebci/synth.hpp"

namespace {

using namespace kinebci;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct SynthArgs {
    std::string out;
    std::string axis = "x";
    std::uint64_t seed = 0;
    std::uint64_t subject_seed = 1;
    double sigma = 0.5;
    double weight_scale = 1.0;
    int trials = 5;
    double duration_s = 60.0;
    double fs = 128.0;
    int channels = 14;
    int lags = 5;
    bool acquisition_filter = false;
};

void run_synth(const SynthArgs& a) {
    SessionConfig cfg;
    cfg.n_training_trials = a.trials;
    cfg.trial_duration_s = a.duration_s;
    cfg.axis = a.axis == "y" ? SessionAxis::vertical : SessionAxis::horizontal;
    cfg.acquisition.fs = a.fs;
    cfg.acquisition.n_channels = a.channels;
    cfg.n_lags = a.lags;
    cfg.validate();

    const auto subject =
        SyntheticSubject::random(a.channels, a.lags, a.sigma, a.subject_seed, a.weight_scale);
    Recording rec = run_training_phase(cfg, subject, a.seed);
    if (a.acquisition_filter) {
        AcquisitionFilter filter(cfg.acquisition);
        for (auto& frame : rec.frames)
            frame = filter.step(frame);
    }
    write_recording_csv(rec, a.out);
    std::cout << "wrote " << a.out << " (" << rec.size() << " rows)\n";
    std::cout << "hash " << hash_file(a.out) << '\n';
}

struct FitArgs {
    std::string recording;
    std::string out;
    double ridge = 0.0;
    bool standardize = false;
    int lags = 5;
};

void run_fit(const FitArgs& a) {
    const Recording rec = read_recording_csv(a.recording);
    const DesignMatrix design = build_design(rec, a.lags);
    FitOptions opts;
    opts.ridge = a.ridge;
    opts.standardize = a.standardize;
    DecoderModel model = fit(design, opts);
    model.meta["recording_hash"] = hash_file(a.recording);
    model.meta["ridge"] = format_double(a.ridge);
    model.meta["standardize"] = a.standardize ? "true" : "false";
    model.meta["lags"] = std::to_string(a.lags);
    write_model(model, a.out);

    double norm_sq = 0.0;
    if (model.has_x)
        for (double w : model.weights_x)
            norm_sq += w * w;
    if (model.has_y)
        for (double w : model.weights_y)
            norm_sq += w * w;
    std::string axes;
    if (model.has_x)
        axes += 'x';
    if (model.has_y)
        axes += 'y';
    std::cout << "wrote " << a.out << '\n';
    std::cout << "axes " << (axes.empty() ? "-" : axes) << '\n';
    std::cout << "weight-norm " << format_double(std::sqrt(norm_sq)) << '\n';
}

struct EvalArgs {
    std::string model;
    std::string recording;
    std::string plot_out;
};

void print_axis_eval(const char* label, const AxisEval& eval) {
    std::cout << "axis " << label << " r ";
    if (eval.r_defined)
        std::cout << format_double(eval.r);
    else
        std::cout << "undefined";
    std::cout << " rmse " << format_double(eval.rmse) << '\n';
}

void run_eval(const EvalArgs& a) {
    const DecoderModel model = read_model(a.model);
    const Recording rec = read_recording_csv(a.recording);
    const EvalReport report = evaluate(model, rec);
    std::cout << "samples " << report.n_samples << '\n';
    print_axis_eval("x", report.x);
    print_axis_eval("y", report.y);
    if (!a.plot_out.empty()) {
        write_eval_csv(report, a.plot_out);
        std::cout << "wrote " << a.plot_out << '\n';
    }
}

struct SimulateArgs {
    std::string model;
    std::string axis = "horizontal";
    std::uint64_t seed = 0;
    std::uint64_t subject_seed = 1;
    double sigma = 0.5;
    double weight_scale = 1.0;
    double fs = 128.0;
    int runs = 1;
    int trials_per_run = 6;
    double timeout_s = 15.0;
    double target_halfwidth = 0.1;
    double prerun_s = 2.0;
    double gain = 2.0;
    double cap = 0.5;
    std::string report_out;
    std::string trace_out;
};

void run_simulate(const SimulateArgs& a) {
    const DecoderModel model = read_model(a.model);

    SessionConfig cfg;
    cfg.axis = a.axis == "vertical" ? SessionAxis::vertical : SessionAxis::horizontal;
    cfg.trials_per_run = a.trials_per_run;
    cfg.test_timeout_s = a.timeout_s;
    cfg.target_halfwidth = a.target_halfwidth;
    cfg.prerun_s = a.prerun_s;
    cfg.acquisition.fs = a.fs;
    cfg.acquisition.n_channels = model.n_channels;
    cfg.n_lags = model.n_lags;
    cfg.validate();

    const auto subject = SyntheticSubject::random(model.n_channels, model.n_lags, a.sigma,
                                                  a.subject_seed, a.weight_scale);
    IntentPolicy policy;
    policy.gain = a.gain;
    policy.cap = a.cap;
    policy.validate();

    // Run k gets seed base+k, so a multi-run session is one command.
    std::vector<std::vector<Trial>> runs;
    for (int k = 0; k < a.runs; ++k) {
        TestPhaseResult result =
            run_test_phase(model, subject, policy, cfg, a.seed + static_cast<std::uint64_t>(k));
        if (!a.trace_out.empty()) {
            const std::string path = a.trace_out + ".run" + std::to_string(k) + ".csv";
            write_recording_csv(result.recording, path);
        }
        runs.push_back(std::move(result.trials));
    }

    const RunStats stats = compute_stats(runs);
    const std::string text = format_report(stats, cfg.axis);
    std::cout << text;
    if (!a.report_out.empty())
        write_text_file(a.report_out, text);
}

struct ReplayArgs {
    std::string recording;
    std::string out;
    double rate_hz = 8.0;
    double dead_zone = 0.0;
};

void run_replay(const ReplayArgs& a) {
    const Recording rec = read_recording_csv(a.recording);
    ReplayConfig cfg;
    cfg.command_rate_hz = a.rate_hz;
    cfg.dead_zone = a.dead_zone;
    cfg.validate();
    const std::vector<GestureCommand> commands = replay(rec, cfg);
    write_wire(commands, a.out);
    std::cout << "wrote " << a.out << " (" << commands.size() << " commands)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"offline BCI decoding toolkit: imagined-kinematics cursor control"};
    app.set_version_flag("--version", "kinebci 0.1.0");
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Synthesize a training-phase recording");
    synth->add_option("--out", synth_args.out, "Recording CSV to write")->required();
    synth->add_option("--axis", synth_args.axis, "Pursuit axis")
        ->check(CLI::IsMember({"x", "y"}))
        ->capture_default_str();
    synth->add_option("--seed", synth_args.seed, "Session seed (trajectories and noise)")
        ->envname("KINEBCI_SEED")
        ->required();
    synth->add_option("--subject-seed", synth_args.subject_seed, "Subject encoding-weight seed")
        ->capture_default_str();
    synth->add_option("--sigma", synth_args.sigma, "Channel noise sigma (microvolts)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    synth->add_option("--weight-scale", synth_args.weight_scale, "Encoding weight scale")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth->add_option("--trials", synth_args.trials, "Training trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth->add_option("--duration", synth_args.duration_s, "Trial duration (s)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth->add_option("--fs", synth_args.fs, "Sampling rate (Hz)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth->add_option("--channels", synth_args.channels, "EEG channel count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    synth->add_option("--lags", synth_args.lags, "Decoder lag count")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    synth->add_flag("--acquisition-filter", synth_args.acquisition_filter,
                    "Pass channels through the acquisition band-pass chain");

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Calibrate a decoder from a recording");
    fit_cmd->add_option("--recording", fit_args.recording, "Training recording CSV")
        ->required()
        ->check(CLI::ExistingFile);
    fit_cmd->add_option("--out", fit_args.out, "Model file to write")->required();
    fit_cmd->add_option("--ridge", fit_args.ridge, "L2 penalty on non-intercept weights")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    fit_cmd->add_flag("--standardize", fit_args.standardize,
                      "Z-score design columns before fitting");
    fit_cmd->add_option("--lags", fit_args.lags, "Decoder lag count")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model against a recording");
    eval_cmd->add_option("--model", eval_args.model, "Model file")
        ->required()
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--recording", eval_args.recording, "Recording CSV")
        ->required()
        ->check(CLI::ExistingFile);
    eval_cmd->add_option("--plot-out", eval_args.plot_out,
                         "CSV of observed vs decoded velocity per sample");

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Run closed-loop test-phase runs");
    sim->add_option("--model", sim_args.model, "Model file")
        ->required()
        ->check(CLI::ExistingFile);
    sim->add_option("--axis", sim_args.axis, "Session axis")
        ->check(CLI::IsMember({"horizontal", "vertical"}))
        ->capture_default_str();
    sim->add_option("--seed", sim_args.seed, "Base seed; run k uses seed+k")
        ->envname("KINEBCI_SEED")
        ->required();
    sim->add_option("--subject-seed", sim_args.subject_seed, "Subject encoding-weight seed")
        ->capture_default_str();
    sim->add_option("--sigma", sim_args.sigma, "Channel noise sigma (microvolts)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sim->add_option("--weight-scale", sim_args.weight_scale, "Encoding weight scale")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--fs", sim_args.fs, "Sampling rate (Hz)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--runs", sim_args.runs, "Number of runs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--trials-per-run", sim_args.trials_per_run, "Trials per run")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--timeout", sim_args.timeout_s, "Trial timeout (s)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--target-halfwidth", sim_args.target_halfwidth, "Target half-width")
        ->capture_default_str();
    sim->add_option("--prerun", sim_args.prerun_s, "Idle decoding before the first trial (s)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sim->add_option("--gain", sim_args.gain, "Intent gain toward the target")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--cap", sim_args.cap, "Intent velocity cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--report", sim_args.report_out, "Report file to write");
    sim->add_option("--trace-out", sim_args.trace_out,
                    "Prefix for per-run recordings (<prefix>.run<k>.csv)");

    ReplayArgs replay_args;
    auto* replay_cmd = app.add_subcommand("replay", "Replay a recording as a gesture wire file");
    replay_cmd->add_option("--recording", replay_args.recording, "Recording CSV")
        ->required()
        ->check(CLI::ExistingFile);
    replay_cmd->add_option("--out", replay_args.out, "Wire file to write")->required();
    replay_cmd->add_option("--rate", replay_args.rate_hz, "Command rate (Hz)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    replay_cmd->add_option("--dead-zone", replay_args.dead_zone, "Neutral half-width")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand(synth))
            run_synth(synth_args);
        else if (app.got_subcommand(fit_cmd))
            run_fit(fit_args);
        else if (app.got_subcommand(eval_cmd))
            run_eval(eval_args);
        else if (app.got_subcommand(sim))
            run_simulate(sim_args);
        else if (app.got_subcommand(replay_cmd))
            run_replay(replay_args);
    } catch (const RankDeficiencyError& e) {
        std::cerr << "kinebci: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "kinebci: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "kinebci: unexpected error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
