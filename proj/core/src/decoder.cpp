#include "kinebci/decoder.hpp"

#include <cmath>
#include <string>

#include "kinebci/errors.hpp"

namespace kinebci {

double DecoderModel::weight(Axis axis, int channel, int lag) const {
    const auto& w = axis == Axis::x ? weights_x : weights_y;
    return w[static_cast<std::size_t>(channel * (n_lags + 1) + lag)];
}

void DecoderModel::validate() const {
    if (n_channels < 1 || n_lags < 0)
        throw ConfigError("model dimensions invalid");
    const std::size_t expected = static_cast<std::size_t>(n_channels) *
                                 static_cast<std::size_t>(n_lags + 1);
    if (weights_x.size() != expected || weights_y.size() != expected)
        throw ConfigError("weight tensor must be N x (K+1) per axis");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(intercept_x) || !finite(intercept_y))
        throw ConfigError("model intercepts must be finite");
    for (double w : weights_x)
        if (!finite(w))
            throw ConfigError("model weights must be finite");
    for (double w : weights_y)
        if (!finite(w))
            throw ConfigError("model weights must be finite");
}

DesignMatrix build_design(const Recording& recording, int n_lags) {
    if (n_lags < 0)
        throw ConfigError("lag count must be nonnegative");
    const auto total = static_cast<std::int64_t>(recording.size());
    const int n = recording.cfg.n_channels;
    if (total < n_lags + 1)
        throw InsufficientDataError("recording has " + std::to_string(total) +
                                    " samples, need at least " + std::to_string(n_lags + 1));
    if (recording.u.size() != recording.size() || recording.v.size() != recording.size())
        throw InsufficientDataError("recording lacks aligned velocity labels");

    DesignMatrix design;
    design.n_channels = n;
    design.n_lags = n_lags;
    const Eigen::Index rows = total - n_lags;
    const Eigen::Index width = 1 + static_cast<Eigen::Index>(n) * (n_lags + 1);
    design.X.resize(rows, width);
    design.target_u.resize(rows);
    design.target_v.resize(rows);

    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::int64_t t = r + n_lags;
        design.X(r, 0) = 1.0;
        for (int k = 0; k <= n_lags; ++k) {
            const auto& channels = recording.frames[static_cast<std::size_t>(t - k)].channels;
            if (channels.size() != static_cast<std::size_t>(n))
                throw ConfigError("frame channel count mismatch at t=" + std::to_string(t - k));
            const Eigen::Index base = 1 + static_cast<Eigen::Index>(k) * n;
            for (int c = 0; c < n; ++c)
                design.X(r, base + c) = channels[static_cast<std::size_t>(c)];
        }
        design.target_u(r) = recording.u[static_cast<std::size_t>(t)];
        design.target_v(r) = recording.v[static_cast<std::size_t>(t)];
    }
    return design;
}

namespace {

// Solves one axis in design-column order (intercept first, then lag-major
// channel blocks). Standardization and the ridge augmentation both happen
// here so the two axes see identical treatment.
Eigen::VectorXd solve_axis(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const FitOptions& opts) {
    const Eigen::Index rows = X.rows();
    const Eigen::Index width = X.cols();
    const Eigen::Index p = width - 1; // penalized columns

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(width);
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(width);
    Eigen::MatrixXd Z;
    const Eigen::MatrixXd* work = &X;
    if (opts.standardize) {
        Z = X;
        for (Eigen::Index j = 1; j < width; ++j) {
            mean(j) = Z.col(j).mean();
            Z.col(j).array() -= mean(j);
            const double sd = std::sqrt(Z.col(j).squaredNorm() / static_cast<double>(rows));
            if (sd > 0.0) {
                scale(j) = sd;
                Z.col(j) /= sd;
            }
        }
        work = &Z;
    }

    Eigen::VectorXd beta;
    if (opts.ridge > 0.0) {
        // Augmented rows [0 | sqrt(ridge) I] keep the intercept unpenalized
        // and make the stacked system full rank for any design.
        Eigen::MatrixXd A(rows + p, width);
        A.topRows(rows) = *work;
        A.bottomRows(p).setZero();
        const double root = std::sqrt(opts.ridge);
        for (Eigen::Index j = 0; j < p; ++j)
            A(rows + j, j + 1) = root;
        Eigen::VectorXd b = Eigen::VectorXd::Zero(rows + p);
        b.head(rows) = y;
        beta = A.householderQr().solve(b);
    } else {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(*work);
        if (rows < width)
            throw RankDeficiencyError(
                "underdetermined design: " + std::to_string(rows) + " rows for " +
                    std::to_string(width) + " columns; set ridge > 0",
                static_cast<int>(width - rows));
        if (qr.rank() < width) {
            const int deficient = static_cast<int>(width - qr.rank());
            throw RankDeficiencyError(
                "design matrix rank deficient: rank " + std::to_string(qr.rank()) + " of " +
                    std::to_string(width) + " columns (" + std::to_string(deficient) +
                    " deficient); set ridge > 0",
                deficient);
        }
        beta = qr.solve(y);
    }

    if (opts.standardize) {
        // Map coefficients back to raw column units.
        for (Eigen::Index j = 1; j < width; ++j) {
            beta(j) /= scale(j);
            beta(0) -= beta(j) * mean(j);
        }
    }
    return beta;
}

} // namespace

DecoderModel fit(const DesignMatrix& design, const FitOptions& opts) {
    if (opts.ridge < 0.0)
        throw ConfigError("ridge weight must be nonnegative");
    if (design.rows() < 1)
        throw InsufficientDataError("design matrix has no rows");

    const int n = design.n_channels;
    const int lags = design.n_lags;
    DecoderModel model;
    model.n_channels = n;
    model.n_lags = lags;
    const std::size_t n_weights = static_cast<std::size_t>(n) * static_cast<std::size_t>(lags + 1);
    model.weights_x.assign(n_weights, 0.0);
    model.weights_y.assign(n_weights, 0.0);

    auto fit_axis = [&](const Eigen::VectorXd& target, double& intercept,
                        std::vector<double>& weights, bool& present) {
        if (target.isZero(0.0)) {
            // All-zero targets solve to the all-zero model exactly.
            intercept = 0.0;
            present = false;
            return;
        }
        const Eigen::VectorXd beta = solve_axis(design.X, target, opts);
        intercept = beta(0);
        for (int k = 0; k <= lags; ++k)
            for (int c = 0; c < n; ++c)
                weights[static_cast<std::size_t>(c * (lags + 1) + k)] =
                    beta(1 + static_cast<Eigen::Index>(k) * n + c);
        present = true;
    };

    fit_axis(design.target_u, model.intercept_x, model.weights_x, model.has_x);
    fit_axis(design.target_v, model.intercept_y, model.weights_y, model.has_y);
    model.validate();
    return model;
}

Velocity predict(const DecoderModel& model, const LagWindow& window) {
    if (!window.warm())
        throw NotWarmError("lag window holds " + std::to_string(window.size()) +
                           " frame(s), needs " + std::to_string(window.n_lags() + 1));
    if (window.n_channels() != model.n_channels || window.n_lags() != model.n_lags)
        throw ConfigError("lag window dimensions do not match the model");

    Velocity vel{model.intercept_x, model.intercept_y};
    const int stride = model.n_lags + 1;
    for (int k = 0; k <= model.n_lags; ++k) {
        const auto& channels = window.at_lag(k).channels;
        for (int c = 0; c < model.n_channels; ++c) {
            const double e = channels[static_cast<std::size_t>(c)];
            vel.u += model.weights_x[static_cast<std::size_t>(c * stride + k)] * e;
            vel.v += model.weights_y[static_cast<std::size_t>(c * stride + k)] * e;
        }
    }
    return vel;
}

namespace {

AxisEval eval_axis(const std::vector<double>& observed, const std::vector<double>& decoded) {
    AxisEval out;
    const std::size_t n = observed.size();
    double mean_obs = 0.0, mean_dec = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_obs += observed[i];
        mean_dec += decoded[i];
    }
    mean_obs /= static_cast<double>(n);
    mean_dec /= static_cast<double>(n);

    double ss_obs = 0.0, ss_dec = 0.0, cross = 0.0, sq_err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d_obs = observed[i] - mean_obs;
        const double d_dec = decoded[i] - mean_dec;
        ss_obs += d_obs * d_obs;
        ss_dec += d_dec * d_dec;
        cross += d_obs * d_dec;
        const double err = decoded[i] - observed[i];
        sq_err += err * err;
    }
    out.rmse = std::sqrt(sq_err / static_cast<double>(n));
    if (ss_obs > 0.0 && ss_dec > 0.0) {
        out.r = cross / std::sqrt(ss_obs * ss_dec);
        out.r = std::min(1.0, std::max(-1.0, out.r));
        out.r_defined = true;
    }
    return out;
}

} // namespace

EvalReport evaluate(const DecoderModel& model, const Recording& recording) {
    if (recording.size() < static_cast<std::size_t>(model.n_lags + 1))
        throw InsufficientDataError("recording too short to warm the lag window");

    EvalReport report;
    LagWindow window(model.n_channels, model.n_lags);
    for (std::size_t i = 0; i < recording.size(); ++i) {
        window.push(recording.frames[i]);
        if (!window.warm())
            continue;
        const Velocity vel = predict(model, window);
        report.series.t.push_back(recording.frames[i].t);
        report.series.observed_u.push_back(recording.u[i]);
        report.series.decoded_u.push_back(vel.u);
        report.series.observed_v.push_back(recording.v[i]);
        report.series.decoded_v.push_back(vel.v);
    }
    report.n_samples = report.series.t.size();
    report.x = eval_axis(report.series.observed_u, report.series.decoded_u);
    report.y = eval_axis(report.series.observed_v, report.series.decoded_v);
    return report;
}

} // namespace kinebci
