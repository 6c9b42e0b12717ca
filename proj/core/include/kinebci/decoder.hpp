#ifndef KINEBCI_DECODER_HPP
#define KINEBCI_DECODER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kinebci/recording.hpp"
#include "kinebci/signal.hpp"

namespace kinebci {

enum class Axis { x, y };

// Time-lagged linear velocity decoder. A decoded velocity is the intercept
// plus the weighted sum of every channel voltage over the current lag
// window:
//
//   u[t] = a0x + sum_n sum_k b[n][k][x] * e_n[t-k]
//
// with n over channels and k over lags 0..n_lags. Weights are stored
// row-major as w[n * (n_lags+1) + k]. A model is immutable after fitting
// and safe to share read-only across threads.
struct DecoderModel {
    int n_channels = 14;
    int n_lags = 5;
    bool has_x = false;
    bool has_y = false;
    double intercept_x = 0.0;
    double intercept_y = 0.0;
    std::vector<double> weights_x;
    std::vector<double> weights_y;

    /// Provenance recorded at calibration time (recording hash, options).
    std::map<std::string, std::string> meta;

    double weight(Axis axis, int channel, int lag) const;

    /// Weights per axis including the intercept: 1 + N*(K+1).
    int coefficients_per_axis() const { return 1 + n_channels * (n_lags + 1); }

    /// Throws ConfigError on bad dimensions or non-finite values.
    void validate() const;
};

// Lag-embedded regression problem. Row r corresponds to sample t = r +
// n_lags and is laid out [1, e_0[t], ..., e_{N-1}[t], e_0[t-1], ...,
// e_{N-1}[t-n_lags]]: intercept first, then one N-wide block per lag.
struct DesignMatrix {
    int n_channels = 0;
    int n_lags = 0;
    Eigen::MatrixXd X;
    Eigen::VectorXd target_u;
    Eigen::VectorXd target_v;

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index width() const { return X.cols(); }
};

struct FitOptions {
    double ridge = 0.0;       // penalty on non-intercept coefficients
    bool standardize = false; // z-score non-intercept columns before fitting
};

struct Velocity {
    double u = 0.0;
    double v = 0.0;
};

struct AxisEval {
    double r = 0.0;       // Pearson correlation, valid when r_defined
    bool r_defined = false;
    double rmse = 0.0;
};

/// Aligned decoded/observed velocity pairs for every warm sample,
/// kept for plotting.
struct EvalSeries {
    std::vector<std::int64_t> t;
    std::vector<double> observed_u, decoded_u;
    std::vector<double> observed_v, decoded_v;
};

struct EvalReport {
    AxisEval x;
    AxisEval y;
    std::size_t n_samples = 0;
    EvalSeries series;
};

/// Builds the lag-embedded design from a recording. The first n_lags
/// samples produce no rows. Throws InsufficientDataError when the
/// recording is shorter than n_lags+1.
DesignMatrix build_design(const Recording& recording, int n_lags);

/// Least-squares fit of both axes via Householder QR; with opts.ridge > 0
/// the non-intercept coefficients are L2-penalized through row
/// augmentation. A rank-deficient design with ridge == 0 throws
/// RankDeficiencyError carrying the deficient column count. An axis whose
/// target series is identically zero is fitted to zero and left unmarked.
DecoderModel fit(const DesignMatrix& design, const FitOptions& opts = {});

/// Decodes one velocity sample from a warm lag window. Throws
/// NotWarmError on a cold window, ConfigError on dimension mismatch.
Velocity predict(const DecoderModel& model, const LagWindow& window);

/// Streams the recording through a lag window and compares decoded
/// against recorded velocities over all warm samples. Pearson r is
/// flagged undefined when either series has zero variance.
EvalReport evaluate(const DecoderModel& model, const Recording& recording);

} // namespace kinebci

#endif
