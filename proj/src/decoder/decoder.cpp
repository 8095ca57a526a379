#include "envtrack/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "envtrack/parallel.hpp"

namespace envtrack {

std::string to_string(Condition c) {
    switch (c) {
        case Condition::AV: return "AV";
        case Condition::A: return "A";
        case Condition::V: return "V";
        case Condition::ML: return "ML";
    }
    return "?";
}

std::string to_string(NoiseLevel n) {
    return n == NoiseLevel::Noise ? "noise" : "quiet";
}

Condition condition_from_string(const std::string& s) {
    if (s == "AV") return Condition::AV;
    if (s == "A") return Condition::A;
    if (s == "V") return Condition::V;
    if (s == "ML") return Condition::ML;
    throw std::invalid_argument("unknown condition tag: " + s);
}

NoiseLevel noise_from_string(const std::string& s) {
    if (s == "noise") return NoiseLevel::Noise;
    if (s == "quiet") return NoiseLevel::Quiet;
    throw std::invalid_argument("unknown noise tag: " + s);
}

LagSpec LagSpec::from_window_ms(double min_ms, double max_ms) {
    if (max_ms < min_ms)
        throw std::invalid_argument("LagSpec: inverted window");
    LagSpec spec;
    for (int k = 0; k <= 512; ++k) {
        const double ms = k * kLagStepMs;
        if (ms > max_ms) break;
        if (ms >= min_ms) spec.lag_indices.push_back(k);
    }
    if (spec.lag_indices.empty())
        throw std::invalid_argument("LagSpec: empty lag set");
    return spec;
}

LagSpec LagSpec::full_sweep() {
    LagSpec spec;
    spec.lag_indices.resize(33);
    std::iota(spec.lag_indices.begin(), spec.lag_indices.end(), 0);
    return spec;
}

std::vector<double> paper_lambda_grid() {
    std::vector<double> grid;
    for (int e = -2; e <= 4; ++e) grid.push_back(std::pow(10.0, e));
    grid.push_back(5e4);
    for (int e = 5; e <= 9; ++e) grid.push_back(std::pow(10.0, e));
    return grid;
}

Eigen::MatrixXd build_lag_matrix(const std::vector<std::vector<double>>& eeg_epoch,
                                 const LagSpec& spec) {
    if (eeg_epoch.empty()) throw std::invalid_argument("build_lag_matrix: no channels");
    const int n_samples = static_cast<int>(eeg_epoch[0].size());
    const int max_lag = spec.max_lag();
    if (n_samples <= max_lag)
        throw std::invalid_argument("build_lag_matrix: epoch shorter than max lag");
    const int n_rows = n_samples - max_lag;
    const int n_ch = static_cast<int>(eeg_epoch.size());
    const int n_lags = static_cast<int>(spec.n_lags());

    Eigen::MatrixXd X(n_rows, n_ch * n_lags + 1);
    for (int c = 0; c < n_ch; ++c) {
        for (int l = 0; l < n_lags; ++l) {
            const int lag = spec.lag_indices[l];
            for (int t = 0; t < n_rows; ++t)
                X(t, c * n_lags + l) = eeg_epoch[c][t + lag];
        }
    }
    X.col(n_ch * n_lags).setOnes();
    return X;
}

Eigen::VectorXd ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("ridge_fit: lambda must be >= 0");
    const Eigen::Index p = X.cols();
    Eigen::MatrixXd A = X.transpose() * X;
    // No penalty on the intercept (last column).
    for (Eigen::Index j = 0; j + 1 < p; ++j) A(j, j) += lambda;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("ridge_fit: decomposition failed");
    // A rank-deficient normal system is still consistent, so a residual
    // check alone cannot see it; inspect the pivoted diagonal instead.
    const Eigen::VectorXd d = ldlt.vectorD();
    const double dmax = d.cwiseAbs().maxCoeff();
    if (!(dmax > 0.0) || d.cwiseAbs().minCoeff() <= 1e-12 * dmax)
        throw std::runtime_error("ridge_fit: singular system (try lambda > 0)");
    const Eigen::VectorXd w = ldlt.solve(X.transpose() * y);
    const double resid = (A * w - X.transpose() * y).norm();
    const double scale = (X.transpose() * y).norm();
    if (!(resid <= 1e-6 * (scale + 1.0)))
        throw std::runtime_error("ridge_fit: singular system (try lambda > 0)");
    return w;
}

double fisher_z(double r) {
    if (!(std::abs(r) < 1.0)) throw std::invalid_argument("fisher_z: |r| must be < 1");
    return std::atanh(r);
}

namespace {

// Scoring-path variant: a noise-free reconstruction can hit |r| == 1 to
// machine precision, so nudge just inside the open interval.
double score_z(double r) {
    constexpr double kLim = 1.0 - 1e-15;
    return std::atanh(std::clamp(r, -kLim, kLim));
}

}  // namespace

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("pearson: length mismatch");
    const Eigen::VectorXd da = a.array() - a.mean();
    const Eigen::VectorXd db = b.array() - b.mean();
    const double denom = std::sqrt(da.squaredNorm() * db.squaredNorm());
    if (denom <= 0.0) throw DegenerateInputError("pearson: zero variance");
    return std::clamp(da.dot(db) / denom, -1.0, 1.0);
}

namespace {

// One trial's design matrix and target, z-scored per feature with the
// trial's own statistics (intercept column untouched). Using each trial's
// own statistics keeps correlations invariant to channel/envelope gain.
struct StdTrial {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

StdTrial standardize_trial(const TrialPair& trial, const LagSpec& spec) {
    StdTrial st;
    st.X = build_lag_matrix(trial.eeg_epoch, spec);
    const int n_rows = static_cast<int>(st.X.rows());
    if (static_cast<int>(trial.envelope.samples.size()) < n_rows)
        throw std::invalid_argument("loo_scores: envelope shorter than EEG epoch");
    st.y = Eigen::Map<const Eigen::VectorXd>(trial.envelope.samples.data(), n_rows);

    for (Eigen::Index j = 0; j + 1 < st.X.cols(); ++j) {
        const double m = st.X.col(j).mean();
        st.X.col(j).array() -= m;
        const double sd = std::sqrt(st.X.col(j).squaredNorm() / (n_rows - 1));
        if (sd > 0.0) st.X.col(j) /= sd;
    }
    const double ym = st.y.mean();
    st.y.array() -= ym;
    const double ysd = std::sqrt(st.y.squaredNorm() / (n_rows - 1));
    if (ysd > 0.0) st.y /= ysd;
    return st;
}

std::map<CellKey, std::vector<std::size_t>> group_by_cell(
    const std::vector<TrialPair>& trials) {
    std::map<CellKey, std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < trials.size(); ++i)
        cells[{trials[i].condition, trials[i].noise}].push_back(i);
    return cells;
}

// Per-trial ridge fits for one cell at one lambda, from precomputed
// standardized trials.
std::vector<Eigen::VectorXd> fit_cell(const std::vector<StdTrial>& st, double lambda) {
    std::vector<Eigen::VectorXd> w(st.size());
    parallel_for(st.size(), [&](std::size_t j) { w[j] = ridge_fit(st[j].X, st[j].y, lambda); });
    return w;
}

struct CellScores {
    std::vector<double> r;    // per trial, cell order
    std::vector<double> mse;  // reconstruction MSE on standardized target
};

CellScores score_cell_loo(const std::vector<StdTrial>& st,
                          const std::vector<Eigen::VectorXd>& w) {
    const std::size_t n = st.size();
    Eigen::VectorXd w_sum = Eigen::VectorXd::Zero(w[0].size());
    for (const auto& wj : w) w_sum += wj;  // fixed order: bit-stable
    CellScores out;
    out.r.resize(n);
    out.mse.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::VectorXd w_avg = (w_sum - w[i]) / static_cast<double>(n - 1);
        const Eigen::VectorXd pred = st[i].X * w_avg;
        out.r[i] = pearson(pred, st[i].y);
        out.mse[i] = (pred - st[i].y).squaredNorm() / static_cast<double>(pred.size());
    }
    return out;
}

double select_lambda_cell(const std::vector<StdTrial>& st,
                          const std::vector<double>& grid) {
    double best_lambda = grid.front();
    double best_mse = std::numeric_limits<double>::infinity();
    for (double lambda : grid) {
        const auto w = fit_cell(st, lambda);
        const CellScores sc = score_cell_loo(st, w);
        const double mean_mse =
            std::accumulate(sc.mse.begin(), sc.mse.end(), 0.0) / sc.mse.size();
        // Ties break toward the larger lambda.
        if (mean_mse <= best_mse) {
            best_mse = mean_mse;
            best_lambda = lambda;
        }
    }
    return best_lambda;
}

std::vector<TrackingScore> score_trials_per_cell(
    const std::vector<TrialPair>& trials, const LagSpec& spec,
    const std::function<double(const CellKey&, const std::vector<StdTrial>&)>& pick_lambda) {
    std::vector<TrackingScore> scores;
    for (const auto& [key, idx] : group_by_cell(trials)) {
        if (idx.size() < 2) continue;  // skipped with warning at the CLI layer
        std::vector<StdTrial> st(idx.size());
        parallel_for(idx.size(),
                     [&](std::size_t k) { st[k] = standardize_trial(trials[idx[k]], spec); });
        const double lambda = pick_lambda(key, st);
        const auto w = fit_cell(st, lambda);
        const CellScores sc = score_cell_loo(st, w);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            TrackingScore s;
            s.trial_id = trials[idx[k]].trial_id;
            s.condition = key.first;
            s.noise = key.second;
            s.r = sc.r[k];
            s.r_z = score_z(s.r);
            scores.push_back(s);
        }
    }
    return scores;
}

}  // namespace

std::vector<TrackingScore> loo_scores(const std::vector<TrialPair>& trials,
                                      const LagSpec& spec, double lambda) {
    return score_trials_per_cell(
        trials, spec, [&](const CellKey&, const std::vector<StdTrial>&) { return lambda; });
}

std::map<CellKey, double> select_lambda(const std::vector<TrialPair>& trials,
                                        const LagSpec& spec,
                                        const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("select_lambda: empty grid");
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    std::map<CellKey, double> out;
    for (const auto& [key, idx] : group_by_cell(trials)) {
        if (idx.size() < 2) continue;
        std::vector<StdTrial> st(idx.size());
        parallel_for(idx.size(),
                     [&](std::size_t k) { st[k] = standardize_trial(trials[idx[k]], spec); });
        out[key] = select_lambda_cell(st, sorted);
    }
    if (out.empty()) throw std::invalid_argument("select_lambda: need >= 2 trials in a cell");
    return out;
}

SweepResult single_lag_sweep(const std::vector<TrialPair>& trials,
                             const std::vector<double>& lambda_grid) {
    SweepResult result;
    for (int lag = 0; lag <= 32; ++lag) result.lag_ms.push_back(lag * kLagStepMs);

    for (const auto& [key, idx] : group_by_cell(trials)) {
        if (idx.size() < 2) continue;
        std::vector<double> curve(33, 0.0);
        for (int lag = 0; lag <= 32; ++lag) {
            const LagSpec spec = LagSpec::single(lag);
            std::vector<StdTrial> st(idx.size());
            parallel_for(idx.size(),
                         [&](std::size_t k) { st[k] = standardize_trial(trials[idx[k]], spec); });
            const double lambda = select_lambda_cell(st, lambda_grid);
            const auto w = fit_cell(st, lambda);
            const CellScores sc = score_cell_loo(st, w);
            double acc = 0.0;
            for (double r : sc.r) acc += score_z(r);
            curve[lag] = acc / static_cast<double>(sc.r.size());
        }
        result.mean_r_z[key] = std::move(curve);
    }
    return result;
}

std::vector<TrackingScore> window_model(const std::vector<TrialPair>& trials,
                                        double window_min_ms, double window_max_ms,
                                        const std::vector<double>* lambda_grid) {
    const LagSpec spec = LagSpec::from_window_ms(window_min_ms, window_max_ms);
    const std::vector<double> grid = lambda_grid ? *lambda_grid : paper_lambda_grid();
    return score_trials_per_cell(
        trials, spec,
        [&](const CellKey&, const std::vector<StdTrial>& st) {
            return select_lambda_cell(st, grid);
        });
}

ChanceSummary chance_level(const std::vector<TrialPair>& trials, const LagSpec& spec,
                           double lambda, int n_perm, std::uint64_t seed) {
    if (n_perm < 1) throw std::invalid_argument("chance_level: n_perm must be >= 1");
    if (trials.size() < 2) throw std::invalid_argument("chance_level: need >= 2 trials");
    std::mt19937_64 rng(seed);

    const auto cells = group_by_cell(trials);
    ChanceSummary summary;
    for (int p = 0; p < n_perm; ++p) {
        std::vector<TrialPair> permuted = trials;
        for (const auto& [key, idx] : cells) {
            if (idx.size() < 2) continue;
            // Uniform derangement by rejection.
            std::vector<std::size_t> perm(idx.size());
            std::iota(perm.begin(), perm.end(), 0);
            bool ok = false;
            while (!ok) {
                std::shuffle(perm.begin(), perm.end(), rng);
                ok = true;
                for (std::size_t k = 0; k < perm.size(); ++k)
                    if (perm[k] == k) { ok = false; break; }
            }
            for (std::size_t k = 0; k < idx.size(); ++k)
                permuted[idx[k]].envelope = trials[idx[perm[k]]].envelope;
        }
        const auto scores = loo_scores(permuted, spec, lambda);
        double acc = 0.0;
        for (const auto& s : scores) acc += s.r;
        summary.samples.push_back(scores.empty() ? 0.0 : acc / scores.size());
    }

    const double m = std::accumulate(summary.samples.begin(), summary.samples.end(), 0.0) /
                     summary.samples.size();
    summary.mean_r = m;
    double var = 0.0;
    for (double v : summary.samples) var += (v - m) * (v - m);
    summary.sd_r = summary.samples.size() > 1
                       ? std::sqrt(var / (summary.samples.size() - 1))
                       : 0.0;
    std::vector<double> sorted = summary.samples;
    std::sort(sorted.begin(), sorted.end());
    const double pos = 0.95 * (sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    summary.p95_r = sorted[lo] + (pos - lo) * (sorted[hi] - sorted[lo]);
    return summary;
}

std::map<CellKey, DecoderModel> cell_models(const std::vector<TrialPair>& trials,
                                            const LagSpec& spec, double lambda) {
    std::map<CellKey, DecoderModel> models;
    for (const auto& [key, idx] : group_by_cell(trials)) {
        std::vector<StdTrial> st(idx.size());
        parallel_for(idx.size(),
                     [&](std::size_t k) { st[k] = standardize_trial(trials[idx[k]], spec); });
        const auto w = fit_cell(st, lambda);
        DecoderModel model;
        model.lambda = lambda;
        model.lag_spec = spec;
        model.weights = Eigen::VectorXd::Zero(w[0].size());
        for (const auto& wj : w) model.weights += wj;
        model.weights /= static_cast<double>(w.size());
        for (std::size_t k : idx) model.training_trial_ids.push_back(trials[k].trial_id);
        models[key] = std::move(model);
    }
    return models;
}

}  // namespace envtrack
