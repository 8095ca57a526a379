#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "envtrack/envelope.hpp"

namespace envtrack {

inline constexpr double kPipelineRate = 64.0;
inline constexpr double kLagStepMs = 1000.0 / kPipelineRate;  // 15.625

enum class Condition { AV, A, V, ML };
enum class NoiseLevel { Noise, Quiet };

std::string to_string(Condition c);
std::string to_string(NoiseLevel n);
Condition condition_from_string(const std::string& s);
NoiseLevel noise_from_string(const std::string& s);

// Integer sample lags at 64 Hz, sorted ascending.
struct LagSpec {
    std::vector<int> lag_indices;

    int max_lag() const { return lag_indices.empty() ? 0 : lag_indices.back(); }
    std::size_t n_lags() const { return lag_indices.size(); }

    static LagSpec single(int lag) { return LagSpec{{lag}}; }
    // Closed-interval membership of the 64 Hz lag grid in [min_ms, max_ms].
    static LagSpec from_window_ms(double min_ms, double max_ms);
    static LagSpec full_sweep();  // lags 0..32 (0-500 ms)
};

struct TrialPair {
    std::vector<std::vector<double>> eeg_epoch;  // [channel][sample] at 64 Hz
    EnvelopeSeries envelope;                     // matching length at 64 Hz
    Condition condition = Condition::AV;
    NoiseLevel noise = NoiseLevel::Quiet;
    std::string speaker_id;
    std::string trial_id;
};

struct DecoderModel {
    Eigen::VectorXd weights;  // channels*n_lags + 1, intercept last
    double lambda = 0.0;
    LagSpec lag_spec;
    std::vector<std::string> training_trial_ids;
};

struct TrackingScore {
    std::string trial_id;
    double r = 0.0;
    double r_z = 0.0;
    Condition condition = Condition::AV;
    NoiseLevel noise = NoiseLevel::Quiet;
};

// Key identifying one condition cell of the 2x4 design.
using CellKey = std::pair<Condition, NoiseLevel>;

// The paper's 13-value lambda grid: 1e-2..1e4 by decades, 5e4, 1e5..1e9.
std::vector<double> paper_lambda_grid();

// Design matrix for the backward model: row t predicts envelope[t] from
// EEG at t + lag for every (channel, lag); trailing intercept column.
Eigen::MatrixXd build_lag_matrix(const std::vector<std::vector<double>>& eeg_epoch,
                                 const LagSpec& spec);

// w = (X'X + lambda*D)^-1 X'y with D identity except 0 at the intercept.
Eigen::VectorXd ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          double lambda);

double fisher_z(double r);
double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Per-trial leave-one-out scoring within each condition cell: average the
// weights of models fit on every other trial, reconstruct the held-out
// envelope, score r and Fisher z.
std::vector<TrackingScore> loo_scores(const std::vector<TrialPair>& trials,
                                      const LagSpec& spec, double lambda);

// Grid value minimizing mean LOO reconstruction MSE; ties go to the larger
// lambda. Selection is per condition cell; returns the per-cell choice.
std::map<CellKey, double> select_lambda(const std::vector<TrialPair>& trials,
                                        const LagSpec& spec,
                                        const std::vector<double>& grid);

struct SweepResult {
    std::vector<double> lag_ms;                    // 33 points
    std::map<CellKey, std::vector<double>> mean_r_z;  // per cell, per lag
};

// Single-lag models over the 0-500 ms grid; lambda chosen per cell per lag
// by LOO MSE over the given grid.
SweepResult single_lag_sweep(const std::vector<TrialPair>& trials,
                             const std::vector<double>& lambda_grid);

// Multi-lag window model (default 200-325 ms -> lags 13..20).
std::vector<TrackingScore> window_model(const std::vector<TrialPair>& trials,
                                        double window_min_ms = 200.0,
                                        double window_max_ms = 325.0,
                                        const std::vector<double>* lambda_grid = nullptr);

struct ChanceSummary {
    double mean_r = 0.0;
    double sd_r = 0.0;
    double p95_r = 0.0;
    std::vector<double> samples;  // per-permutation mean r
};

// Permutation chance level: envelope<->EEG pairings deranged within each
// condition cell, seeded and reproducible.
ChanceSummary chance_level(const std::vector<TrialPair>& trials, const LagSpec& spec,
                           double lambda, int n_perm, std::uint64_t seed);

// Averaged per-cell decoder weights (training on all trials of the cell).
std::map<CellKey, DecoderModel> cell_models(const std::vector<TrialPair>& trials,
                                            const LagSpec& spec, double lambda);

}  // namespace envtrack
