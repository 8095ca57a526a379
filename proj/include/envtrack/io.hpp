#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "envtrack/decoder.hpp"
#include "envtrack/eegprep.hpp"
#include "envtrack/signal.hpp"

namespace envtrack {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Length-prefixed JSON header (u32 LE byte count) followed by a row-major
// little-endian f32 payload, channels x samples.
struct BinarySignal {
    std::vector<std::vector<float>> data;  // [channel][sample]
    double rate_hz = 0.0;
    std::vector<std::string> labels;
};

void write_binary_signal(const std::filesystem::path& path, const BinarySignal& sig);
BinarySignal read_binary_signal(const std::filesystem::path& path);

BinarySignal to_binary(const Signal& s, const std::string& label = "ch0");
Signal to_signal(const BinarySignal& b, std::size_t channel = 0);

// Mono or first-channel PCM WAV: 16/24/32-bit integer and 32-bit float.
Signal read_wav(const std::filesystem::path& path);

struct GrayImage;  // features.hpp owns the definition

// 8-bit binary PGM (P5).
void read_pgm_into(const std::filesystem::path& path, int& width, int& height,
                   std::vector<std::uint8_t>& pixels);

struct ManifestTrial {
    std::string trial_id;
    std::string speaker_id;
    std::string condition;  // AV | A | V | ML
    std::string noise;      // noise | quiet
    std::string audio_path;
    std::string eeg_path;
    double eeg_offset_s = 0.0;
    double duration_s = 30.0;
};

struct TrialManifest {
    std::vector<ManifestTrial> trials;
    std::string subject_id;
    std::string likeability_json;  // opaque metadata, carried through

    void validate(const std::filesystem::path& base_dir) const;
};

TrialManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const TrialManifest& manifest);

// CSV with a versioned "# envtrack-csv v1 <schema>" comment line.
void write_scores_csv(const std::filesystem::path& path,
                      const std::vector<TrackingScore>& scores,
                      const std::string& lag_or_window);

struct ScoreRow {
    std::string trial_id, condition, noise, lag_or_window;
    double r = 0.0, r_z = 0.0;
};
std::vector<ScoreRow> read_scores_csv(const std::filesystem::path& path);

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep,
                     const std::vector<double>* chance_per_lag = nullptr);

void write_rejection_report_csv(const std::filesystem::path& path,
                                const std::vector<EpochReject>& rejections);

// SVG line/bar plot with the plotted table embedded as an XML comment.
struct PlotSeries {
    std::string name;
    std::vector<double> x, y;
};
void write_svg_lines(const std::filesystem::path& path, const std::string& title,
                     const std::vector<PlotSeries>& series, const std::string& x_label,
                     const std::string& y_label);
void write_svg_bars(const std::filesystem::path& path, const std::string& title,
                    const std::vector<std::pair<std::string, double>>& bars,
                    const std::string& y_label);

}  // namespace envtrack
