#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "envtrack/features.hpp"
#include "envtrack/stats.hpp"

namespace envtrack {

ProfileBuildResult build_profiles(
    const std::vector<std::string>& feature_names,
    const std::map<std::string, std::vector<std::vector<double>>>& per_speaker_segments,
    double prune_r) {
    const std::size_t n_features = feature_names.size();
    if (per_speaker_segments.size() < 2)
        throw std::invalid_argument("build_profiles: need >= 2 speakers");

    // Segment means per speaker, declared feature order.
    std::vector<std::string> speakers;
    std::vector<std::vector<double>> values;  // [speaker][feature]
    for (const auto& [id, segments] : per_speaker_segments) {
        if (segments.empty())
            throw std::invalid_argument("build_profiles: speaker with no segments: " + id);
        std::vector<double> acc(n_features, 0.0);
        for (const auto& seg : segments) {
            if (seg.size() != n_features)
                throw std::invalid_argument("build_profiles: segment feature count mismatch");
            for (std::size_t f = 0; f < n_features; ++f) acc[f] += seg[f];
        }
        for (double& v : acc) v /= static_cast<double>(segments.size());
        speakers.push_back(id);
        values.push_back(std::move(acc));
    }
    const std::size_t n_speakers = speakers.size();

    // Min-max normalization per feature; constant features are degenerate
    // and dropped with a warning downstream.
    ProfileBuildResult result;
    std::vector<bool> degenerate(n_features, false);
    for (std::size_t f = 0; f < n_features; ++f) {
        double lo = values[0][f], hi = values[0][f];
        for (std::size_t s = 1; s < n_speakers; ++s) {
            lo = std::min(lo, values[s][f]);
            hi = std::max(hi, values[s][f]);
        }
        if (!(hi > lo)) {
            degenerate[f] = true;
            result.dropped_features.push_back(feature_names[f] + " (constant)");
            continue;
        }
        for (std::size_t s = 0; s < n_speakers; ++s)
            values[s][f] = (values[s][f] - lo) / (hi - lo);
    }

    // Greedy pruning in declared order: a later feature correlated above
    // the threshold with any retained one is removed.
    std::vector<std::size_t> retained;
    for (std::size_t f = 0; f < n_features; ++f) {
        if (degenerate[f]) continue;
        std::vector<double> col(n_speakers);
        for (std::size_t s = 0; s < n_speakers; ++s) col[s] = values[s][f];
        bool keep = true;
        for (std::size_t g : retained) {
            std::vector<double> prev(n_speakers);
            for (std::size_t s = 0; s < n_speakers; ++s) prev[s] = values[s][g];
            if (std::abs(pearson_correlation(col, prev)) > prune_r) {
                keep = false;
                result.dropped_features.push_back(feature_names[f] + " (r>" +
                                                  std::to_string(prune_r) + " vs " +
                                                  feature_names[g] + ")");
                break;
            }
        }
        if (keep) retained.push_back(f);
    }

    for (std::size_t f : retained) result.retained_features.push_back(feature_names[f]);
    for (std::size_t s = 0; s < n_speakers; ++s) {
        SpeakerProfile p;
        p.speaker_id = speakers[s];
        p.normalized = true;
        for (std::size_t f : retained) p.features.emplace_back(feature_names[f], values[s][f]);
        result.profiles.push_back(std::move(p));
    }
    return result;
}

}  // namespace envtrack
