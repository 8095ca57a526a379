#include <fstream>
#include <sstream>

#include "envtrack/io.hpp"

namespace envtrack {

namespace {

constexpr const char* kScoresSchema = "# envtrack-csv v1 scores";
constexpr const char* kSweepSchema = "# envtrack-csv v1 sweep";
constexpr const char* kRejectSchema = "# envtrack-csv v1 rejections";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

}  // namespace

void write_scores_csv(const std::filesystem::path& path,
                      const std::vector<TrackingScore>& scores,
                      const std::string& lag_or_window) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write: " + path.string());
    out << kScoresSchema << "\n";
    out << "trial_id,condition,noise,lag_or_window,r,r_z\n";
    out.precision(12);
    for (const auto& s : scores) {
        out << s.trial_id << ',' << to_string(s.condition) << ',' << to_string(s.noise) << ','
            << lag_or_window << ',' << s.r << ',' << s.r_z << "\n";
    }
}

std::vector<ScoreRow> read_scores_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kScoresSchema)
        throw IoError("unknown scores CSV version in " + path.string());
    std::getline(in, line);  // header
    std::vector<ScoreRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 6) throw IoError("malformed scores row in " + path.string());
        ScoreRow r;
        r.trial_id = f[0];
        r.condition = f[1];
        r.noise = f[2];
        r.lag_or_window = f[3];
        r.r = std::stod(f[4]);
        r.r_z = std::stod(f[5]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep,
                     const std::vector<double>* chance_per_lag) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write: " + path.string());
    out << kSweepSchema << "\n";
    out << "condition,noise,lag_ms,mean_r_z,chance\n";
    out.precision(12);
    for (const auto& [key, curve] : sweep.mean_r_z) {
        for (std::size_t i = 0; i < curve.size(); ++i) {
            out << to_string(key.first) << ',' << to_string(key.second) << ','
                << sweep.lag_ms[i] << ',' << curve[i] << ',';
            if (chance_per_lag && i < chance_per_lag->size())
                out << (*chance_per_lag)[i];
            out << "\n";
        }
    }
}

void write_rejection_report_csv(const std::filesystem::path& path,
                                const std::vector<EpochReject>& rejections) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write: " + path.string());
    out << kRejectSchema << "\n";
    out << "epoch_index,reason\n";
    for (const auto& r : rejections) out << r.epoch_index << ',' << r.reason << "\n";
}

}  // namespace envtrack
