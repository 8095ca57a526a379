// envtrack: command-line front end for the speech-tracking analysis toolkit.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "envtrack/decoder.hpp"
#include "envtrack/eegprep.hpp"
#include "envtrack/envelope.hpp"
#include "envtrack/features.hpp"
#include "envtrack/io.hpp"
#include "envtrack/parallel.hpp"
#include "envtrack/sim.hpp"
#include "envtrack/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace envtrack;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

void apply_threads(int threads) {
    if (threads <= 0) {
        if (const char* env = std::getenv("ENVTRACK_THREADS")) threads = std::atoi(env);
    }
    set_thread_count(threads > 0 ? threads : 1);
}

std::vector<double> parse_lambda_grid(const std::string& arg) {
    if (arg == "paper") return paper_lambda_grid();
    const std::string prefix = "custom:";
    if (arg.rfind(prefix, 0) != 0)
        throw std::invalid_argument("--lambda-grid must be 'paper' or 'custom:<list>'");
    std::vector<double> grid;
    std::stringstream ss(arg.substr(prefix.size()));
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
    if (grid.empty()) throw std::invalid_argument("--lambda-grid custom list is empty");
    return grid;
}

std::pair<double, double> parse_window(const std::string& arg) {
    const auto colon = arg.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--window must be <min_ms>:<max_ms>");
    return {std::stod(arg.substr(0, colon)), std::stod(arg.substr(colon + 1))};
}

// Load the trial set a manifest describes. EEG files are binary signals at
// 64 Hz; audio paths may be precomputed envelopes (.bin) or WAV audio.
std::vector<TrialPair> load_trials(const fs::path& manifest_path) {
    const auto manifest = read_manifest(manifest_path);
    const fs::path base = manifest_path.parent_path();
    manifest.validate(base);

    std::vector<TrialPair> trials;
    for (const auto& mt : manifest.trials) {
        TrialPair t;
        t.trial_id = mt.trial_id;
        t.speaker_id = mt.speaker_id;
        t.condition = condition_from_string(mt.condition);
        t.noise = noise_from_string(mt.noise);

        const auto eeg = read_binary_signal(base / mt.eeg_path);
        if (eeg.rate_hz != kPipelineRate)
            throw IoError("trial " + mt.trial_id + ": EEG must be at 64 Hz");
        const std::size_t offset =
            static_cast<std::size_t>(mt.eeg_offset_s * kPipelineRate);
        const std::size_t len = static_cast<std::size_t>(mt.duration_s * kPipelineRate);
        for (const auto& ch : eeg.data) {
            if (offset + len > ch.size())
                throw IoError("trial " + mt.trial_id + ": EEG shorter than trial span");
            t.eeg_epoch.emplace_back(ch.begin() + offset, ch.begin() + offset + len);
        }

        const fs::path audio = base / mt.audio_path;
        if (audio.extension() == ".bin") {
            const auto env = read_binary_signal(audio);
            if (env.rate_hz != kPipelineRate)
                throw IoError("trial " + mt.trial_id + ": envelope must be at 64 Hz");
            t.envelope.rate = kPipelineRate;
            t.envelope.samples.assign(env.data.at(0).begin(), env.data.at(0).end());
        } else {
            const auto wav = read_wav(audio);
            const auto env = extract_broadband_envelope(wav);
            t.envelope = env;
        }
        if (t.envelope.size() < len)
            throw IoError("trial " + mt.trial_id + ": envelope shorter than trial span");
        t.envelope.samples.resize(len);
        t.envelope.source_id = mt.trial_id;
        trials.push_back(std::move(t));
    }
    return trials;
}

std::string cell_name(const CellKey& key) {
    return to_string(key.first) + "/" + to_string(key.second);
}

int cmd_envelope(const std::string& wav, const std::string& out) {
    const auto audio = read_wav(wav);
    const auto env = extract_broadband_envelope(audio);
    Signal s{env.samples, env.rate};
    write_binary_signal(out, to_binary(s, "envelope"));
    std::cout << "envelope: " << env.size() << " samples at " << env.rate << " Hz\n";
    return kExitOk;
}

int cmd_preproc(const std::string& eeg_path, const std::string& positions_path,
                const std::string& out_prefix, double trial_s) {
    const auto bin = read_binary_signal(eeg_path);
    EegRecording rec;
    rec.rate = bin.rate_hz;
    rec.channel_labels = bin.labels;
    for (const auto& ch : bin.data) rec.data.emplace_back(ch.begin(), ch.end());

    std::ifstream pin(positions_path);
    if (!pin) throw IoError("cannot open positions: " + positions_path);
    json pj;
    pin >> pj;
    for (const auto& p : pj)
        rec.channel_positions.push_back(
            {p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
    rec.validate();

    const auto res = preprocess_pipeline(rec, trial_s);
    for (std::size_t e = 0; e < res.epochs.size(); ++e) {
        BinarySignal out;
        out.rate_hz = res.epochs.rate;
        out.labels = rec.channel_labels;
        for (const auto& ch : res.epochs.epochs[e])
            out.data.emplace_back(ch.begin(), ch.end());
        write_binary_signal(out_prefix + "_epoch" + std::to_string(e) + ".bin", out);
    }
    write_rejection_report_csv(out_prefix + "_rejections.csv", res.rejections_1s);
    std::cout << "preproc: " << res.epochs.size() << " epochs, " << res.bad_channels.size()
              << " interpolated channels, " << res.rejections_1s.size()
              << " flagged 1-s spans\n";
    return kExitOk;
}

int cmd_decode(const std::string& manifest, const std::string& window,
               const std::string& lambda_grid, const std::string& out) {
    const auto trials = load_trials(manifest);
    const auto [wmin, wmax] = parse_window(window);
    const auto grid = parse_lambda_grid(lambda_grid);
    const auto scores = window_model(trials, wmin, wmax, &grid);
    write_scores_csv(out, scores, window);
    std::cout << "decode: " << scores.size() << " trials scored\n";
    return kExitOk;
}

int cmd_sweep(const std::string& manifest, const std::string& lambda_grid,
              const std::string& out, int n_perm, std::uint64_t seed) {
    const auto trials = load_trials(manifest);
    const auto grid = parse_lambda_grid(lambda_grid);
    const auto sweep = single_lag_sweep(trials, grid);

    std::optional<std::vector<double>> chance;
    if (n_perm > 0) {
        // One chance level per lag from deranged pairings.
        std::vector<double> per_lag(33);
        for (int lag = 0; lag <= 32; ++lag) {
            const auto ch =
                chance_level(trials, LagSpec::single(lag), grid.front(), n_perm,
                             seed + static_cast<std::uint64_t>(lag));
            per_lag[lag] = ch.p95_r;
        }
        chance = std::move(per_lag);
    }
    write_sweep_csv(out, sweep, chance ? &*chance : nullptr);
    std::cout << "sweep: " << sweep.mean_r_z.size() << " cells x 33 lags\n";
    return kExitOk;
}

int cmd_chance(const std::string& manifest, const std::string& window, double lambda,
               int n_perm, std::uint64_t seed, const std::string& out) {
    const auto trials = load_trials(manifest);
    const auto [wmin, wmax] = parse_window(window);
    const auto ch =
        chance_level(trials, LagSpec::from_window_ms(wmin, wmax), lambda, n_perm, seed);
    std::ofstream o(out);
    if (!o) throw IoError("cannot write: " + out);
    o << "# envtrack-csv v1 chance\nmean_r,sd_r,p95_r,n_perm\n";
    o.precision(12);
    o << ch.mean_r << ',' << ch.sd_r << ',' << ch.p95_r << ',' << n_perm << "\n";
    std::cout << "chance: mean r " << ch.mean_r << ", p95 " << ch.p95_r << "\n";
    return kExitOk;
}

int cmd_features(const std::string& wav, const std::string& out) {
    const auto audio = read_wav(wav);

    const auto psd = multitaper_psd(audio);
    const auto ratio = periodic_fraction(psd);
    const auto bp = band_periodic_power(ratio, audio.duration_s());

    const auto track = pitch_track(audio);
    const auto pstats = pitch_stats(track);
    std::map<std::string, double> row;
    row["FreqRsum_env"] = bp.env;
    row["FreqRsum_low"] = bp.low;
    row["FreqRsum_mid"] = bp.mid;
    row["FreqRsum_high"] = bp.high;
    if (pstats) {
        row["meanPitch"] = pstats->mean_hz;
        row["medianPitch"] = pstats->median_hz;
        row["sdPitch"] = pstats->sd_hz;
        row["minPitch"] = pstats->min_hz;
        row["maxPitch"] = pstats->max_hz;
        const auto cycles = extract_glottal_cycles(audio, track);
        if (cycles.periods_s.size() >= 5) {
            const auto j = jitter_metrics(cycles.periods_s);
            row["jitter_loc"] = j.loc;
            row["jitter_loc_abs"] = j.loc_abs;
            row["jitter_rap"] = j.rap;
            row["jitter_ppq5"] = j.ppq5;
        }
        if (cycles.peak_amplitudes.size() >= 11) {
            const auto s = shimmer_metrics(cycles.peak_amplitudes);
            row["shimmer_loc"] = s.loc;
            row["shimmer_loc_dB"] = s.loc_db;
            row["shimmer_apq3"] = s.apq3;
            row["shimmer_apq5"] = s.apq5;
            row["shimmer_apq11"] = s.apq11;
        }
        row["mean_nhr"] = harmonicity_mean_nhr(audio, track);
    }
    row["min_intensity"] = intensity_min_db(audio);

    std::ofstream o(out);
    if (!o) throw IoError("cannot write: " + out);
    o << "# envtrack-csv v1 features\nfeature,value\n";
    o.precision(12);
    for (const auto& [name, value] : row) o << name << ',' << value << "\n";
    std::cout << "features: " << row.size() << " values\n";
    return kExitOk;
}

// Input: JSON {"feature_names": [...], "speakers": {"id": [[segment values]...]}}
int cmd_profiles(const std::string& input, const std::string& out) {
    std::ifstream in(input);
    if (!in) throw IoError("cannot open: " + input);
    json j;
    in >> j;
    const auto names = j.at("feature_names").get<std::vector<std::string>>();
    std::map<std::string, std::vector<std::vector<double>>> per_speaker;
    for (const auto& [id, segs] : j.at("speakers").items())
        per_speaker[id] = segs.get<std::vector<std::vector<double>>>();

    const auto res = build_profiles(names, per_speaker);
    std::ofstream o(out);
    if (!o) throw IoError("cannot write: " + out);
    o << "# envtrack-csv v1 profiles\nspeaker,feature,value\n";
    o.precision(12);
    for (const auto& p : res.profiles)
        for (const auto& [name, value] : p.features)
            o << p.speaker_id << ',' << name << ',' << value << "\n";
    std::cout << "profiles: retained " << res.retained_features.size() << ", dropped "
              << res.dropped_features.size() << "\n";
    for (const auto& d : res.dropped_features) std::cout << "  dropped: " << d << "\n";
    return kExitOk;
}

int cmd_stats(const std::string& scores_path, const std::string& out) {
    const auto rows = read_scores_csv(scores_path);
    // Bucket r_z by cell, keeping trial order.
    std::map<std::pair<std::string, std::string>, std::vector<double>> cells;
    for (const auto& r : rows) cells[{r.condition, r.noise}].push_back(r.r_z);

    std::vector<TestResult> tests;
    auto add_pair = [&](const std::string& a, const std::string& b, const std::string& nz) {
        const auto ia = cells.find({a, nz});
        const auto ib = cells.find({b, nz});
        if (ia == cells.end() || ib == cells.end()) return;
        if (ia->second.size() != ib->second.size() || ia->second.size() < 3) return;
        tests.push_back(paired_t(ia->second, ib->second, a + "-" + b + "/" + nz));
    };
    for (const std::string nz : {"noise", "quiet"}) {
        add_pair("AV", "A", nz);
        add_pair("AV", "V", nz);
        add_pair("AV", "ML", nz);
    }
    // Noise-level contrast pooled over matched conditions.
    std::vector<double> noise_all, quiet_all;
    for (const std::string c : {"AV", "A", "V", "ML"}) {
        const auto in = cells.find({c, "noise"});
        const auto iq = cells.find({c, "quiet"});
        if (in == cells.end() || iq == cells.end()) continue;
        if (in->second.size() != iq->second.size()) continue;
        noise_all.insert(noise_all.end(), in->second.begin(), in->second.end());
        quiet_all.insert(quiet_all.end(), iq->second.begin(), iq->second.end());
    }
    if (noise_all.size() >= 3) {
        try {
            tests.push_back(paired_t(quiet_all, noise_all, "quiet-noise"));
        } catch (const DegenerateInputError&) {
        }
    }

    std::vector<double> p_raw;
    for (const auto& t : tests) p_raw.push_back(t.p_raw);
    const auto p_adj = p_raw.empty() ? p_raw : holm_bonferroni(p_raw);

    std::ofstream o(out);
    if (!o) throw IoError("cannot write: " + out);
    o << "# envtrack-csv v1 stats\ntest,t,df,p_raw,p_holm,cohens_d\n";
    o.precision(12);
    for (std::size_t i = 0; i < tests.size(); ++i)
        o << tests[i].label << ',' << tests[i].statistic << ',' << tests[i].df << ','
          << tests[i].p_raw << ',' << p_adj[i] << ',' << tests[i].effect_size << "\n";

    // Full 2x4 table when every cell is present with equal trial counts.
    bool full = cells.size() == 8;
    std::size_t n0 = full ? cells.begin()->second.size() : 0;
    for (const auto& [k, v] : cells)
        if (v.size() != n0) full = false;
    if (full && n0 >= 3) {
        const std::vector<std::string> conds{"AV", "A", "V", "ML"};
        const std::vector<std::string> noises{"noise", "quiet"};
        std::vector<std::vector<std::vector<double>>> table(
            n0, std::vector<std::vector<double>>(2, std::vector<double>(4)));
        for (std::size_t s = 0; s < n0; ++s)
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    table[s][i][j] = cells[{conds[j], noises[i]}][s];
        const auto effects = rm_anova_2x4(table);
        o << "# anova effect,F,df_num,df_den,p,partial_eta_sq,epsilon\n";
        for (const auto& e : effects)
            o << e.name << ',' << e.F << ',' << e.df_num << ',' << e.df_den << ',' << e.p
              << ',' << e.eta_squared << ',' << e.epsilon << "\n";
    }
    std::cout << "stats: " << tests.size() << " paired tests"
              << (full && n0 >= 3 ? " + 2x4 anova" : "") << "\n";
    return kExitOk;
}

int cmd_simulate(const std::string& out_dir, int trials, int channels, double epoch_s,
                 std::uint64_t seed, const std::vector<std::string>& cell_specs) {
    SimSpec spec;
    spec.n_trials_per_cell = trials;
    spec.channels = channels;
    spec.epoch_s = epoch_s;
    spec.seed = seed;
    for (const auto& cs : cell_specs) {
        // condition:noise:snr_db | condition:noise:null
        std::stringstream ss(cs);
        std::string cond, nz, snr;
        if (!std::getline(ss, cond, ':') || !std::getline(ss, nz, ':') ||
            !std::getline(ss, snr))
            throw std::invalid_argument("--cell must be <condition>:<noise>:<snr|null>");
        const CellKey key{condition_from_string(cond), noise_from_string(nz)};
        CellSpec cell;
        if (snr == "null") {
            cell.kernel = make_null_kernel(channels,
                                           1000.0 * 32.0 / kPipelineRate);
            cell.snr_db = std::nullopt;
        } else {
            cell.kernel = make_default_kernel(
                channels, 250.0, seed ^ std::hash<std::string>{}(cond + nz));
            cell.snr_db = std::stod(snr);
        }
        spec.cells[key] = std::move(cell);
    }
    if (spec.cells.empty()) throw std::invalid_argument("simulate: no --cell given");

    const auto generated = gen_condition_study(spec);
    fs::create_directories(out_dir);
    TrialManifest manifest;
    manifest.subject_id = "sim";
    for (const auto& t : generated) {
        BinarySignal eeg;
        eeg.rate_hz = kPipelineRate;
        for (std::size_t c = 0; c < t.eeg_epoch.size(); ++c) {
            eeg.labels.push_back("ch" + std::to_string(c));
            eeg.data.emplace_back(t.eeg_epoch[c].begin(), t.eeg_epoch[c].end());
        }
        const std::string eeg_name = t.trial_id + "_eeg.bin";
        const std::string env_name = t.trial_id + "_env.bin";
        write_binary_signal(fs::path(out_dir) / eeg_name, eeg);
        Signal env{t.envelope.samples, kPipelineRate};
        write_binary_signal(fs::path(out_dir) / env_name, to_binary(env, "envelope"));

        ManifestTrial mt;
        mt.trial_id = t.trial_id;
        mt.speaker_id = t.speaker_id;
        mt.condition = to_string(t.condition);
        mt.noise = to_string(t.noise);
        mt.audio_path = env_name;
        mt.eeg_path = eeg_name;
        mt.duration_s = epoch_s;
        manifest.trials.push_back(std::move(mt));
    }
    write_manifest(fs::path(out_dir) / "manifest.json", manifest);
    std::cout << "simulate: " << generated.size() << " trials in " << out_dir << "\n";
    return kExitOk;
}

int cmd_report(const std::string& from, const std::string& style, const std::string& out) {
    std::ifstream in(from);
    if (!in) throw IoError("cannot open: " + from);
    std::string version;
    std::getline(in, version);
    in.close();

    if (style == "fig2") {
        // Lag curves: sweep CSV, or score rows with a numeric lag column.
        std::map<std::string, PlotSeries> series;
        if (version == "# envtrack-csv v1 sweep") {
            std::ifstream s(from);
            std::string line;
            std::getline(s, line);
            std::getline(s, line);  // header
            while (std::getline(s, line)) {
                if (line.empty()) continue;
                std::stringstream ss(line);
                std::string cond, nz, lag, rz;
                std::getline(ss, cond, ',');
                std::getline(ss, nz, ',');
                std::getline(ss, lag, ',');
                std::getline(ss, rz, ',');
                auto& sr = series[cond + "/" + nz];
                sr.name = cond + "/" + nz;
                sr.x.push_back(std::stod(lag));
                sr.y.push_back(std::stod(rz));
            }
        } else {
            for (const auto& r : read_scores_csv(from)) {
                auto& sr = series[r.condition + "/" + r.noise];
                sr.name = r.condition + "/" + r.noise;
                sr.x.push_back(std::stod(r.lag_or_window));
                sr.y.push_back(r.r_z);
            }
        }
        std::vector<PlotSeries> list;
        for (auto& [_, s] : series) list.push_back(std::move(s));
        write_svg_lines(out, "Reconstruction accuracy by lag", list, "lag (ms)",
                        "mean r_z");
    } else if (style == "fig3") {
        const auto rows = read_scores_csv(from);
        std::map<std::string, std::pair<double, int>> agg;
        for (const auto& r : rows) {
            auto& a = agg[r.condition + "/" + r.noise];
            a.first += r.r_z;
            a.second += 1;
        }
        std::vector<std::pair<std::string, double>> bars;
        for (const auto& [k, a] : agg) bars.emplace_back(k, a.first / a.second);
        write_svg_bars(out, "Mean tracking by condition", bars, "mean r_z");
    } else {
        throw std::invalid_argument("--style must be fig2 or fig3");
    }
    std::cout << "report: wrote " << out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cortical speech-tracking analysis toolkit"};
    app.require_subcommand(1);

    int threads = 0;
    std::uint64_t seed = 0;
    app.add_option("--threads", threads, "worker cap (default: ENVTRACK_THREADS or 1)");
    app.add_option("--seed", seed, "PRNG seed for randomized steps");

    std::string wav, out, eeg, positions, out_prefix, manifest, window = "200:325";
    std::string lambda_grid = "paper", input, scores, from, style = "fig2", out_dir;
    double trial_s = 30.0, lambda = 1.0, epoch_s = 30.0;
    int n_perm = 0, n_trials = 10, channels = 24;
    std::vector<std::string> cell_specs;

    auto* c_env = app.add_subcommand("envelope", "extract a broadband speech envelope");
    c_env->add_option("--wav", wav)->required();
    c_env->add_option("--out", out)->required();

    auto* c_pre = app.add_subcommand("preproc", "preprocess an EEG recording");
    c_pre->add_option("--eeg", eeg)->required();
    c_pre->add_option("--positions", positions)->required();
    c_pre->add_option("--out-prefix", out_prefix)->required();
    c_pre->add_option("--trial-s", trial_s);

    auto* c_dec = app.add_subcommand("decode", "window-model reconstruction scores");
    c_dec->add_option("--manifest", manifest)->required();
    c_dec->add_option("--window", window);
    c_dec->add_option("--lambda-grid", lambda_grid);
    c_dec->add_option("--out", out)->required();

    auto* c_swp = app.add_subcommand("sweep", "single-lag sweep over 0-500 ms");
    c_swp->add_option("--manifest", manifest)->required();
    c_swp->add_option("--lambda-grid", lambda_grid);
    c_swp->add_option("--n-perm", n_perm);
    c_swp->add_option("--out", out)->required();

    auto* c_chn = app.add_subcommand("chance", "permutation chance level");
    c_chn->add_option("--manifest", manifest)->required();
    c_chn->add_option("--window", window);
    c_chn->add_option("--lambda", lambda);
    c_chn->add_option("--n-perm", n_perm)->required();
    c_chn->add_option("--out", out)->required();

    auto* c_fea = app.add_subcommand("features", "acoustic feature battery for one track");
    c_fea->add_option("--wav", wav)->required();
    c_fea->add_option("--out", out)->required();

    auto* c_pro = app.add_subcommand("profiles", "build normalized speaker profiles");
    c_pro->add_option("--input", input)->required();
    c_pro->add_option("--out", out)->required();

    auto* c_sta = app.add_subcommand("stats", "paired tests and 2x4 anova on scores");
    c_sta->add_option("--scores", scores)->required();
    c_sta->add_option("--out", out)->required();

    auto* c_sim = app.add_subcommand("simulate", "generate a synthetic condition study");
    c_sim->add_option("--out-dir", out_dir)->required();
    c_sim->add_option("--trials", n_trials);
    c_sim->add_option("--channels", channels);
    c_sim->add_option("--epoch-s", epoch_s);
    c_sim->add_option("--cell", cell_specs, "<condition>:<noise>:<snr_db|null>");

    auto* c_rep = app.add_subcommand("report", "render an SVG report from a CSV");
    c_rep->add_option("--from", from)->required();
    c_rep->add_option("--style", style);
    c_rep->add_option("--out", out)->required();

    // Allow --seed / --threads after the subcommand name.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        apply_threads(threads);
        if (c_env->parsed()) return cmd_envelope(wav, out);
        if (c_pre->parsed()) return cmd_preproc(eeg, positions, out_prefix, trial_s);
        if (c_dec->parsed()) return cmd_decode(manifest, window, lambda_grid, out);
        if (c_swp->parsed()) return cmd_sweep(manifest, lambda_grid, out, n_perm, seed);
        if (c_chn->parsed()) return cmd_chance(manifest, window, lambda, n_perm, seed, out);
        if (c_fea->parsed()) return cmd_features(wav, out);
        if (c_pro->parsed()) return cmd_profiles(input, out);
        if (c_sta->parsed()) return cmd_stats(scores, out);
        if (c_sim->parsed())
            return cmd_simulate(out_dir, n_trials, channels, epoch_s, seed, cell_specs);
        if (c_rep->parsed()) return cmd_report(from, style, out);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DegenerateInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitValidation;
}
