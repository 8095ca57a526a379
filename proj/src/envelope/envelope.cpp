#include "envtrack/envelope.hpp"

#include <cmath>

#include "envtrack/gammatone.hpp"
#include "envtrack/hilbert.hpp"
#include "envtrack/iir.hpp"
#include "envtrack/resample.hpp"

namespace envtrack {

EnvelopeSeries extract_broadband_envelope(const Signal& audio, const EnvelopeConfig& cfg) {
    if (!(audio.rate >= 2.0 * cfg.fmax_hz + 1000.0))
        throw std::invalid_argument("extract_broadband_envelope: audio rate too low");

    const Signal z = zscore_quantized(audio);
    const GammatoneBank bank = make_gammatone_bank(cfg.fmin_hz, cfg.fmax_hz, cfg.n_bands);
    const auto bands = gammatone_analyze(bank, z);

    // Mean of per-band Hilbert magnitudes; non-negative by construction.
    Signal broadband;
    broadband.rate = audio.rate;
    broadband.samples.assign(z.size(), 0.0);
    for (const Signal& band : bands) {
        const Signal env = hilbert_envelope(band);
        for (std::size_t i = 0; i < env.size(); ++i) broadband.samples[i] += env.samples[i];
    }
    for (double& v : broadband.samples) v /= static_cast<double>(bands.size());

    const IirBiquadChain lp =
        design_butterworth_lowpass(cfg.lowpass_order, cfg.lowpass_hz, audio.rate);
    const Signal filtered = apply_iir_zero_phase(lp, broadband);
    const Signal down = resample(filtered, cfg.target_rate);

    EnvelopeSeries out;
    out.rate = cfg.target_rate;
    out.samples = down.samples;
    return out;
}

std::vector<EnvelopeSeries> segment_envelope(const EnvelopeSeries& env, double epoch_s) {
    const std::size_t epoch_len = static_cast<std::size_t>(std::llround(epoch_s * env.rate));
    std::vector<EnvelopeSeries> segments;
    if (epoch_len == 0) return segments;
    const std::size_t n_full = env.size() / epoch_len;
    for (std::size_t s = 0; s < n_full; ++s) {
        EnvelopeSeries seg;
        seg.rate = env.rate;
        seg.source_id = env.source_id + "#" + std::to_string(s);
        seg.samples.assign(env.samples.begin() + s * epoch_len,
                           env.samples.begin() + (s + 1) * epoch_len);
        segments.push_back(std::move(seg));
    }
    return segments;
}

}  // namespace envtrack
