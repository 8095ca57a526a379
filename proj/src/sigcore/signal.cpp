#include "envtrack/signal.hpp"

#include <cmath>

namespace envtrack {

double kahan_sum(const std::vector<double>& x) {
    double s = 0.0, c = 0.0;
    for (double v : x) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

double mean(const std::vector<double>& x) {
    if (x.empty()) throw DegenerateInputError("mean of empty sequence");
    return kahan_sum(x) / static_cast<double>(x.size());
}

double sample_sd(const std::vector<double>& x) {
    if (x.size() < 2) throw DegenerateInputError("sd needs >= 2 samples");
    const double m = mean(x);
    double s = 0.0, c = 0.0;
    for (double v : x) {
        double d = (v - m) * (v - m);
        double y = d - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

Signal zscore(const Signal& x) {
    const double m = mean(x.samples);
    const double sd = sample_sd(x.samples);
    if (sd <= 0.0 || !std::isfinite(sd))
        throw DegenerateInputError("zscore: zero variance");
    Signal out;
    out.rate = x.rate;
    out.samples.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out.samples[i] = (x.samples[i] - m) / sd;
    return out;
}

Signal zscore_quantized(const Signal& x) {
    Signal z = zscore(x);
    constexpr double kGrid = 1048576.0;  // 2^20
    for (double& v : z.samples) v = std::nearbyint(v * kGrid) / kGrid;
    return z;
}

}  // namespace envtrack
