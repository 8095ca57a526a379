#include <algorithm>
#include <stdexcept>

#include "envtrack/features.hpp"

namespace envtrack {

LipFeatures lip_features(const std::vector<GrayImage>& frames, const Roi& roi) {
    if (frames.empty()) throw std::invalid_argument("lip_features: no frames");
    if (roi.w <= 0 || roi.h <= 0) throw std::invalid_argument("lip_features: empty roi");

    double sum_open = 0.0, sum_bright = 0.0;
    for (const auto& img : frames) {
        if (img.width != frames[0].width || img.height != frames[0].height)
            throw std::invalid_argument("lip_features: frame size mismatch");
        if (roi.x < 0 || roi.y < 0 || roi.x + roi.w > img.width || roi.y + roi.h > img.height)
            throw std::invalid_argument("lip_features: roi outside frame bounds");

        double lum_sum = 0.0;
        for (int r = 0; r < roi.h; ++r)
            for (int c = 0; c < roi.w; ++c)
                lum_sum += img.pixels[static_cast<std::size_t>(roi.y + r) * img.width +
                                      roi.x + c];
        const double mean_lum = lum_sum / (static_cast<double>(roi.w) * roi.h);
        sum_bright += mean_lum / 255.0;

        // Openness: per column, the longest vertical run of pixels darker
        // than 0.35 x ROI mean luminance (the mouth aperture), averaged
        // over columns and normalized by ROI height.
        const double threshold = std::max(0.35 * mean_lum, 0.5);
        double run_acc = 0.0;
        for (int c = 0; c < roi.w; ++c) {
            int best = 0, run = 0;
            for (int r = 0; r < roi.h; ++r) {
                const double v =
                    img.pixels[static_cast<std::size_t>(roi.y + r) * img.width + roi.x + c];
                if (v < threshold) {
                    ++run;
                    best = std::max(best, run);
                } else {
                    run = 0;
                }
            }
            run_acc += static_cast<double>(best) / roi.h;
        }
        sum_open += run_acc / roi.w;
    }

    LipFeatures out;
    out.avg_open = sum_open / frames.size();
    out.avg_bright = sum_bright / frames.size();
    return out;
}

}  // namespace envtrack
