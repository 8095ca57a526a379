#pragma once

#include "envtrack/signal.hpp"

namespace envtrack {

// Band-limited rate conversion via windowed-sinc interpolation with the
// anti-alias cutoff at the lower of the two Nyquist frequencies. Output
// length = round(len * target / rate).
Signal resample(const Signal& x, double target_rate);

}  // namespace envtrack
