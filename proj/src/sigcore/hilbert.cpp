#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "envtrack/fft.hpp"
#include "envtrack/hilbert.hpp"

namespace envtrack {

namespace {
// FFTW planning is not thread-safe; execution of independent plans is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<std::complex<double>> out(x.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(
            n,
            reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(x.data())),
            reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
            FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<std::complex<double>> out(x.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(
            n,
            reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(x.data())),
            reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD,
            FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    for (auto& v : out) v /= static_cast<double>(n);
    return out;
}

std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n) / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_r2c_1d(n, const_cast<double*>(x.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<std::complex<double>> analytic_signal(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> spec =
        fft(std::vector<std::complex<double>>(x.begin(), x.end()));
    // Double positive frequencies, zero negative ones; DC (and Nyquist for
    // even n) stay untouched.
    const std::size_t pos_end = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
    for (std::size_t k = 1; k < pos_end; ++k) spec[k] *= 2.0;
    for (std::size_t k = n / 2 + 1; k < n; ++k) spec[k] = {0.0, 0.0};
    return ifft(spec);
}

Signal hilbert_envelope(const Signal& x) {
    if (x.size() < 8)
        throw std::invalid_argument("hilbert_envelope: need at least 8 samples");
    auto a = analytic_signal(x.samples);
    Signal out;
    out.rate = x.rate;
    out.samples.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.samples[i] = std::abs(a[i]);
    return out;
}

}  // namespace envtrack
