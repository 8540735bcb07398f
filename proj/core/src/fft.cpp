#include "ergw/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace ergw::fft {

namespace {
// fftw_plan_dft / fftw_destroy_plan are not thread-safe; fftw_execute is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

void transform(std::vector<std::complex<double>>& data, bool backward) {
    if (data.empty()) return;
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), p, p,
                                backward ? FFTW_BACKWARD : FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace ergw::fft
