#include "longmem/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace longmem::fft {

namespace {
// FFTW planning is not thread-safe; executing distinct plans is.
std::mutex plan_mutex;
}  // namespace

std::vector<std::complex<double>> real_forward(const std::vector<double>& in) {
    const std::size_t n = in.size();
    std::vector<double> buf(in);
    std::vector<std::complex<double>> out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<double> halfcomplex_backward(const std::vector<std::complex<double>>& spectrum,
                                         std::size_t n) {
    std::vector<std::complex<double>> buf(spectrum);
    std::vector<double> out(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                    reinterpret_cast<fftw_complex*>(buf.data()),
                                    out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace longmem::fft
