#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace serro::detail {

// FFTW planning is not thread-safe and ESTIMATE plans are deterministic, so
// keep one plan (with its aligned buffers) per transform size behind a lock
// and copy records through it. The optimizer reuses a handful of sizes
// thousands of times.
namespace {

std::mutex g_fftw_mutex;

struct C2cPlan {
    fftw_complex* buf = nullptr;
    fftw_plan plan = nullptr;
};

struct R2cPlan {
    double* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan plan = nullptr;
};

struct C2rPlan {
    fftw_complex* in = nullptr;
    double* out = nullptr;
    fftw_plan plan = nullptr;
};

C2cPlan& c2c_plan(std::size_t n) {
    static std::map<std::size_t, C2cPlan> cache;
    auto [it, fresh] = cache.try_emplace(n);
    if (fresh) {
        it->second.buf = fftw_alloc_complex(n);
        it->second.plan = fftw_plan_dft_1d(static_cast<int>(n), it->second.buf,
                                           it->second.buf, FFTW_FORWARD,
                                           FFTW_ESTIMATE);
    }
    return it->second;
}

R2cPlan& r2c_plan(std::size_t n) {
    static std::map<std::size_t, R2cPlan> cache;
    auto [it, fresh] = cache.try_emplace(n);
    if (fresh) {
        it->second.in = fftw_alloc_real(n);
        it->second.out = fftw_alloc_complex(n / 2 + 1);
        it->second.plan = fftw_plan_dft_r2c_1d(
            static_cast<int>(n), it->second.in, it->second.out, FFTW_ESTIMATE);
    }
    return it->second;
}

C2rPlan& c2r_plan(std::size_t n) {
    static std::map<std::size_t, C2rPlan> cache;
    auto [it, fresh] = cache.try_emplace(n);
    if (fresh) {
        it->second.in = fftw_alloc_complex(n / 2 + 1);
        it->second.out = fftw_alloc_real(n);
        it->second.plan = fftw_plan_dft_c2r_1d(
            static_cast<int>(n), it->second.in, it->second.out, FFTW_ESTIMATE);
    }
    return it->second;
}

} // namespace

std::vector<std::complex<double>> fft(std::span<const std::complex<double>> x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    if (n == 0) return out;

    std::lock_guard lock(g_fftw_mutex);
    C2cPlan& p = c2c_plan(n);
    std::memcpy(p.buf, x.data(), n * sizeof(fftw_complex));
    fftw_execute(p.plan);
    std::memcpy(out.data(), p.buf, n * sizeof(fftw_complex));
    return out;
}

std::vector<std::complex<double>> rfft(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n / 2 + 1);
    if (n == 0) return out;

    std::lock_guard lock(g_fftw_mutex);
    R2cPlan& p = r2c_plan(n);
    std::memcpy(p.in, x.data(), n * sizeof(double));
    fftw_execute(p.plan);
    std::memcpy(out.data(), p.out, (n / 2 + 1) * sizeof(fftw_complex));
    return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> half,
                          std::size_t n) {
    std::vector<double> out(n);
    if (n == 0) return out;

    std::lock_guard lock(g_fftw_mutex);
    C2rPlan& p = c2r_plan(n);
    std::memcpy(p.in, half.data(), (n / 2 + 1) * sizeof(fftw_complex));
    fftw_execute(p.plan);
    for (std::size_t i = 0; i < n; ++i) out[i] = p.out[i] / static_cast<double>(n);
    return out;
}

} // namespace serro::detail
