#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace airylab::detail {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(const std::complex<double>* p) {
    // FFTW's new-array execute takes non-const input; out-of-place c2c
    // transforms leave it untouched.
    return reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(p));
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
    std::vector<std::complex<double>> a(n), b(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;
    forward_plan_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
    backward_plan_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
}

FftPlan::~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

std::shared_ptr<const FftPlan> FftPlan::get(std::size_t n) {
    // The mutex must outlive the cache, whose plans lock it on destruction.
    auto& mutex = planner_mutex();
    static std::map<std::size_t, std::shared_ptr<const FftPlan>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::shared_ptr<const FftPlan> plan(new FftPlan(n));
    cache.emplace(n, plan);
    return plan;
}

void FftPlan::forward(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(in), as_fftw(out));
}

void FftPlan::backward(const std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), as_fftw(in), as_fftw(out));
}

}  // namespace airylab::detail
