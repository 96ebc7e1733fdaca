#pragma once

#include <complex>
#include <cstddef>
#include <memory>

namespace airylab::detail {

/// Unnormalized complex DFT of a fixed power-of-two length.
///
/// Plans are created once per length under a lock (the FFTW planner is not
/// thread-safe) and executed with the new-array interface, so a shared plan
/// may be used from several threads at once.
class FftPlan {
public:
    static std::shared_ptr<const FftPlan> get(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    /// out[k] = sum_j in[j] exp(-2 pi i jk/n). in and out must not alias.
    void forward(const std::complex<double>* in, std::complex<double>* out) const;
    /// out[j] = sum_k in[k] exp(+2 pi i jk/n). in and out must not alias.
    void backward(const std::complex<double>* in, std::complex<double>* out) const;

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    ~FftPlan();

private:
    explicit FftPlan(std::size_t n);

    std::size_t n_;
    void* forward_plan_ = nullptr;
    void* backward_plan_ = nullptr;
};

}  // namespace airylab::detail
