#pragma once

// Thin RAII wrapper over FFTW's complex 2D transforms. Plans are cached per
// transform size behind a mutex; FFTW_UNALIGNED keeps the new-array execute
// interface legal for arbitrary caller buffers.

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace abt {

using cplx = std::complex<double>;

namespace detail {

class FftPlanCache {
public:
    static FftPlanCache& instance() {
        static FftPlanCache cache;
        return cache;
    }

    // sign: FFTW_FORWARD (-1) or FFTW_BACKWARD (+1). Unnormalized.
    void execute(int n, int sign, cplx* data) {
        fftw_plan plan = nullptr;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto key = std::make_pair(n, sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                std::vector<cplx> dummy(static_cast<size_t>(n) * n);
                plan = fftw_plan_dft_2d(
                    n, n, reinterpret_cast<fftw_complex*>(dummy.data()),
                    reinterpret_cast<fftw_complex*>(dummy.data()), sign,
                    FFTW_ESTIMATE | FFTW_UNALIGNED);
                if (!plan) throw std::runtime_error("fftw plan creation failed");
                plans_.emplace(key, plan);
            } else {
                plan = it->second;
            }
        }
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data));
    }

    ~FftPlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    FftPlanCache() = default;
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

inline void fft2_inplace(int n, int sign, cplx* data) {
    FftPlanCache::instance().execute(n, sign, data);
}

}  // namespace detail

}  // namespace abt
