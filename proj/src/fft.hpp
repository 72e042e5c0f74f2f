#pragma once

// Thin RAII wrapper over FFTW for unnormalized 1-D complex transforms.
// Plan creation/destruction is serialized (the FFTW planner is not
// thread-safe); execute() may be called concurrently from many threads.

#include <mutex>
#include <vector>

#include <fftw3.h>

#include "pulsekit/types.hpp"

namespace pulsekit::detail {

inline std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

class Fft {
public:
    enum class Sign { Forward = FFTW_FORWARD, Backward = FFTW_BACKWARD };

    Fft(int n, Sign sign) : n_(n)
    {
        std::vector<cplx> in(n), out(n);
        std::lock_guard lock(fftw_planner_mutex());
        plan_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()), static_cast<int>(sign),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    ~Fft()
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return n_; }

    /// out[j] = sum_t in[t] exp(sign 2 pi i j t / n); in and out must not alias.
    void execute(const cplx* in, cplx* out) const
    {
        fftw_execute_dft(plan_, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

private:
    int n_;
    fftw_plan plan_;
};

} // namespace pulsekit::detail
