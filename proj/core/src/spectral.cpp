#include "qrabi/dynamics.hpp"

#include "qrabi/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

namespace qrabi {

namespace {

// FFTW planner calls are not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

void TimeSeries::validate_uniform() const {
    if (times.size() != values.size()) throw InvalidArgument("time series: times and values lengths differ");
    if (times.size() < 2) return;
    const double step = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(step > 0.0)) throw InvalidArgument("time series: times must be strictly ascending");
    const double tol = 1e-12 * std::max(std::abs(times.front()), std::abs(times.back()));
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double expect = times.front() + static_cast<double>(i) * step;
        if (std::abs(times[i] - expect) > std::max(tol, 1e-12 * step)) {
            throw InvalidArgument("time series: grid is not uniform at sample " + std::to_string(i));
        }
    }
}

double TimeSeries::dt() const {
    if (times.size() < 2) throw InvalidArgument("time series: need two samples for dt");
    return (times.back() - times.front()) / static_cast<double>(times.size() - 1);
}

std::size_t Spectrum::dominant_index() const {
    if (magnitudes.size() < 2) throw InvalidArgument("spectrum has no nonzero frequency bins");
    const auto it = std::max_element(magnitudes.begin() + 1, magnitudes.end());
    return static_cast<std::size_t>(it - magnitudes.begin());
}

Spectrum spectrum_of(const TimeSeries& series) {
    series.validate_uniform();
    const std::size_t n = series.size();
    if (n < 64) throw InvalidArgument("spectrum_of: need at least 64 samples, got " + std::to_string(n));
    const double dt = series.dt();

    const double mean = std::accumulate(series.values.begin(), series.values.end(), 0.0) / static_cast<double>(n);
    const std::size_t nout = n / 2 + 1;

    std::unique_ptr<double, decltype(&fftw_free)> in(fftw_alloc_real(n), &fftw_free);
    std::unique_ptr<fftw_complex, decltype(&fftw_free)> out(fftw_alloc_complex(nout), &fftw_free);
    if (!in || !out) throw Error("spectrum_of: FFTW allocation failed");

    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
    }
    if (!plan) throw Error("spectrum_of: FFTW planning failed");
    for (std::size_t i = 0; i < n; ++i) in.get()[i] = series.values[i] - mean;
    fftw_execute(plan);

    Spectrum s;
    s.freqs.resize(nout);
    s.magnitudes.resize(nout);
    s.bin_width = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
    for (std::size_t k = 0; k < nout; ++k) {
        const double mag = std::hypot(out.get()[k][0], out.get()[k][1]) / static_cast<double>(n);
        const bool edge = k == 0 || (n % 2 == 0 && k == n / 2);
        s.freqs[k] = static_cast<double>(k) * s.bin_width;
        s.magnitudes[k] = edge ? mag : 2.0 * mag;
    }
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return s;
}

}  // namespace qrabi
