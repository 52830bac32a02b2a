#pragma once

#include "qrabi/model.hpp"

#include <string>
#include <vector>

namespace qrabi {

// Uniformly sampled real observable.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::string label;

    std::size_t size() const noexcept { return times.size(); }
    // Throws InvalidArgument if lengths differ, times are not ascending, or
    // spacing deviates from uniform by more than 1e-12 relative to the span.
    void validate_uniform() const;
    double dt() const;
};

// n samples starting at t0 with step (t1 - t0) / n (endpoint excluded) or
// (t1 - t0) / (n - 1) (endpoint included).
std::vector<double> uniform_grid(double t0, double t1, std::size_t n, bool include_endpoint = false);

// exp(-i H t) through one eigendecomposition.
class StaticPropagator {
public:
    explicit StaticPropagator(const OperatorMatrix& H);

    Index dim() const noexcept { return energies_.size(); }
    const RVector& energies() const noexcept { return energies_; }

    // psi(t) for an initial vector already expressed in the original basis.
    CVector evolve(const CVector& psi0, double t) const;

    // Coefficients of psi0 in the eigenbasis; evolve_coefficients() is then
    // O(dim^2) per time point.
    CVector coefficients(const CVector& psi0) const;
    CVector evolve_coefficients(const CVector& coeffs, double t) const;

private:
    RVector energies_;
    CMatrix vectors_;
};

std::vector<StateVector> evolve_static(const OperatorMatrix& H, const StateVector& psi0,
                                       const std::vector<double>& times);

struct QuenchResult {
    TimeSeries fidelity;        // |<psi0|psi(t)>|
    TimeSeries sigma_z;
    TimeSeries J_z;
    TimeSeries photon_number;
    double max_norm_drift = 0.0;
    double max_parity_drift = 0.0;
};

// Evolves |g,0,0> (basis index 0) under the full Hamiltonian of p.
QuenchResult quench_run(const ModelParams& p, const std::vector<double>& times);

enum class BranchWeights {
    Overlap,   // |<m|0>|^2 of the qudit ground state on the coupling eigenbasis
    Uniform,   // 1/d per branch
};

struct AnalyticFidelityOptions {
    int n_sum = 10;
    BranchWeights weights = BranchWeights::Overlap;
};

// Quench fidelity in the displaced-oscillator approximation: the initial state
// is expanded in the eigenbasis of the reduced Hamiltonian and each branch
// contributes a Poisson-weighted phase sum.
TimeSeries analytic_quench_fidelity(const ModelParams& p, const std::vector<double>& times,
                                    const AnalyticFidelityOptions& opt = {});

struct AnalyticSigmaZOptions {
    int n_sum = 10;
    // Evaluate the series without the Poisson normalisation exp(-4 g1^2).
    bool raw_printed = false;
};

// sum_N w_N cos(4 g1^2 t / omega - N omega t), w_N = Poisson(4 g1^2 / omega^2).
// Requires d = 2 and g1 = g2; throws UnsupportedRegime otherwise.
TimeSeries analytic_sigma_z(const ModelParams& p, const std::vector<double>& times,
                            const AnalyticSigmaZOptions& opt = {});

// -1/2 times the sigma_z series.
TimeSeries analytic_J_z(const ModelParams& p, const std::vector<double>& times,
                        const AnalyticSigmaZOptions& opt = {});

// 4 [g1^2 + (d-1) g2^2] sin^2(omega t / 2) / omega^2
TimeSeries analytic_photon(const ModelParams& p, const std::vector<double>& times);

struct Spectrum {
    std::vector<double> freqs;        // angular frequency, units of omega
    std::vector<double> magnitudes;   // one-sided: |X_0|/N, 2|X_k|/N inside, |X_{N/2}|/N at Nyquist
    double bin_width = 0.0;

    // Index of the largest magnitude, skipping the zero-frequency bin.
    std::size_t dominant_index() const;
    double dominant_frequency() const { return freqs[dominant_index()]; }
};

// Mean-subtracted DFT. Needs >= 64 uniform samples.
Spectrum spectrum_of(const TimeSeries& series);

enum class RampScheme { I, II };
const char* to_string(RampScheme s);

struct RampSchedule {
    RampScheme scheme = RampScheme::I;
    double t_f = 500.0;
    ModelParams start;
    ModelParams end;

    // Linear mu(t) clamped to [0, 1].
    double mu(double t) const;
    ModelParams at(double t) const;
    // Throws InvalidArgument on schedule invariant violations.
    void validate() const;

    // Couplings switched on from zero to end.g1, end.g2.
    static RampSchedule scheme_I(const ModelParams& end, double t_f);
    // Frequencies lowered from (Omega1_start, Omega2_start) at fixed couplings.
    static RampSchedule scheme_II(const ModelParams& end, double Omega1_start, double Omega2_start, double t_f);
};

struct AdiabaticOptions {
    // Propagate within the parity sector of the initial state when it has
    // definite parity.
    bool use_parity_sector = true;
};

struct AdiabaticResult {
    TimeSeries fidelity;   // |<target|psi(t)>| at t = k t_f / n_steps, k = 0..n_steps
    StateVector final_state;
    double max_norm_drift = 0.0;
    double max_parity_drift = 0.0;
};

// Piecewise-constant propagation: each slice applies exp(-i H(t_mid) dt)
// through an eigendecomposition of the slice Hamiltonian. The initial state
// is the ground state of H(0) (|g,0,0> exactly in scheme I).
AdiabaticResult adiabatic_run(const RampSchedule& schedule, int n_steps, const StateVector& target,
                              const AdiabaticOptions& opt = {});

}  // namespace qrabi
