#include "qrabi/dynamics.hpp"

#include "qrabi/errors.hpp"
#include "qrabi/strong_coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qrabi {

namespace {

constexpr Complex I{0.0, 1.0};

double poisson(double mean, int n) {
    if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
}

}  // namespace

std::vector<double> uniform_grid(double t0, double t1, std::size_t n, bool include_endpoint) {
    if (n == 0) return {};
    if (n == 1) return {t0};
    const double dt = (t1 - t0) / static_cast<double>(include_endpoint ? n - 1 : n);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = t0 + static_cast<double>(i) * dt;
    return t;
}

// ---------------------------------------------------------------- static evolution

StaticPropagator::StaticPropagator(const OperatorMatrix& H) {
    EigenDecomposition e = eigh(H);
    energies_ = std::move(e.values);
    vectors_ = std::move(e.vectors);
}

CVector StaticPropagator::coefficients(const CVector& psi0) const {
    if (psi0.size() != dim()) throw InvalidDimension("propagator: state dimension mismatch");
    return vectors_.adjoint() * psi0;
}

CVector StaticPropagator::evolve_coefficients(const CVector& coeffs, double t) const {
    const CVector phased = coeffs.cwiseProduct((-I * t * energies_.cast<Complex>()).array().exp().matrix());
    return vectors_ * phased;
}

CVector StaticPropagator::evolve(const CVector& psi0, double t) const {
    if (t == 0.0) return psi0;
    return evolve_coefficients(coefficients(psi0), t);
}

std::vector<StateVector> evolve_static(const OperatorMatrix& H, const StateVector& psi0,
                                       const std::vector<double>& times) {
    if (H.dim() != psi0.dim()) throw InvalidDimension("evolve_static: H and psi0 dimensions differ");
    const StaticPropagator prop(H);
    const CVector c = prop.coefficients(psi0.amplitudes());
    std::vector<StateVector> out;
    out.reserve(times.size());
    for (double t : times) {
        if (t == 0.0) {
            out.push_back(psi0);
            continue;
        }
        out.push_back(StateVector::normalized(prop.evolve_coefficients(c, t), psi0.layout()));
    }
    return out;
}

QuenchResult quench_run(const ModelParams& p, const std::vector<double>& times) {
    p.validate();
    warn_truncation(p, "quench_run");
    if (times.empty()) throw InvalidArgument("quench_run: empty time grid");
    if (times.front() != 0.0) throw InvalidArgument("quench_run: times must start at 0");

    const HamiltonianTerms terms = hamiltonian_terms(p.d, p.n_max, p.qudit);
    const StaticPropagator prop(OperatorMatrix::from_real(terms.combine(p), true));
    const RVector sz = terms.sigma_z.diagonal();
    const RVector jz = terms.qudit_z.diagonal();
    const RVector nn = terms.number.diagonal();
    const RVector par = parity_diagonal(p);

    CVector psi0 = CVector::Zero(p.dim());
    psi0(0) = 1.0;
    const CVector c = prop.coefficients(psi0);

    QuenchResult r;
    r.fidelity.label = "fidelity";
    r.sigma_z.label = "sigma_z";
    r.J_z.label = "J_z";
    r.photon_number.label = "photon_number";
    for (TimeSeries* s : {&r.fidelity, &r.sigma_z, &r.J_z, &r.photon_number}) {
        s->times = times;
        s->values.resize(times.size());
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        const CVector psi = times[k] == 0.0 ? psi0 : prop.evolve_coefficients(c, times[k]);
        const RVector prob = psi.cwiseAbs2();
        r.fidelity.values[k] = std::abs(psi(0));
        r.sigma_z.values[k] = prob.dot(sz);
        r.J_z.values[k] = prob.dot(jz);
        r.photon_number.values[k] = prob.dot(nn);
        r.max_norm_drift = std::max(r.max_norm_drift, std::abs(std::sqrt(prob.sum()) - 1.0));
        r.max_parity_drift = std::max(r.max_parity_drift, std::abs(prob.dot(par) - 1.0));
    }
    return r;
}

// ---------------------------------------------------------------- analytic approximations

TimeSeries analytic_quench_fidelity(const ModelParams& p, const std::vector<double>& times,
                                    const AnalyticFidelityOptions& opt) {
    p.validate();
    if (p.qudit != QuditOperators::Spin) throw UnsupportedRegime("analytic fidelity needs the spin qudit operators");
    if (opt.n_sum < 0) throw InvalidArgument("n_sum must be >= 0");
    const int d = p.d;
    const CMatrix q = coupling_eigenvectors(d).vectors;

    std::vector<double> weight(static_cast<std::size_t>(d));
    std::vector<double> alpha2(static_cast<std::size_t>(d));
    for (int m = 0; m < d; ++m) {
        weight[m] = opt.weights == BranchWeights::Overlap ? std::norm(q(0, m)) : 1.0 / d;
        const double a = (p.g1 + coupling_eigenvalue(d, m) * p.g2) / p.omega;
        alpha2[m] = a * a;
    }

    TimeSeries s;
    s.label = "fidelity_analytic";
    s.times = times;
    s.values.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        Complex amp = 0.0;
        for (int m = 0; m < d; ++m)
            for (int N = 0; N <= opt.n_sum; ++N) {
                const double E = p.omega * (N - alpha2[m]);
                amp += weight[m] * poisson(alpha2[m], N) * std::exp(-I * E * times[k]);
            }
        s.values[k] = std::abs(amp);
    }
    return s;
}

TimeSeries analytic_sigma_z(const ModelParams& p, const std::vector<double>& times, const AnalyticSigmaZOptions& opt) {
    p.validate();
    if (p.d != 2) throw UnsupportedRegime("analytic sigma_z is derived for d = 2 only");
    if (std::abs(p.g1 - p.g2) > 1e-12 * std::max(1.0, p.g1)) throw UnsupportedRegime("analytic sigma_z requires g1 = g2");
    if (opt.n_sum < 0) throw InvalidArgument("n_sum must be >= 0");

    const double x = 4.0 * p.g1 * p.g1 / (p.omega * p.omega);
    std::vector<double> w(static_cast<std::size_t>(opt.n_sum) + 1);
    for (int N = 0; N <= opt.n_sum; ++N) {
        w[N] = opt.raw_printed ? std::exp(N * std::log(x) - std::lgamma(N + 1.0)) : poisson(x, N);
        if (x == 0.0) w[N] = N == 0 ? 1.0 : 0.0;
    }

    TimeSeries s;
    s.label = "sigma_z_analytic";
    s.times = times;
    s.values.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        double v = 0.0;
        for (int N = 0; N <= opt.n_sum; ++N) v += w[N] * std::cos(x * p.omega * t - N * p.omega * t);
        s.values[k] = v;
    }
    return s;
}

TimeSeries analytic_J_z(const ModelParams& p, const std::vector<double>& times, const AnalyticSigmaZOptions& opt) {
    TimeSeries s = analytic_sigma_z(p, times, opt);
    for (double& v : s.values) v *= -0.5;
    s.label = "J_z_analytic";
    return s;
}

TimeSeries analytic_photon(const ModelParams& p, const std::vector<double>& times) {
    p.validate();
    const double amp = 4.0 * (p.g1 * p.g1 + (p.d - 1) * p.g2 * p.g2) / (p.omega * p.omega);
    TimeSeries s;
    s.label = "photon_number_analytic";
    s.times = times;
    s.values.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double sn = std::sin(0.5 * p.omega * times[k]);
        s.values[k] = amp * sn * sn;
    }
    return s;
}

// ---------------------------------------------------------------- adiabatic ramps

const char* to_string(RampScheme s) { return s == RampScheme::I ? "I" : "II"; }

double RampSchedule::mu(double t) const {
    return std::clamp(t / t_f, 0.0, 1.0);
}

ModelParams RampSchedule::at(double t) const {
    const double m = mu(t);
    ModelParams p = end;
    p.Omega1 = start.Omega1 + m * (end.Omega1 - start.Omega1);
    p.Omega2 = start.Omega2 + m * (end.Omega2 - start.Omega2);
    p.g1 = start.g1 + m * (end.g1 - start.g1);
    p.g2 = start.g2 + m * (end.g2 - start.g2);
    return p;
}

void RampSchedule::validate() const {
    if (!std::isfinite(t_f) || t_f <= 0.0) throw InvalidArgument("ramp: t_f must be > 0");
    start.validate();
    end.validate();
    if (start.d != end.d || start.n_max != end.n_max || start.omega != end.omega || start.qudit != end.qudit) {
        throw InvalidArgument("ramp: start and end must share d, omega, n_max and qudit operators");
    }
    if (scheme == RampScheme::I) {
        if (start.g1 != 0.0 || start.g2 != 0.0) throw InvalidArgument("ramp scheme I: start couplings must be 0");
        if (start.Omega1 != end.Omega1 || start.Omega2 != end.Omega2) {
            throw InvalidArgument("ramp scheme I: frequencies must stay fixed");
        }
    } else {
        if (start.g1 != end.g1 || start.g2 != end.g2) throw InvalidArgument("ramp scheme II: couplings must stay fixed");
    }
}

RampSchedule RampSchedule::scheme_I(const ModelParams& end, double t_f) {
    RampSchedule s;
    s.scheme = RampScheme::I;
    s.t_f = t_f;
    s.end = end.with_adequate_truncation();
    s.start = s.end.with_couplings(0.0, 0.0);
    s.validate();
    return s;
}

RampSchedule RampSchedule::scheme_II(const ModelParams& end, double Omega1_start, double Omega2_start, double t_f) {
    RampSchedule s;
    s.scheme = RampScheme::II;
    s.t_f = t_f;
    s.end = end.with_adequate_truncation();
    s.start = s.end.with_frequencies(Omega1_start, Omega2_start);
    s.validate();
    return s;
}

AdiabaticResult adiabatic_run(const RampSchedule& schedule, int n_steps, const StateVector& target,
                              const AdiabaticOptions& opt) {
    schedule.validate();
    if (n_steps < 1) throw InvalidArgument("adiabatic_run: n_steps must be >= 1");
    const ModelParams& e = schedule.end;
    if (target.dim() != e.dim()) throw InvalidDimension("adiabatic_run: target dimension mismatch");
    warn_truncation(e, "adiabatic_run");

    CVector psi0;
    if (schedule.scheme == RampScheme::I) {
        psi0 = CVector::Zero(e.dim());
        psi0(0) = 1.0;
    } else {
        psi0 = ground_state(schedule.start).state.amplitudes();
    }

    const RVector par = parity_diagonal(e);
    const double p0 = psi0.cwiseAbs2().dot(par);
    std::vector<Index> idx;
    if (opt.use_parity_sector && std::abs(std::abs(p0) - 1.0) < 1e-10) {
        idx = parity_sectors(e).of(p0 > 0 ? 1 : -1);
    } else {
        idx.resize(static_cast<std::size_t>(e.dim()));
        std::iota(idx.begin(), idx.end(), Index{0});
    }
    const bool full_space = static_cast<Index>(idx.size()) == e.dim();

    const HamiltonianTerms all = hamiltonian_terms(e.d, e.n_max, e.qudit);
    const HamiltonianTerms terms{all.number(idx, idx), all.sigma_z(idx, idx), all.qudit_z(idx, idx),
                                 all.coupling1(idx, idx), all.coupling2(idx, idx)};
    const RVector par_sub = par(idx);

    CVector x = psi0(idx);
    const CVector tgt = target.amplitudes()(idx);

    AdiabaticResult r;
    r.fidelity.label = "fidelity";
    r.fidelity.times.resize(static_cast<std::size_t>(n_steps) + 1);
    r.fidelity.values.resize(static_cast<std::size_t>(n_steps) + 1);
    r.fidelity.times[0] = 0.0;
    r.fidelity.values[0] = std::abs(tgt.dot(x));

    const double dt = schedule.t_f / n_steps;
    Eigen::SelfAdjointEigenSolver<RMatrix> es;
    CVector c;
    for (int k = 0; k < n_steps; ++k) {
        const ModelParams pm = schedule.at((k + 0.5) * dt);
        es.compute(terms.combine(pm));
        if (es.info() != Eigen::Success) throw Error("adiabatic_run: slice eigensolver failed");
        const RMatrix& v = es.eigenvectors();
        c.noalias() = v.transpose().cast<Complex>() * x;
        c = c.cwiseProduct((-I * dt * es.eigenvalues().cast<Complex>()).array().exp().matrix());
        x.noalias() = v.cast<Complex>() * c;

        const RVector prob = x.cwiseAbs2();
        r.max_norm_drift = std::max(r.max_norm_drift, std::abs(std::sqrt(prob.sum()) - 1.0));
        if (full_space) r.max_parity_drift = std::max(r.max_parity_drift, std::abs(prob.dot(par_sub) - p0));
        r.fidelity.times[static_cast<std::size_t>(k) + 1] = (k + 1) * dt;
        r.fidelity.values[static_cast<std::size_t>(k) + 1] = std::abs(tgt.dot(x));
    }

    CVector full = CVector::Zero(e.dim());
    for (std::size_t i = 0; i < idx.size(); ++i) full(idx[i]) = x(static_cast<Index>(i));
    r.final_state = StateVector::normalized(std::move(full), e.layout());
    return r;
}

}  // namespace qrabi
