#include "qrabi/strong_coupling.hpp"

#include "qrabi/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace qrabi {

namespace {

void require_spin(const ModelParams& p, const char* where) {
    if (p.qudit != QuditOperators::Spin) {
        throw UnsupportedRegime(std::string(where) + " is defined for the spin qudit operators only");
    }
}

CVector sigma_vector(int sigma) {
    const CMatrix s = sigma_x_eigenvectors();
    return s.col(sigma > 0 ? 0 : 1);
}

// D(-disp) columns cached per displacement value.
class DisplacementCache {
public:
    explicit DisplacementCache(int n_max) : n_max_(n_max) {}

    const CMatrix& get(double disp) {
        auto it = cache_.find(disp);
        if (it == cache_.end()) it = cache_.emplace(disp, displacement(-disp, n_max_).entries()).first;
        return it->second;
    }

private:
    int n_max_;
    std::map<double, CMatrix> cache_;
};

StateVector displaced_state(const DisplacedLevel& level, const ModelParams& p, const CMatrix& qudit_vectors,
                            DisplacementCache& cache) {
    if (level.N < 0 || level.N > p.n_max) throw InvalidArgument("displaced state: N outside the Fock truncation");
    const std::array<CVector, 3> factors{sigma_vector(level.sigma), qudit_vectors.col(level.m_index),
                                         cache.get(level.displacement).col(level.N)};
    return StateVector::normalized(StateVector::product(factors).amplitudes(), p.layout());
}

double factorial_ratio_sqrt(int small, int large) {
    // sqrt(small! / large!)
    double r = 1.0;
    for (int k = small + 1; k <= large; ++k) r /= std::sqrt(static_cast<double>(k));
    return r;
}

}  // namespace

DisplacedLevel make_level(const ModelParams& p, int sigma, int m_index, int N) {
    if (sigma != 1 && sigma != -1) throw InvalidArgument("sigma must be +1 or -1");
    if (m_index < 0 || m_index >= p.d) throw InvalidArgument("m_index out of range");
    if (N < 0) throw InvalidArgument("N must be >= 0");
    DisplacedLevel l;
    l.sigma = sigma;
    l.m_index = m_index;
    l.N = N;
    l.displacement = (sigma * p.g1 + coupling_eigenvalue(p.d, m_index) * p.g2) / p.omega;
    l.energy = p.omega * (N - l.displacement * l.displacement);
    return l;
}

std::vector<DisplacedLevel> displaced_spectrum(const ModelParams& p) {
    p.validate();
    std::vector<DisplacedLevel> levels;
    levels.reserve(static_cast<std::size_t>(p.dim()));
    for (int sigma : {1, -1})
        for (int m = 0; m < p.d; ++m)
            for (int N = 0; N <= p.n_max; ++N) levels.push_back(make_level(p, sigma, m, N));
    std::stable_sort(levels.begin(), levels.end(), [](const DisplacedLevel& a, const DisplacedLevel& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        if (a.sigma != b.sigma) return a.sigma > b.sigma;
        if (a.m_index != b.m_index) return a.m_index < b.m_index;
        return a.N < b.N;
    });
    return levels;
}

CMatrix sigma_x_eigenvectors() {
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix v(2, 2);
    v << r, r, r, -r;
    return v;
}

EigenDecomposition coupling_eigenvectors(int d) {
    const SpinOperators s = spin_operators(d);
    return eigh(s.Jplus + s.Jminus);
}

CMatrix adiabatic_basis(int d) {
    const CMatrix sx = sigma_x_eigenvectors();
    const CMatrix q = coupling_eigenvectors(d).vectors;
    CMatrix basis(2 * d, 2 * d);
    for (int s = 0; s < 2; ++s)
        for (int k = 0; k < d; ++k) {
            const int m = d - 1 - k;
            for (int a = 0; a < 2; ++a) basis.col(s * d + k).segment(a * d, d) = sx(a, s) * q.col(m);
        }
    return basis;
}

double displaced_fock_overlap(int N, int M, double beta) {
    if (N < 0 || M < 0) throw InvalidArgument("Fock indices must be >= 0");
    const double x = beta * beta;
    const double gauss = std::exp(-0.5 * x);
    if (N >= M) {
        return factorial_ratio_sqrt(M, N) * std::pow(beta, N - M) * gauss *
               std::assoc_laguerre(static_cast<unsigned>(M), static_cast<unsigned>(N - M), x);
    }
    return factorial_ratio_sqrt(N, M) * std::pow(-beta, M - N) * gauss *
           std::assoc_laguerre(static_cast<unsigned>(N), static_cast<unsigned>(M - N), x);
}

StateVector build_displaced_state(const DisplacedLevel& level, const ModelParams& p) {
    p.validate();
    require_spin(p, "build_displaced_state");
    DisplacementCache cache(p.n_max);
    return displaced_state(level, p, coupling_eigenvectors(p.d).vectors, cache);
}

// ---------------------------------------------------------------- perturbation theory

SecondOrderM numeric_second_order_M(const ModelParams& p, int photon_cutoff) {
    p.validate();
    require_spin(p, "numeric_second_order_M");
    if (photon_cutoff < 0) throw InvalidArgument("photon_cutoff must be >= 0");
    const int d = p.d;

    // qudit Jz in the coupling eigenbasis (real)
    const SpinOperators s = spin_operators(d);
    const CMatrix q = coupling_eigenvectors(d).vectors;
    const RMatrix jz = (q.adjoint() * s.Jz.entries() * q).real();

    const auto hprime = [&](const DisplacedLevel& a, const DisplacedLevel& b) {
        double atomic = 0.0;
        if (a.m_index == b.m_index && a.sigma != b.sigma) atomic += -0.5 * p.Omega1;
        if (a.sigma == b.sigma) atomic += p.Omega2 * jz(a.m_index, b.m_index);
        if (atomic == 0.0) return 0.0;
        return atomic * displaced_fock_overlap(a.N, b.N, a.displacement - b.displacement);
    };

    const DisplacedLevel A = make_level(p, 1, d - 1, 0);
    const DisplacedLevel B = make_level(p, -1, 0, 0);
    const double E0 = A.energy;

    SecondOrderM M;
    for (int sigma : {1, -1})
        for (int m = 0; m < d; ++m)
            for (int N = 0; N <= photon_cutoff; ++N) {
                if (N == 0 && ((sigma == 1 && m == d - 1) || (sigma == -1 && m == 0))) continue;
                const DisplacedLevel k = make_level(p, sigma, m, N);
                const double denom = E0 - k.energy;
                const double ak = hprime(A, k);
                const double bk = hprime(B, k);
                if (ak == 0.0 && bk == 0.0) continue;
                if (std::abs(denom) < 1e-12) {
                    throw SingularDenominator("intermediate level degenerate with the ground doublet");
                }
                M.M00 += ak * ak / denom;
                M.M11 += bk * bk / denom;
                M.M01 += ak * bk / denom;
            }
    return M;
}

PerturbationResult perturbative_energies(const ModelParams& p) {
    p.validate();
    require_spin(p, "perturbative_energies");
    if (p.g1 == 0.0 || p.g2 == 0.0) {
        throw SingularDenominator("perturbative energies need g1 > 0 and g2 > 0");
    }
    const int d = p.d;
    const double w = p.omega;
    const double g1 = p.g1;
    const double g2 = p.g2;
    const double O1 = p.Omega1;
    const double O2 = p.Omega2;
    const double w2 = w * w;

    PerturbationResult r;
    r.splitting_order = d;
    r.E0 = -std::pow(g1 + (d - 1) * g2, 2) / w;

    if (d > 4) {
        const SecondOrderM M = numeric_second_order_M(p, 0);
        r.closed_form = false;
        r.M00 = M.M00;
        r.M01 = M.M01;
        r.E_plus = r.E0 + M.M00 + std::abs(M.M01);
        r.E_minus = r.E0 + M.M00 - std::abs(M.M01);
        return r;
    }

    const double e1 = std::exp(-4.0 * g1 * g1 / w2);
    const double e2 = std::exp(-4.0 * g2 * g2 / w2);
    const double shift = -w / (16.0 * (d - 1) * g1 * g2) * O1 * O1 * e1 -
                         w * (d - 1) / (16.0 * (d - 2) * g2 * g2 + 16.0 * g1 * g2) * O2 * O2 * e2;
    const double split = d == 2 ? w * O1 * O2 / (8.0 * (d - 1) * g1 * g2) *
                                      std::exp(-2.0 * (g1 * g1 + (d - 1) * (d - 1) * g2 * g2) / w2)
                                : 0.0;
    r.E_plus = r.E0 + shift + split;
    r.E_minus = r.E0 + shift - split;

    switch (d) {
        case 2:
            r.M00 = -w / (16.0 * g1 * g2) * (O1 * O1 * e1 + O2 * O2 * e2);
            r.M01 = w * O1 * O2 / (8.0 * g1 * g2) * std::exp(-2.0 * (g1 * g1 + g2 * g2) / w2);
            break;
        case 3:
            r.M00 = -w * O1 * O1 / (32.0 * g1 * g2) * e1 - w * O2 * O2 / (8.0 * (g2 * g2 + g1 * g2)) * e2;
            r.M01 = 0.0;
            break;
        default:
            r.M00 = -w * O1 * O1 / (48.0 * g1 * g2) * e1 - 3.0 * w * O2 * O2 / (4.0 * (8.0 * g2 * g2 + 4.0 * g1 * g2)) * e2;
            r.M01 = 0.0;
            break;
    }
    return r;
}

std::vector<GapSample> ground_splitting_scaling(const ModelParams& p, const std::vector<double>& omega2_samples) {
    std::vector<GapSample> out;
    out.reserve(omega2_samples.size());
    for (double O2 : omega2_samples) {
        const ModelParams q = p.with_frequencies(p.Omega1, O2).with_adequate_truncation();
        out.push_back({O2, lowest_sector_energies(q).gap()});
    }
    return out;
}

double loglog_slope(const std::vector<GapSample>& samples) {
    if (samples.size() < 2) throw InvalidArgument("loglog_slope needs at least two samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        if (!(s.Omega2 > 0.0) || !(s.gap > 0.0)) throw InvalidArgument("loglog_slope needs positive Omega2 and gap");
        const double x = std::log(s.Omega2);
        const double y = std::log(s.gap);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(samples.size());
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw InvalidArgument("loglog_slope: Omega2 samples are all equal");
    return (n * sxy - sx * sy) / den;
}

// ---------------------------------------------------------------- GHZ states

double ghz_displacement(const ModelParams& p) { return (p.g1 + (p.d - 1) * p.g2) / p.omega; }

double ghz_branch_overlap(const ModelParams& p) {
    const double a = ghz_displacement(p);
    return std::exp(-2.0 * a * a);
}

StateVector ghz_state(const ModelParams& p, int sign) {
    p.validate();
    require_spin(p, "ghz_state");
    if (sign != 1 && sign != -1) throw InvalidArgument("ghz_state: sign must be +1 or -1");
    DisplacementCache cache(p.n_max);
    const CMatrix q = coupling_eigenvectors(p.d).vectors;
    const StateVector a = displaced_state(make_level(p, 1, p.d - 1, 0), p, q, cache);
    const StateVector b = displaced_state(make_level(p, -1, 0, 0), p, q, cache);
    CVector v = a.amplitudes() + static_cast<double>(sign) * b.amplitudes();
    if (v.norm() < 1e-12) throw DegenerateBranch("GHZ branches cancel");
    return StateVector::normalized(std::move(v), p.layout());
}

int ghz_parity(const ModelParams& p, int sign) {
    const StateVector psi = ghz_state(p, sign);
    const RVector par = parity_diagonal(p);
    const double e = (psi.amplitudes().cwiseAbs2().array() * par.array()).sum();
    return e >= 0.0 ? 1 : -1;
}

StateVector ghz_state_with_parity(const ModelParams& p, int parity) {
    const int sign = ghz_parity(p, 1) == (parity >= 0 ? 1 : -1) ? 1 : -1;
    return ghz_state(p, sign);
}

FirstOrderState psi_pm_firstorder(const ModelParams& p, int sign, int photon_cutoff) {
    p.validate();
    require_spin(p, "psi_pm_firstorder");
    if (p.g1 == 0.0 || p.g2 == 0.0) throw SingularDenominator("first-order state needs g1 > 0 and g2 > 0");
    if (photon_cutoff < 0 || photon_cutoff > p.n_max) throw InvalidArgument("photon_cutoff outside [0, n_max]");

    const int d = p.d;
    const StateVector psi0 = ghz_state(p, sign);
    const RMatrix hprime = hamiltonian_terms(d, p.n_max).combine(0.0, p.Omega1, p.Omega2, 0.0, 0.0);
    const CVector hpsi = hprime.cast<Complex>() * psi0.amplitudes();
    const double E0 = make_level(p, 1, d - 1, 0).energy;

    DisplacementCache cache(p.n_max);
    const CMatrix q = coupling_eigenvectors(d).vectors;

    FirstOrderState out;
    CVector acc = psi0.amplitudes();
    for (int s : {1, -1})
        for (int m = 0; m < d; ++m)
            for (int N = 0; N <= photon_cutoff; ++N) {
                if (N == 0 && ((s == 1 && m == d - 1) || (s == -1 && m == 0))) continue;
                const DisplacedLevel k = make_level(p, s, m, N);
                const double denom = E0 - k.energy;
                if (std::abs(denom) < 1e-9) throw SingularDenominator("admixed level degenerate with the ground doublet");
                const StateVector ket = displaced_state(k, p, q, cache);
                const Complex c = ket.amplitudes().dot(hpsi) / denom;
                out.admixtures.push_back({k, c.real()});
                acc += c * ket.amplitudes();
            }
    out.state = StateVector::normalized(std::move(acc), p.layout());
    return out;
}

}  // namespace qrabi
