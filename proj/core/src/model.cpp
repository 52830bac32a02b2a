#include "qrabi/model.hpp"

#include "qrabi/errors.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace qrabi {

namespace {

RMatrix rkron(const RMatrix& a, const RMatrix& b) {
    RMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

RMatrix rkron3(const RMatrix& a, const RMatrix& b, const RMatrix& c) { return rkron(rkron(a, b), c); }

void require_finite_nonneg(double v, const char* name) {
    if (!std::isfinite(v)) throw InvalidParams(std::string(name) + " must be finite");
    if (v < 0.0) throw InvalidParams(std::string(name) + " must be >= 0, got " + std::to_string(v));
}

// Fix sign so that the first component with |v_i| > 1e-8 is positive.
void fix_sign(Eigen::Ref<RVector> v) {
    for (Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-8) {
            if (v(i) < 0) v = -v;
            return;
        }
    }
}

struct SectorSolution {
    RVector values;
    RMatrix vectors;   // sector-local
};

SectorSolution solve_sector(const RMatrix& h, const std::vector<Index>& idx, bool with_vectors) {
    const RMatrix block = h(idx, idx);
    Eigen::SelfAdjointEigenSolver<RMatrix> es(block, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("parity-sector eigensolver failed");
    SectorSolution s;
    s.values = es.eigenvalues();
    if (with_vectors) s.vectors = es.eigenvectors();
    return s;
}

}  // namespace

const char* to_string(QuditOperators q) {
    return q == QuditOperators::Spin ? "spin" : "ladder";
}

QuditOperators qudit_operators_from_string(const std::string& s) {
    if (s == "spin") return QuditOperators::Spin;
    if (s == "ladder") return QuditOperators::Ladder;
    throw InvalidParams("unknown qudit operator set '" + s + "' (expected spin or ladder)");
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::Exact: return "exact";
        case Provenance::WeakAnalytic: return "weak-analytic";
        case Provenance::StrongAnalytic: return "strong-analytic";
    }
    return "?";
}

// ---------------------------------------------------------------- ModelParams

void ModelParams::validate() const {
    if (d < 2) throw InvalidParams("d must be >= 2, got " + std::to_string(d));
    if (!std::isfinite(omega) || omega <= 0.0) throw InvalidParams("omega must be finite and > 0");
    require_finite_nonneg(Omega1, "Omega1");
    require_finite_nonneg(Omega2, "Omega2");
    require_finite_nonneg(g1, "g1");
    require_finite_nonneg(g2, "g2");
    if (n_max < 1) throw InvalidParams("n_max must be >= 1, got " + std::to_string(n_max));
}

int ModelParams::required_n_max(int d, double g1, double g2, double omega) {
    const double x = (g1 + (d - 1) * g2) / omega;
    return static_cast<int>(std::ceil(8.0 * x * x - 1e-12)) + 10;
}

ModelParams ModelParams::with_n_max(int n) const {
    ModelParams q = *this;
    q.n_max = n;
    return q;
}

ModelParams ModelParams::with_adequate_truncation() const {
    return with_n_max(std::max(n_max, required_n_max()));
}

ModelParams ModelParams::with_couplings(double g1_, double g2_) const {
    ModelParams q = *this;
    q.g1 = g1_;
    q.g2 = g2_;
    return q;
}

ModelParams ModelParams::with_frequencies(double Omega1_, double Omega2_) const {
    ModelParams q = *this;
    q.Omega1 = Omega1_;
    q.Omega2 = Omega2_;
    return q;
}

ModelParams ModelParams::in_omega_units() const {
    validate();
    ModelParams q = *this;
    q.Omega1 /= omega;
    q.Omega2 /= omega;
    q.g1 /= omega;
    q.g2 /= omega;
    q.omega = 1.0;
    return q;
}

TruncationReport check_truncation(const ModelParams& p) {
    TruncationReport r;
    r.n_max = p.n_max;
    r.required = p.required_n_max();
    r.adequate = p.n_max >= r.required;
    return r;
}

TruncationReport warn_truncation(const ModelParams& p, const char* where) {
    const auto r = check_truncation(p);
    if (!r.adequate) {
        spdlog::warn("{}: n_max = {} is below the truncation rule ({}) for d={}, g1={}, g2={}", where, r.n_max,
                     r.required, p.d, p.g1, p.g2);
    }
    return r;
}

// ---------------------------------------------------------------- Hamiltonians

HamiltonianTerms hamiltonian_terms(int d, int n_max, QuditOperators qudit) {
    if (d < 2) throw InvalidDimension("d must be >= 2");
    if (n_max < 1) throw InvalidDimension("n_max must be >= 1");
    const RMatrix I2 = RMatrix::Identity(2, 2);
    const RMatrix Id = RMatrix::Identity(d, d);
    const RMatrix In = RMatrix::Identity(n_max + 1, n_max + 1);

    const auto bos = boson_operators(n_max);
    const RMatrix a = bos.a.real_part();
    const RMatrix x = a + a.transpose();
    const RMatrix sz = pauli(Axis::z).real_part();
    const RMatrix sx = pauli(Axis::x).real_part();

    const SpinOperators q = qudit == QuditOperators::Spin ? spin_operators(d) : ladder_operators(d);
    const RMatrix qz = q.Jz.real_part();
    const RMatrix qx = (q.Jplus + q.Jminus).real_part();

    HamiltonianTerms t;
    t.number = rkron3(I2, Id, bos.n.real_part());
    t.sigma_z = rkron3(sz, Id, In);
    t.qudit_z = rkron3(I2, qz, In);
    t.coupling1 = rkron3(sx, Id, x);
    t.coupling2 = rkron3(I2, qx, x);
    return t;
}

RMatrix HamiltonianTerms::combine(double omega, double Omega1, double Omega2, double g1, double g2) const {
    RMatrix h = omega * number;
    h.noalias() -= (0.5 * Omega1) * sigma_z;
    h.noalias() += Omega2 * qudit_z;
    h.noalias() += g1 * coupling1;
    h.noalias() += g2 * coupling2;
    return h;
}

RMatrix HamiltonianTerms::combine(const ModelParams& p) const {
    return combine(p.omega, p.Omega1, p.Omega2, p.g1, p.g2);
}

namespace {

RMatrix full_real(const ModelParams& p) {
    p.validate();
    return hamiltonian_terms(p.d, p.n_max, p.qudit).combine(p);
}

}  // namespace

OperatorMatrix build_full_hamiltonian(const ModelParams& p) {
    return OperatorMatrix::from_real(full_real(p), true);
}

OperatorMatrix build_uncoupled(const ModelParams& p) {
    return build_full_hamiltonian(p.with_couplings(0.0, 0.0));
}

OperatorMatrix build_reduced(const ModelParams& p) {
    return build_full_hamiltonian(p.with_frequencies(0.0, 0.0));
}

RVector parity_diagonal(const ModelParams& p) {
    p.validate();
    RVector diag(p.dim());
    const Index nb = p.n_max + 1;
    for (int s = 0; s < 2; ++s)
        for (int m = 0; m < p.d; ++m)
            for (Index n = 0; n < nb; ++n) {
                const int sign = (s == 0 ? 1 : -1) * (m % 2 == 0 ? 1 : -1) * (n % 2 == 0 ? 1 : -1);
                diag((s * p.d + m) * nb + n) = sign;
            }
    return diag;
}

OperatorMatrix build_parity(const ModelParams& p) {
    return OperatorMatrix::diagonal(parity_diagonal(p));
}

ParitySectors parity_sectors(const ModelParams& p) {
    const RVector diag = parity_diagonal(p);
    ParitySectors s;
    for (Index i = 0; i < diag.size(); ++i) (diag(i) > 0 ? s.even : s.odd).push_back(i);
    return s;
}

// ---------------------------------------------------------------- spectra

SpectrumResult exact_spectrum(const ModelParams& p) {
    const RMatrix h = full_real(p);
    const ParitySectors sectors = parity_sectors(p);
    const SectorSolution even = solve_sector(h, sectors.even, true);
    const SectorSolution odd = solve_sector(h, sectors.odd, true);

    const Index dim = p.dim();
    SpectrumResult out;
    out.provenance = Provenance::Exact;
    out.values.resize(dim);
    out.vectors = CMatrix::Zero(dim, dim);
    out.parity.resize(static_cast<std::size_t>(dim));

    // Merge the two ascending lists; ties go to the even sector.
    Index ie = 0;
    Index io = 0;
    RVector col(dim);
    for (Index k = 0; k < dim; ++k) {
        const bool take_even =
            io >= odd.values.size() || (ie < even.values.size() && even.values(ie) <= odd.values(io));
        const SectorSolution& src = take_even ? even : odd;
        const std::vector<Index>& idx = take_even ? sectors.even : sectors.odd;
        Index& i = take_even ? ie : io;
        col.setZero();
        for (std::size_t r = 0; r < idx.size(); ++r) col(idx[r]) = src.vectors(static_cast<Index>(r), i);
        fix_sign(col);
        out.values(k) = src.values(i);
        out.vectors.col(k) = col.cast<Complex>();
        out.parity[static_cast<std::size_t>(k)] = take_even ? 1 : -1;
        ++i;
    }
    return out;
}

RVector exact_energies(const ModelParams& p) {
    const RMatrix h = full_real(p);
    const ParitySectors sectors = parity_sectors(p);
    const SectorSolution even = solve_sector(h, sectors.even, false);
    const SectorSolution odd = solve_sector(h, sectors.odd, false);
    RVector all(p.dim());
    all << even.values, odd.values;
    std::sort(all.data(), all.data() + all.size());
    return all;
}

SectorGround sector_ground(const ModelParams& p, int parity) {
    const RMatrix h = full_real(p);
    const ParitySectors sectors = parity_sectors(p);
    const auto& idx = sectors.of(parity);
    const SectorSolution sol = solve_sector(h, idx, true);
    SectorGround g;
    g.energy = sol.values(0);
    g.vector = RVector::Zero(p.dim());
    for (std::size_t r = 0; r < idx.size(); ++r) g.vector(idx[r]) = sol.vectors(static_cast<Index>(r), 0);
    fix_sign(g.vector);
    return g;
}

SectorEnergies lowest_sector_energies(const ModelParams& p) {
    const RMatrix h = full_real(p);
    const ParitySectors sectors = parity_sectors(p);
    return {solve_sector(h, sectors.even, false).values(0), solve_sector(h, sectors.odd, false).values(0)};
}

GroundState ground_state(const ModelParams& p) {
    const RMatrix h = full_real(p);
    const ParitySectors sectors = parity_sectors(p);
    const SectorSolution even = solve_sector(h, sectors.even, true);
    const SectorSolution odd = solve_sector(h, sectors.odd, false);

    const double e_even = even.values(0);
    const double e_odd = odd.values(0);
    GroundState g;
    if (e_odd < e_even - 1e-10) {
        const SectorGround sg = sector_ground(p, -1);
        g.energy = e_odd;
        g.parity = -1;
        g.sector_gap = e_even - e_odd;
        g.state = StateVector::normalized(sg.vector.cast<Complex>(), p.layout());
        return g;
    }
    RVector v = RVector::Zero(p.dim());
    for (std::size_t r = 0; r < sectors.even.size(); ++r) v(sectors.even[r]) = even.vectors(static_cast<Index>(r), 0);
    fix_sign(v);
    g.energy = e_even;
    g.parity = 1;
    g.sector_gap = e_odd - e_even;
    g.state = StateVector::normalized(v.cast<Complex>(), p.layout());
    return g;
}

}  // namespace qrabi
