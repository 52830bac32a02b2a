#include "qrabi/quantum_core.hpp"

#include "qrabi/errors.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qrabi {

namespace {

void require_same_dim(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw InvalidDimension(std::string(what) + ": dimension mismatch (" +
                               std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
    }
}

Index layout_product(const Layout& layout) {
    if (layout.empty()) throw InvalidArgument("layout must have at least one factor");
    Index total = 1;
    for (Index f : layout) {
        if (f < 1) throw InvalidDimension("layout factor dimensions must be positive");
        total *= f;
    }
    return total;
}

// Row-major strides of a layout.
std::vector<Index> strides_of(const Layout& layout) {
    std::vector<Index> strides(layout.size(), 1);
    for (std::size_t k = layout.size(); k-- > 1;) strides[k - 1] = strides[k] * layout[k];
    return strides;
}

std::vector<bool> kept_mask(const Layout& layout, std::span<const Index> keep) {
    if (keep.empty()) throw InvalidArgument("partial trace: keep must name at least one factor");
    std::vector<bool> mask(layout.size(), false);
    for (Index k : keep) {
        if (k < 0 || k >= static_cast<Index>(layout.size())) {
            throw InvalidArgument("partial trace: factor index " + std::to_string(k) + " out of range");
        }
        if (mask[static_cast<std::size_t>(k)]) {
            throw InvalidArgument("partial trace: factor index " + std::to_string(k) + " repeated");
        }
        mask[static_cast<std::size_t>(k)] = true;
    }
    return mask;
}

// Splits every flat index into (kept-subsystem index, traced-subsystem index).
struct Split {
    Index kept_dim = 1;
    Index traced_dim = 1;
    std::vector<Index> kept;
    std::vector<Index> traced;
};

Split split_indices(const Layout& layout, const std::vector<bool>& mask) {
    Split s;
    for (std::size_t f = 0; f < layout.size(); ++f) (mask[f] ? s.kept_dim : s.traced_dim) *= layout[f];
    const Index total = s.kept_dim * s.traced_dim;
    s.kept.resize(static_cast<std::size_t>(total));
    s.traced.resize(static_cast<std::size_t>(total));
    std::vector<Index> digits(layout.size(), 0);
    for (Index flat = 0; flat < total; ++flat) {
        Index k = 0;
        Index t = 0;
        for (std::size_t f = 0; f < layout.size(); ++f) {
            if (mask[f]) k = k * layout[f] + digits[f];
            else t = t * layout[f] + digits[f];
        }
        s.kept[static_cast<std::size_t>(flat)] = k;
        s.traced[static_cast<std::size_t>(flat)] = t;
        for (std::size_t f = layout.size(); f-- > 0;) {
            if (++digits[f] < layout[f]) break;
            digits[f] = 0;
        }
    }
    return s;
}

void fix_phase(CMatrix& vectors) {
    for (Index c = 0; c < vectors.cols(); ++c) {
        for (Index r = 0; r < vectors.rows(); ++r) {
            const double mag = std::abs(vectors(r, c));
            if (mag > 1e-8) {
                vectors.col(c) *= std::conj(vectors(r, c)) / mag;
                vectors(r, c) = Complex(vectors(r, c).real(), 0.0);
                break;
            }
        }
    }
}

}  // namespace

// ---------------------------------------------------------------- OperatorMatrix

OperatorMatrix::OperatorMatrix(CMatrix entries, bool hermitian_hint)
    : entries_(std::move(entries)), hermitian_(hermitian_hint) {
    if (entries_.rows() != entries_.cols()) {
        throw InvalidDimension("OperatorMatrix must be square, got " + std::to_string(entries_.rows()) +
                               "x" + std::to_string(entries_.cols()));
    }
    if (entries_.rows() == 0) throw InvalidDimension("OperatorMatrix must have positive dimension");
    if (hermitian_ && !is_hermitian()) {
        throw ContractViolation("OperatorMatrix flagged Hermitian but defect is " +
                                std::to_string(hermiticity_defect()));
    }
}

OperatorMatrix::OperatorMatrix(CMatrix entries, bool hermitian_hint, Unchecked) noexcept
    : entries_(std::move(entries)), hermitian_(hermitian_hint) {}

OperatorMatrix OperatorMatrix::identity(Index dim) {
    return OperatorMatrix(CMatrix::Identity(dim, dim), true);
}

OperatorMatrix OperatorMatrix::zero(Index dim) {
    return OperatorMatrix(CMatrix::Zero(dim, dim), true);
}

OperatorMatrix OperatorMatrix::diagonal(const RVector& diag) {
    return OperatorMatrix(diag.cast<Complex>().asDiagonal().toDenseMatrix(), true);
}

OperatorMatrix OperatorMatrix::from_real(const RMatrix& entries, bool hermitian_hint) {
    return OperatorMatrix(entries.cast<Complex>(), hermitian_hint);
}

double OperatorMatrix::hermiticity_defect() const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

bool OperatorMatrix::is_real() const {
    return entries_.imag().cwiseAbs().maxCoeff() == 0.0;
}

double OperatorMatrix::max_abs() const { return entries_.cwiseAbs().maxCoeff(); }

OperatorMatrix OperatorMatrix::adjoint() const {
    return OperatorMatrix(entries_.adjoint(), hermitian_, Unchecked{});
}

OperatorMatrix OperatorMatrix::transpose() const {
    return OperatorMatrix(entries_.transpose(), hermitian_, Unchecked{});
}

CVector OperatorMatrix::apply(const CVector& v) const {
    if (v.size() != dim()) throw InvalidDimension("apply: vector length does not match operator");
    return entries_ * v;
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_dim(a, b, "operator+");
    return OperatorMatrix(a.entries_ + b.entries_, a.hermitian_ && b.hermitian_, OperatorMatrix::Unchecked{});
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_dim(a, b, "operator-");
    return OperatorMatrix(a.entries_ - b.entries_, a.hermitian_ && b.hermitian_, OperatorMatrix::Unchecked{});
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_dim(a, b, "operator*");
    return OperatorMatrix(a.entries_ * b.entries_, false, OperatorMatrix::Unchecked{});
}

OperatorMatrix operator*(double s, const OperatorMatrix& a) {
    return OperatorMatrix(s * a.entries_, a.hermitian_, OperatorMatrix::Unchecked{});
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) {
    return OperatorMatrix(s * a.entries_, a.hermitian_ && s.imag() == 0.0, OperatorMatrix::Unchecked{});
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    return a * b - b * a;
}

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(CVector amplitudes, Layout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
    if (layout_product(layout_) != amplitudes_.size()) {
        throw InvalidDimension("StateVector: layout product " + std::to_string(layout_product(layout_)) +
                               " does not match dimension " + std::to_string(amplitudes_.size()));
    }
    if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
        throw ContractViolation("StateVector: norm " + std::to_string(amplitudes_.norm()) + " is not 1");
    }
}

StateVector StateVector::normalized(CVector amplitudes, Layout layout) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalise a zero or non-finite vector");
    amplitudes /= n;
    return StateVector(std::move(amplitudes), std::move(layout));
}

StateVector StateVector::basis(Layout layout, Index index) {
    const Index dim = layout_product(layout);
    if (index < 0 || index >= dim) throw InvalidArgument("basis index out of range");
    CVector v = CVector::Zero(dim);
    v(index) = 1.0;
    return StateVector(std::move(v), std::move(layout));
}

StateVector StateVector::basis(Layout layout, std::span<const Index> multi_index) {
    if (multi_index.size() != layout.size()) throw InvalidArgument("multi-index rank does not match layout");
    Index flat = 0;
    for (std::size_t f = 0; f < layout.size(); ++f) {
        if (multi_index[f] < 0 || multi_index[f] >= layout[f]) throw InvalidArgument("multi-index out of range");
        flat = flat * layout[f] + multi_index[f];
    }
    return basis(std::move(layout), flat);
}

StateVector StateVector::product(std::span<const CVector> factors) {
    if (factors.empty()) throw InvalidArgument("product state needs at least one factor");
    CVector acc = factors[0];
    Layout layout{factors[0].size()};
    for (std::size_t k = 1; k < factors.size(); ++k) {
        const CVector& f = factors[k];
        CVector next(acc.size() * f.size());
        for (Index i = 0; i < acc.size(); ++i) next.segment(i * f.size(), f.size()) = acc(i) * f;
        acc = std::move(next);
        layout.push_back(f.size());
    }
    return StateVector(std::move(acc), std::move(layout));
}

Complex StateVector::inner(const StateVector& other) const {
    if (dim() != other.dim()) throw InvalidArgument("inner product: dimension mismatch");
    return amplitudes_.dot(other.amplitudes_);
}

// ---------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw InvalidDimension("DensityMatrix must be square and non-empty");
    }
    const double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > kHermitianTolerance) {
        throw ContractViolation("DensityMatrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    const Complex tr = entries_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kNormTolerance) {
        throw ContractViolation("DensityMatrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw ContractViolation("DensityMatrix has a negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    const CVector& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint(), Unchecked{});
}

// ---------------------------------------------------------------- elementary operators

OperatorMatrix pauli(Axis which) {
    CMatrix m(2, 2);
    switch (which) {
        case Axis::x: m << 0, 1, 1, 0; break;
        case Axis::y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case Axis::z: m << 1, 0, 0, -1; break;
    }
    return OperatorMatrix(std::move(m), true);
}

SpinOperators spin_operators(int d) {
    if (d < 2) throw InvalidDimension("spin_operators: d must be >= 2, got " + std::to_string(d));
    const double j = 0.5 * (d - 1);
    RVector jz(d);
    RMatrix jp = RMatrix::Zero(d, d);
    for (int m = 0; m < d; ++m) {
        const double mz = -j + m;
        jz(m) = mz;
        if (m + 1 < d) jp(m + 1, m) = std::sqrt(j * (j + 1) - mz * (mz + 1));
    }
    OperatorMatrix plus = OperatorMatrix::from_real(jp);
    return {OperatorMatrix::diagonal(jz), plus, plus.adjoint()};
}

SpinOperators ladder_operators(int d) {
    if (d < 2) throw InvalidDimension("ladder_operators: d must be >= 2, got " + std::to_string(d));
    RVector number(d);
    RMatrix raise = RMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        number(k) = k;
        if (k + 1 < d) raise(k + 1, k) = std::sqrt(static_cast<double>(k + 1));
    }
    OperatorMatrix plus = OperatorMatrix::from_real(raise);
    return {OperatorMatrix::diagonal(number), plus, plus.adjoint()};
}

BosonOperators boson_operators(int n_max) {
    if (n_max < 1) throw InvalidDimension("boson_operators: n_max must be >= 1");
    const int dim = n_max + 1;
    RMatrix a = RMatrix::Zero(dim, dim);
    RVector n(dim);
    for (int k = 0; k < dim; ++k) {
        n(k) = k;
        if (k > 0) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    OperatorMatrix lower = OperatorMatrix::from_real(a);
    return {lower, lower.adjoint(), OperatorMatrix::diagonal(n)};
}

OperatorMatrix displacement(double alpha, int n_max) {
    if (n_max < 1) throw InvalidDimension("displacement: n_max must be >= 1");
    if (alpha * alpha > n_max / 4.0) {
        spdlog::warn("displacement: alpha^2 = {:.4g} exceeds n_max/4 = {:.4g}; truncation error likely",
                     alpha * alpha, n_max / 4.0);
    }
    if (alpha == 0.0) return OperatorMatrix::identity(n_max + 1);
    // i (a^dag - a) is Hermitian (purely imaginary entries); D = exp(-i alpha K).
    const auto ops = boson_operators(n_max);
    const CMatrix generator = Complex(0.0, 1.0) * (ops.adag.entries() - ops.a.entries());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(generator);
    const CVector phases = (Complex(0.0, -alpha) * es.eigenvalues().cast<Complex>()).array().exp();
    CMatrix d = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    // D(alpha) is real for real alpha; drop round-off in the imaginary part.
    d = d.real().cast<Complex>();
    return OperatorMatrix(std::move(d));
}

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
    const Index na = a.dim();
    const Index nb = b.dim();
    CMatrix out(na * nb, na * nb);
    for (Index i = 0; i < na; ++i)
        for (Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.entries();
    return OperatorMatrix(std::move(out), a.hermitian_hint() && b.hermitian_hint());
}

OperatorMatrix kron(std::span<const OperatorMatrix> ops) {
    if (ops.empty()) throw InvalidArgument("kron: need at least one operand");
    OperatorMatrix acc = ops[0];
    for (std::size_t k = 1; k < ops.size(); ++k) acc = kron(acc, ops[k]);
    return acc;
}

OperatorMatrix kron(std::initializer_list<OperatorMatrix> ops) {
    return kron(std::span<const OperatorMatrix>(ops.begin(), ops.size()));
}

EigenDecomposition eigh(const OperatorMatrix& m) {
    const double defect = m.hermiticity_defect();
    if (defect > kEighHermitianTolerance) {
        throw ContractViolation("eigh: matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    EigenDecomposition out;
    if (m.is_real()) {
        const RMatrix re = m.real_part();
        Eigen::SelfAdjointEigenSolver<RMatrix> es(re);
        if (es.info() != Eigen::Success) throw Error("eigh: real symmetric eigensolver failed");
        out.values = es.eigenvalues();
        out.vectors = es.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m.entries());
        if (es.info() != Eigen::Success) throw Error("eigh: Hermitian eigensolver failed");
        out.values = es.eigenvalues();
        out.vectors = es.eigenvectors();
    }
    fix_phase(out.vectors);
    return out;
}

// ---------------------------------------------------------------- partial operations

DensityMatrix partial_trace(const DensityMatrix& rho, const Layout& layout, std::span<const Index> keep) {
    if (layout_product(layout) != rho.dim()) throw InvalidDimension("partial_trace: layout does not match dimension");
    const auto mask = kept_mask(layout, keep);
    const Split s = split_indices(layout, mask);

    // Group flat indices by their traced-subsystem index.
    std::vector<std::vector<Index>> groups(static_cast<std::size_t>(s.traced_dim));
    for (Index flat = 0; flat < rho.dim(); ++flat) groups[static_cast<std::size_t>(s.traced[flat])].push_back(flat);

    CMatrix out = CMatrix::Zero(s.kept_dim, s.kept_dim);
    for (const auto& g : groups)
        for (Index r : g)
            for (Index c : g) out(s.kept[r], s.kept[c]) += rho(r, c);
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(std::move(out), DensityMatrix::Unchecked{});
}

DensityMatrix partial_trace(const DensityMatrix& rho, const Layout& layout, std::initializer_list<Index> keep) {
    return partial_trace(rho, layout, std::span<const Index>(keep.begin(), keep.size()));
}

DensityMatrix reduced_state(const StateVector& psi, std::span<const Index> keep) {
    const Layout& layout = psi.layout();
    const auto mask = kept_mask(layout, keep);
    const Split s = split_indices(layout, mask);
    CMatrix amp(s.kept_dim, s.traced_dim);
    for (Index flat = 0; flat < psi.dim(); ++flat) amp(s.kept[flat], s.traced[flat]) = psi[flat];
    CMatrix out = amp * amp.adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(std::move(out), DensityMatrix::Unchecked{});
}

DensityMatrix reduced_state(const StateVector& psi, std::initializer_list<Index> keep) {
    return reduced_state(psi, std::span<const Index>(keep.begin(), keep.size()));
}

OperatorMatrix partial_transpose(const OperatorMatrix& m, const Layout& layout, Index which) {
    if (layout_product(layout) != m.dim()) throw InvalidDimension("partial_transpose: layout does not match dimension");
    if (which < 0 || which >= static_cast<Index>(layout.size())) {
        throw InvalidArgument("partial_transpose: factor index out of range");
    }
    const auto strides = strides_of(layout);
    const Index stride = strides[static_cast<std::size_t>(which)];
    const Index fdim = layout[static_cast<std::size_t>(which)];
    const Index dim = m.dim();
    CMatrix out(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        const Index rd = (r / stride) % fdim;
        for (Index c = 0; c < dim; ++c) {
            const Index cd = (c / stride) % fdim;
            // swap the `which` digit between row and column
            out(r + (cd - rd) * stride, c + (rd - cd) * stride) = m(r, c);
        }
    }
    return OperatorMatrix(std::move(out), m.hermitian_hint());
}

OperatorMatrix partial_transpose(const DensityMatrix& rho, const Layout& layout, Index which) {
    return partial_transpose(rho.as_operator(), layout, which);
}

double fidelity(const StateVector& phi, const StateVector& psi) {
    if (phi.dim() != psi.dim()) throw InvalidArgument("fidelity: dimension mismatch");
    return std::min(1.0, std::abs(phi.inner(psi)));
}

double expectation(const OperatorMatrix& op, const StateVector& psi) {
    if (op.dim() != psi.dim()) throw InvalidDimension("expectation: dimension mismatch");
    return psi.amplitudes().dot(op.entries() * psi.amplitudes()).real();
}

}  // namespace qrabi
