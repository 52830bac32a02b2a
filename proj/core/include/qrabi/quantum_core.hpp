#pragma once

// Dense complex operator algebra on small tensor-product Hilbert spaces.
//
// Everything in qrabi is built on three value types: OperatorMatrix (a square
// complex matrix with an optional Hermitian flag), StateVector (a normalised
// ket with its tensor-factor layout) and DensityMatrix (a validated mixed
// state). Flattening of tensor products is row-major over factors: for a layout
// (d0, d1, d2) the basis index of (i0, i1, i2) is (i0 * d1 + i1) * d2 + i2.

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace qrabi {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Ordered tensor-factor dimensions.
using Layout = std::vector<Index>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kEighHermitianTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-10;

class OperatorMatrix {
public:
    OperatorMatrix() = default;

    // Throws InvalidDimension for non-square or empty input and
    // ContractViolation when hermitian_hint is set but the entries are not
    // Hermitian within kHermitianTolerance.
    explicit OperatorMatrix(CMatrix entries, bool hermitian_hint = false);

    static OperatorMatrix identity(Index dim);
    static OperatorMatrix zero(Index dim);
    static OperatorMatrix diagonal(const RVector& diag);
    static OperatorMatrix from_real(const RMatrix& entries, bool hermitian_hint = false);

    Index dim() const noexcept { return entries_.rows(); }
    const CMatrix& entries() const noexcept { return entries_; }
    bool hermitian_hint() const noexcept { return hermitian_; }
    Complex operator()(Index row, Index col) const { return entries_(row, col); }

    // max |M_ij - conj(M_ji)|
    double hermiticity_defect() const;
    bool is_hermitian(double tol = kHermitianTolerance) const { return hermiticity_defect() <= tol; }
    bool is_real() const;
    RMatrix real_part() const { return entries_.real(); }

    double max_abs() const;
    Complex trace() const { return entries_.trace(); }

    OperatorMatrix adjoint() const;
    OperatorMatrix transpose() const;

    CVector apply(const CVector& v) const;

    friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
    friend OperatorMatrix operator*(double s, const OperatorMatrix& a);
    friend OperatorMatrix operator*(Complex s, const OperatorMatrix& a);

private:
    struct Unchecked {};
    OperatorMatrix(CMatrix entries, bool hermitian_hint, Unchecked) noexcept;

    CMatrix entries_;
    bool hermitian_ = false;
};

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

class StateVector {
public:
    StateVector() = default;

    // Validates that the product of layout equals the amplitude count and that
    // the Euclidean norm is 1 within kNormTolerance.
    StateVector(CVector amplitudes, Layout layout);

    // Normalises the amplitudes first; throws InvalidArgument on a zero vector.
    static StateVector normalized(CVector amplitudes, Layout layout);
    static StateVector basis(Layout layout, Index index);
    static StateVector basis(Layout layout, std::span<const Index> multi_index);
    // Tensor product of normalised factor kets.
    static StateVector product(std::span<const CVector> factors);

    Index dim() const noexcept { return amplitudes_.size(); }
    const CVector& amplitudes() const noexcept { return amplitudes_; }
    const Layout& layout() const noexcept { return layout_; }
    Complex operator[](Index i) const { return amplitudes_(i); }

    double norm() const { return amplitudes_.norm(); }
    // <this|other>
    Complex inner(const StateVector& other) const;

private:
    CVector amplitudes_;
    Layout layout_;
};

class DensityMatrix {
public:
    DensityMatrix() = default;

    // Checks Hermiticity (1e-12), unit trace (1e-10) and eigenvalues >= -1e-10.
    explicit DensityMatrix(CMatrix entries);

    static DensityMatrix from_pure(const StateVector& psi);

    Index dim() const noexcept { return entries_.rows(); }
    const CMatrix& entries() const noexcept { return entries_; }
    Complex operator()(Index row, Index col) const { return entries_(row, col); }
    OperatorMatrix as_operator() const { return OperatorMatrix(entries_, true); }

private:
    friend DensityMatrix partial_trace(const DensityMatrix&, const Layout&, std::span<const Index>);
    friend DensityMatrix reduced_state(const StateVector&, std::span<const Index>);
    struct Unchecked {};
    DensityMatrix(CMatrix entries, Unchecked) noexcept : entries_(std::move(entries)) {}

    CMatrix entries_;
};

enum class Axis { x, y, z };

// Pauli matrix in the basis |g> = (1,0), |e> = (0,1) with sigma_z|g> = +|g>.
OperatorMatrix pauli(Axis which);

struct SpinOperators {
    OperatorMatrix Jz;
    OperatorMatrix Jplus;
    OperatorMatrix Jminus;
};

// Spin j = (d-1)/2 operators in the number basis |0..d-1>, Jz = diag(-j, ..., j).
SpinOperators spin_operators(int d);

// Truncated harmonic ladder on |0..d-1>: lowering b with b|k> = sqrt(k)|k-1>.
// Returned in the same shape as SpinOperators (Jz slot holds b^dag b).
SpinOperators ladder_operators(int d);

struct BosonOperators {
    OperatorMatrix a;
    OperatorMatrix adag;
    OperatorMatrix n;
};

// (n_max+1)-dimensional truncated oscillator.
BosonOperators boson_operators(int n_max);

// exp[alpha (a^dag - a)] on the truncated Fock space. Logs a warning when
// alpha^2 > n_max / 4 since truncation error then becomes visible.
OperatorMatrix displacement(double alpha, int n_max);

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix kron(std::span<const OperatorMatrix> ops);
OperatorMatrix kron(std::initializer_list<OperatorMatrix> ops);

struct EigenDecomposition {
    RVector values;    // ascending
    CMatrix vectors;   // columns, phase fixed
};

// Hermitian eigensolver. The first component of each eigenvector with
// magnitude > 1e-8 is made real positive. Throws ContractViolation if the
// input deviates from Hermitian by more than 1e-10.
EigenDecomposition eigh(const OperatorMatrix& m);

// Reduced density matrix over the factors listed in `keep` (factor order of
// the layout is preserved regardless of the order in `keep`).
DensityMatrix partial_trace(const DensityMatrix& rho, const Layout& layout,
                            std::span<const Index> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const Layout& layout,
                            std::initializer_list<Index> keep);

// Pure-state shortcut for partial_trace(from_pure(psi), psi.layout(), keep).
DensityMatrix reduced_state(const StateVector& psi, std::span<const Index> keep);
DensityMatrix reduced_state(const StateVector& psi, std::initializer_list<Index> keep);

// Transpose of tensor factor `which` only.
OperatorMatrix partial_transpose(const OperatorMatrix& m, const Layout& layout, Index which);
OperatorMatrix partial_transpose(const DensityMatrix& rho, const Layout& layout, Index which);

// |<phi|psi>| (not squared).
double fidelity(const StateVector& phi, const StateVector& psi);

// Re <psi|op|psi>
double expectation(const OperatorMatrix& op, const StateVector& psi);

}  // namespace qrabi
