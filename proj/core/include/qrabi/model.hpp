#pragma once

#include "qrabi/quantum_core.hpp"

#include <string>
#include <vector>

namespace qrabi {

// Which operator set plays the role of the qudit in the coupling.
//   Spin   - spin-(d-1)/2 operators, Jz and J+ + J-  (default)
//   Ladder - truncated harmonic ladder b^dag b and b + b^dag
enum class QuditOperators { Spin, Ladder };

const char* to_string(QuditOperators q);
QuditOperators qudit_operators_from_string(const std::string& s);

// Couplings and frequencies are in the same units as omega. All analysis code
// works with omega = 1; ModelParams::in_omega_units() performs the rescaling.
struct ModelParams {
    int d = 2;
    double omega = 1.0;
    double Omega1 = 0.0;
    double Omega2 = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    int n_max = 10;
    QuditOperators qudit = QuditOperators::Spin;

    // Throws InvalidParams on structural violations (d < 2, omega <= 0,
    // negative or non-finite parameters, n_max < 1). Truncation adequacy is
    // not enforced here; see check_truncation().
    void validate() const;

    Layout layout() const { return {2, d, n_max + 1}; }
    Index dim() const { return static_cast<Index>(2) * d * (n_max + 1); }

    // ceil(8 x^2) + 10 with x = (g1 + (d-1) g2) / omega
    static int required_n_max(int d, double g1, double g2, double omega = 1.0);
    int required_n_max() const { return required_n_max(d, g1, g2, omega); }

    ModelParams with_n_max(int n) const;
    // Raises n_max to the truncation rule if it is below it.
    ModelParams with_adequate_truncation() const;
    ModelParams with_couplings(double g1_, double g2_) const;
    ModelParams with_frequencies(double Omega1_, double Omega2_) const;
    ModelParams in_omega_units() const;

    bool operator==(const ModelParams&) const = default;
};

struct TruncationReport {
    int n_max = 0;
    int required = 0;
    bool adequate = true;
};

TruncationReport check_truncation(const ModelParams& p);
// Logs a warning through spdlog when truncation is inadequate. Returns the report.
TruncationReport warn_truncation(const ModelParams& p, const char* where);

// Real matrices of the individual terms, so H(t) for arbitrary parameters is a
// cheap linear combination:
//   H = omega*number - Omega1/2*sigma_z + Omega2*qudit_z + g1*coupling1 + g2*coupling2
struct HamiltonianTerms {
    RMatrix number;
    RMatrix sigma_z;
    RMatrix qudit_z;
    RMatrix coupling1;
    RMatrix coupling2;

    RMatrix combine(double omega, double Omega1, double Omega2, double g1, double g2) const;
    RMatrix combine(const ModelParams& p) const;
};

HamiltonianTerms hamiltonian_terms(int d, int n_max, QuditOperators qudit = QuditOperators::Spin);

OperatorMatrix build_full_hamiltonian(const ModelParams& p);
OperatorMatrix build_uncoupled(const ModelParams& p);
OperatorMatrix build_reduced(const ModelParams& p);
OperatorMatrix build_parity(const ModelParams& p);

// Diagonal of the parity operator (entries +-1).
RVector parity_diagonal(const ModelParams& p);

struct ParitySectors {
    std::vector<Index> even;   // parity +1
    std::vector<Index> odd;    // parity -1
    const std::vector<Index>& of(int parity) const { return parity > 0 ? even : odd; }
};

ParitySectors parity_sectors(const ModelParams& p);

enum class Provenance { Exact, WeakAnalytic, StrongAnalytic };
const char* to_string(Provenance p);

struct SpectrumResult {
    RVector values;            // ascending
    CMatrix vectors;           // columns; empty for analytic spectra
    std::vector<int> parity;   // parity of each eigenvector (exact only)
    Provenance provenance = Provenance::Exact;
};

// Full exact spectrum. The Hamiltonian is block diagonal in parity, so each
// sector is diagonalised separately and the results are merged. Eigenvector
// phase convention as in eigh().
SpectrumResult exact_spectrum(const ModelParams& p);

// Only the eigenvalues, ascending.
RVector exact_energies(const ModelParams& p);

struct SectorGround {
    double energy = 0.0;
    RVector vector;   // full-space real eigenvector
};

SectorGround sector_ground(const ModelParams& p, int parity);

struct SectorEnergies {
    double even = 0.0;
    double odd = 0.0;
    double gap() const { return even > odd ? even - odd : odd - even; }
};

// Lowest eigenvalue in each parity sector (eigenvalues only).
SectorEnergies lowest_sector_energies(const ModelParams& p);

struct GroundState {
    double energy = 0.0;
    StateVector state;
    int parity = +1;
    // Energy of the lowest state in the other parity sector minus `energy`.
    double sector_gap = 0.0;
};

// Lowest eigenstate. Under near-degeneracy (sector ground energies within
// 1e-10) the even-parity state is returned.
GroundState ground_state(const ModelParams& p);

}  // namespace qrabi
