#pragma once

// Strong-coupling (adiabatic / displaced-oscillator) description.
//
// Without the free atomic terms the Hamiltonian is diagonal in the product
// basis |sigma> (x) |m> (x) D(-disp)|N>, where sigma = +-1 labels the sigma_x
// eigenstates, m the eigenstates of J+ + J- (eigenvalue -(d-1) + 2m) and
// disp = (sigma g1 + lambda_m g2) / omega. The free terms are then restored
// perturbatively.

#include "qrabi/model.hpp"

#include <vector>

namespace qrabi {

struct DisplacedLevel {
    int sigma = 1;        // +1 = up (sigma_x = +1), -1 = down
    int m_index = 0;      // 0..d-1, eigenvalue lambda = -(d-1) + 2m
    int N = 0;
    double displacement = 0.0;
    double energy = 0.0;
};

inline int coupling_eigenvalue(int d, int m) { return -(d - 1) + 2 * m; }

DisplacedLevel make_level(const ModelParams& p, int sigma, int m_index, int N);

// All 2 d (n_max+1) levels, ascending in energy (ties broken by sigma
// descending, then m, then N).
std::vector<DisplacedLevel> displaced_spectrum(const ModelParams& p);

// Columns: up = (1,1)/sqrt2, down = (1,-1)/sqrt2.
CMatrix sigma_x_eigenvectors();

// Eigenvectors of J+ + J- (columns ordered by m, ascending eigenvalue), phase
// convention of eigh().
EigenDecomposition coupling_eigenvectors(int d);

// Qubit-qudit basis of the adiabatic states: sigma in {up, down} (outer) and
// qudit eigenstates by descending eigenvalue (inner). Column 0 is |up,+> and
// the last column is |down,->.
CMatrix adiabatic_basis(int d);

// <N | D(beta) | M> for real beta, closed form via associated Laguerre polynomials.
double displaced_fock_overlap(int N, int M, double beta);

StateVector build_displaced_state(const DisplacedLevel& level, const ModelParams& p);

struct PerturbationResult {
    double E0 = 0.0;
    double E_plus = 0.0;
    double E_minus = 0.0;
    double M00 = 0.0;
    double M01 = 0.0;
    int splitting_order = 2;
    bool closed_form = true;
};

// Second-order degenerate perturbation theory in the free atomic terms. For
// d <= 4 uses the closed forms; for d > 4, the numeric M matrix.
// Throws SingularDenominator when g1 == 0 or g2 == 0.
PerturbationResult perturbative_energies(const ModelParams& p);

// Numeric second-order M over intermediate displaced levels with N <= photon_cutoff.
struct SecondOrderM {
    double M00 = 0.0;
    double M11 = 0.0;
    double M01 = 0.0;
};
SecondOrderM numeric_second_order_M(const ModelParams& p, int photon_cutoff = 0);

struct GapSample {
    double Omega2 = 0.0;
    double gap = 0.0;
};

// Exact splitting between the lowest even and odd parity levels for each Omega2.
std::vector<GapSample> ground_splitting_scaling(const ModelParams& p, const std::vector<double>& omega2_samples);

// Least-squares slope of log(gap) against log(Omega2).
double loglog_slope(const std::vector<GapSample>& samples);

// alpha = (g1 + (d-1) g2) / omega
double ghz_displacement(const ModelParams& p);

// Oscillator overlap <0_{up,+}|0_{down,-}> = exp(-2 alpha^2).
double ghz_branch_overlap(const ModelParams& p);

// (|up,+,0_{up,+}> + sign |down,-,0_{down,->) normalised.
StateVector ghz_state(const ModelParams& p, int sign);

// Parity (+1/-1) of ghz_state(p, sign).
int ghz_parity(const ModelParams& p, int sign);

// GHZ state in the requested parity sector.
StateVector ghz_state_with_parity(const ModelParams& p, int parity);

struct Admixture {
    DisplacedLevel level;
    double coefficient = 0.0;
};

struct FirstOrderState {
    StateVector state;
    std::vector<Admixture> admixtures;
};

// GHZ pair plus first-order admixtures of every non-degenerate displaced level
// with N <= photon_cutoff, renormalised.
FirstOrderState psi_pm_firstorder(const ModelParams& p, int sign, int photon_cutoff = 6);

}  // namespace qrabi
