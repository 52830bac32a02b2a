#pragma once

#include "qrabi/model.hpp"

#include <vector>

namespace qrabi {

// (||rho^{T_B}||_1 - 1) / 2 over a bipartite layout (dA, dB), as the sum of
// |negative eigenvalues| of the partial transpose. Negative round-off is
// clamped to 0.
double negativity(const DensityMatrix& rho, const Layout& layout);

// Pure bipartite state given as a dA x dB amplitude matrix:
// [(sum_i s_i)^2 - 1] / 2 with s_i the Schmidt coefficients.
double schmidt_negativity(const CMatrix& amplitudes);

// Qubit-qudit reduced state of the ground state (oscillator traced out).
DensityMatrix ground_reduced_state(const ModelParams& p);

// Negativity of the qubit-qudit reduced ground state. Truncation is raised to
// the adequacy rule first; under strong-coupling near-degeneracy the
// even-parity ground state is used.
double ground_negativity(const ModelParams& p);

// (1/2) exp(-2 [g1 + (d-1) g2]^2 / omega^2)
double analytic_negativity(const ModelParams& p);

struct NegativityGrid {
    std::vector<double> g1_axis;
    std::vector<double> g2_axis;
    RMatrix values;          // values(i, j) at (g1_axis[i], g2_axis[j])
    ModelParams params;      // template (g1, g2 ignored)

    struct Peak {
        double g1 = 0.0;
        double g2 = 0.0;
        double value = 0.0;
    };
    // First maximum in row-major scan order.
    Peak argmax() const;
};

// threads <= 0 picks std::thread::hardware_concurrency(). The result does not
// depend on the thread count.
NegativityGrid negativity_map(const ModelParams& tmpl, const std::vector<double>& g1_axis,
                              const std::vector<double>& g2_axis, int threads = 0);

// rho expressed in adiabatic_basis(d) (see strong_coupling.hpp).
CMatrix to_adiabatic_basis(const DensityMatrix& rho, int d);

}  // namespace qrabi
