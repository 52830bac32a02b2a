#pragma once

#include "qrabi/model.hpp"

#include <vector>

namespace qrabi {

// Dispersive (Schrieffer-Wolff) parameters of the weak-coupling expansion.
struct DispersiveParams {
    double eps1 = 0.0;
    double eps2 = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double g_eff = 0.0;
    double Omega1_t = 0.0;   // renormalised splittings
    double Omega2_t = 0.0;
};

// Throws ResonanceError when |omega - Omega_i| < 1e-6 omega.
DispersiveParams dispersive_params(const ModelParams& p);

// Four levels of the dispersive qubit-qubit model, ascending.
std::vector<double> energies_qubit(const ModelParams& p);

// E_0..E_5 in the order (E0, E1, ..., E5); the +/- pair is (E_{2k}, E_{2k+1}).
std::vector<double> energies_qutrit(const ModelParams& p);

enum class QuquartVariant {
    AsPrinted,        // E_{0,1} shift +-2(Om1~ - 3 Om2~)
    HalfCoefficient,  // E_{0,1} shift +-(Om1~ - 3 Om2~)/2, the correct zero-coupling limit
};

std::vector<double> energies_ququart(const ModelParams& p, QuquartVariant variant = QuquartVariant::AsPrinted);

// Dispatches on p.d (2, 3, 4); throws UnsupportedRegime otherwise. Unsorted
// except for d=2.
std::vector<double> weak_energies(const ModelParams& p, QuquartVariant variant = QuquartVariant::AsPrinted);

// For every analytic value the nearest exact value (exact must be ascending).
// Each exact level is used at most once, assigning greedily in order of
// increasing distance.
struct LevelMatch {
    double analytic = 0.0;
    double exact = 0.0;
    Index exact_index = 0;
    double error() const { return analytic - exact; }
};

std::vector<LevelMatch> match_levels(const std::vector<double>& analytic, const RVector& exact);

}  // namespace qrabi
