#include "qrabi/weak_coupling.hpp"

#include "qrabi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

namespace qrabi {

DispersiveParams dispersive_params(const ModelParams& p) {
    p.validate();
    const double tol = 1e-6 * p.omega;
    if (std::abs(p.omega - p.Omega1) < tol) throw ResonanceError("Omega1 is resonant with omega");
    if (std::abs(p.omega - p.Omega2) < tol) throw ResonanceError("Omega2 is resonant with omega");

    DispersiveParams dp;
    dp.eps1 = p.g1 / (p.omega - p.Omega1);
    dp.eps2 = p.g2 / (p.omega - p.Omega2);
    dp.xi1 = p.g1 / (p.omega + p.Omega1);
    dp.xi2 = p.g2 / (p.omega + p.Omega2);
    dp.Omega1_t = p.Omega1 - p.g1 * (dp.eps1 - dp.xi1);
    dp.Omega2_t = p.Omega2 - p.g2 * (dp.eps2 - dp.xi2);
    dp.g_eff = 0.5 * (p.g1 * (dp.eps2 + dp.xi2) + p.g2 * (dp.eps1 + dp.xi1));
    return dp;
}

std::vector<double> energies_qubit(const ModelParams& p) {
    if (p.d != 2) throw InvalidParams("energies_qubit requires d = 2");
    const auto dp = dispersive_params(p);
    const double shift = -0.5 * (p.g1 * (dp.eps1 + dp.xi1) + p.g2 * (dp.eps2 + dp.xi2));
    const double g2e = dp.g_eff * dp.g_eff;
    const double sum = 0.5 * (dp.Omega1_t + dp.Omega2_t);
    const double diff = 0.5 * (dp.Omega1_t - dp.Omega2_t);
    const double rs = std::sqrt(sum * sum + g2e);
    const double rd = std::sqrt(diff * diff + g2e);
    std::vector<double> e{shift - rs, shift - rd, shift + rd, shift + rs};
    std::sort(e.begin(), e.end());
    return e;
}

std::vector<double> energies_qutrit(const ModelParams& p) {
    if (p.d != 3) throw InvalidParams("energies_qutrit requires d = 3");
    const auto dp = dispersive_params(p);
    const double s1 = p.g1 * (dp.eps1 + dp.xi1);
    const double s2 = p.g2 * (dp.eps2 + dp.xi2);
    const double O1 = dp.Omega1_t;
    const double O2 = dp.Omega2_t;
    const double g2e8 = 8.0 * dp.g_eff * dp.g_eff;

    const double b01 = -0.5 * s1 - s2;
    const double d01 = 0.5 * O1 - O2;
    const double b23 = -0.5 * s1 - 1.5 * s2 - 0.5 * O2;
    const double r23 = 0.5 * std::sqrt(std::pow(O1 + O2 + s2, 2) + g2e8);
    const double b45 = -0.5 * s1 - 1.5 * s2 + 0.5 * O2;
    const double r45 = 0.5 * std::sqrt(std::pow(O1 + O2 - s2, 2) + g2e8);
    return {b01 + d01, b01 - d01, b23 + r23, b23 - r23, b45 + r45, b45 - r45};
}

std::vector<double> energies_ququart(const ModelParams& p, QuquartVariant variant) {
    if (p.d != 4) throw InvalidParams("energies_ququart requires d = 4");
    const auto dp = dispersive_params(p);
    const double s1 = p.g1 * (dp.eps1 + dp.xi1);
    const double s2 = p.g2 * (dp.eps2 + dp.xi2);
    const double O1 = dp.Omega1_t;
    const double O2 = dp.Omega2_t;
    const double ge2 = dp.g_eff * dp.g_eff;

    const double b01 = -0.5 * s1 - 1.5 * s2;
    const double d01 = variant == QuquartVariant::AsPrinted ? 2.0 * (O1 - 3.0 * O2) : 0.5 * (O1 - 3.0 * O2);
    const double b23 = -0.5 * s1 - 3.5 * s2;
    const double r23 = 0.5 * std::sqrt(std::pow(O1 + O2, 2) + 16.0 * ge2);
    const double b45 = -0.5 * s1 - 2.5 * s2 - O2;
    const double r45 = 0.5 * std::sqrt(std::pow(O1 + O2 - 2.0 * s2, 2) + 12.0 * ge2);
    const double b67 = -0.5 * s1 - 2.5 * s2 + O2;
    const double r67 = 0.5 * std::sqrt(std::pow(O1 + O2 + 2.0 * s2, 2) + 12.0 * ge2);
    return {b01 + d01, b01 - d01, b23 + r23, b23 - r23, b45 + r45, b45 - r45, b67 + r67, b67 - r67};
}

std::vector<double> weak_energies(const ModelParams& p, QuquartVariant variant) {
    switch (p.d) {
        case 2: return energies_qubit(p);
        case 3: return energies_qutrit(p);
        case 4: return energies_ququart(p, variant);
        default: throw UnsupportedRegime("weak-coupling closed forms exist for d = 2, 3, 4 only");
    }
}

std::vector<LevelMatch> match_levels(const std::vector<double>& analytic, const RVector& exact) {
    if (static_cast<Index>(analytic.size()) > exact.size()) {
        throw InvalidArgument("match_levels: more analytic levels than exact levels");
    }
    // all (distance, analytic index, exact index) triples, assigned greedily
    std::vector<std::tuple<double, std::size_t, Index>> pairs;
    pairs.reserve(analytic.size() * static_cast<std::size_t>(exact.size()));
    for (std::size_t i = 0; i < analytic.size(); ++i)
        for (Index j = 0; j < exact.size(); ++j) pairs.emplace_back(std::abs(analytic[i] - exact(j)), i, j);
    std::sort(pairs.begin(), pairs.end());

    std::vector<LevelMatch> out(analytic.size());
    std::vector<bool> a_done(analytic.size(), false);
    std::vector<bool> e_used(static_cast<std::size_t>(exact.size()), false);
    std::size_t assigned = 0;
    for (const auto& [dist, i, j] : pairs) {
        if (a_done[i] || e_used[static_cast<std::size_t>(j)]) continue;
        a_done[i] = true;
        e_used[static_cast<std::size_t>(j)] = true;
        out[i] = {analytic[i], exact(j), j};
        if (++assigned == analytic.size()) break;
    }
    return out;
}

}  // namespace qrabi
