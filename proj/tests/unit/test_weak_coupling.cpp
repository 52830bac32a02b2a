#include "support/oracles.hpp"

#include <qrabi/errors.hpp>
#include <qrabi/model.hpp>
#include <qrabi/weak_coupling.hpp>

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace qrabi;
using Catch::Matchers::WithinAbs;

namespace {

ModelParams params(int d, double O1, double O2, double g1, double g2, int n_max = 30) {
    ModelParams p;
    p.d = d;
    p.Omega1 = O1;
    p.Omega2 = O2;
    p.g1 = g1;
    p.g2 = g2;
    p.n_max = n_max;
    return p;
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

double max_level_error(const std::vector<double>& analytic, const RVector& exact) {
    double worst = 0.0;
    for (const auto& m : match_levels(analytic, exact)) worst = std::max(worst, std::abs(m.error()));
    return worst;
}

}  // namespace

TEST_CASE("dispersive parameters", "[weak_coupling]") {
    const DispersiveParams z = dispersive_params(params(2, 0.15, 0.1, 0, 0));
    CHECK(z.eps1 == 0.0);
    CHECK(z.xi2 == 0.0);
    CHECK(z.g_eff == 0.0);
    CHECK(z.Omega1_t == 0.15);
    CHECK(z.Omega2_t == 0.1);

    const DispersiveParams deg = dispersive_params(params(3, 0, 0, 0.1, 0.2));
    CHECK_THAT(deg.eps1, WithinAbs(0.1, 1e-15));
    CHECK_THAT(deg.xi1, WithinAbs(0.1, 1e-15));
    CHECK_THAT(deg.eps2, WithinAbs(0.2, 1e-15));

    const ModelParams p = params(2, 0.15, 0.1, 0.05, 0.05);
    const DispersiveParams d = dispersive_params(p);
    CHECK_THAT(d.eps1, WithinAbs(0.05 / 0.85, 1e-14));
    CHECK_THAT(d.xi2, WithinAbs(0.05 / 1.1, 1e-14));
    CHECK_THAT(d.g_eff, WithinAbs(0.5 * (0.05 * (d.eps2 + d.xi2) + 0.05 * (d.eps1 + d.xi1)), 1e-14));
    CHECK_THAT(d.Omega1_t, WithinAbs(0.15 - 0.05 * (d.eps1 - d.xi1), 1e-14));

    CHECK_THROWS_AS(dispersive_params(params(2, 1.0, 0.1, 0.05, 0.05)), ResonanceError);
    CHECK_THROWS_AS(energies_qubit(params(2, 0.1, 1.0 + 1e-8, 0.05, 0.05)), ResonanceError);
}

TEST_CASE("qubit energies", "[weak_coupling]") {
    SECTION("zero coupling") {
        const auto e = energies_qubit(params(2, 0.15, 0.1, 0, 0));
        const std::vector<double> ref{-0.125, -0.025, 0.025, 0.125};
        for (int i = 0; i < 4; ++i) CHECK_THAT(e[i], WithinAbs(ref[i], 1e-15));
    }
    SECTION("ground energy against exact") {
        const ModelParams p = params(2, 0.15, 0.1, 0.02, 0.02);
        CHECK_THAT(energies_qubit(p)[0], WithinAbs(exact_energies(p)(0), 5e-4));
    }
    SECTION("equal splittings: middle pair split by g_eff") {
        const ModelParams p = params(2, 0.1, 0.1, 0.03, 0.03);
        const auto d = dispersive_params(p);
        const double shift = 0.5 * (p.g1 * (d.eps1 + d.xi1) + p.g2 * (d.eps2 + d.xi2));
        const auto e = energies_qubit(p);
        CHECK_THAT(e[1], WithinAbs(-d.g_eff - shift, 1e-15));
        CHECK_THAT(e[2], WithinAbs(d.g_eff - shift, 1e-15));
    }
    SECTION("common shift leaves +- pairs") {
        const ModelParams p = params(2, 0.15, 0.1, 0.04, 0.03);
        const auto d = dispersive_params(p);
        const double shift = 0.5 * (p.g1 * (d.eps1 + d.xi1) + p.g2 * (d.eps2 + d.xi2));
        const auto e = energies_qubit(p);
        CHECK(e[0] + shift == -(e[3] + shift));
        CHECK(e[1] + shift == -(e[2] + shift));
    }
    SECTION("quadratic convergence") {
        double prev = 0.0;
        for (double g : {0.04, 0.02, 0.01}) {
            const ModelParams p = params(2, 0.15, 0.1, g, g);
            const double err = max_level_error(energies_qubit(p), exact_energies(p).head(4));
            if (prev > 0.0) CHECK(prev / err >= 3.5);
            prev = err;
        }
    }
}

TEST_CASE("qutrit energies", "[weak_coupling]") {
    SECTION("zero coupling") {
        const double O1 = 0.15, O2 = 0.1;
        const auto e = energies_qutrit(params(3, O1, O2, 0, 0));
        CHECK_THAT(e[0], WithinAbs(O1 / 2 - O2, 1e-15));
        CHECK_THAT(e[1], WithinAbs(-(O1 / 2 - O2), 1e-15));
        CHECK_THAT(e[2], WithinAbs(-O2 / 2 + (O1 + O2) / 2, 1e-15));
        CHECK_THAT(e[3], WithinAbs(-O2 / 2 - (O1 + O2) / 2, 1e-15));
        CHECK_THAT(e[4], WithinAbs(O2 / 2 + (O1 + O2) / 2, 1e-15));
        CHECK_THAT(e[5], WithinAbs(O2 / 2 - (O1 + O2) / 2, 1e-15));
        // the zero-coupling set is the uncoupled spectrum
        const RVector ex = exact_energies(params(3, O1, O2, 0, 0, 3)).head(6);
        const auto s = sorted(e);
        for (int i = 0; i < 6; ++i) CHECK_THAT(s[i], WithinAbs(ex(i), 1e-14));
    }
    SECTION("ground against exact") {
        const ModelParams p = params(3, 0.15, 0.1, 0.015, 0.015);
        CHECK_THAT(sorted(energies_qutrit(p))[0], WithinAbs(exact_energies(p)(0), 2e-3));
    }
    SECTION("deterministic") {
        const ModelParams p = params(3, 0.15, 0.1, 0.03, 0.02);
        CHECK(energies_qutrit(p) == energies_qutrit(p));
    }
}

TEST_CASE("ququart energies", "[weak_coupling]") {
    const double O1 = 0.15, O2 = 0.1;
    SECTION("zero coupling") {
        const auto e = energies_ququart(params(4, O1, O2, 0, 0));
        REQUIRE(e.size() == 8);
        CHECK_THAT(std::max(e[2], e[3]), WithinAbs((O1 + O2) / 2, 1e-15));
        CHECK_THAT(std::min(e[2], e[3]), WithinAbs(-(O1 + O2) / 2, 1e-15));
        CHECK_THAT(std::max(e[4], e[5]), WithinAbs(-O2 + (O1 + O2) / 2, 1e-15));
        CHECK_THAT(std::min(e[4], e[5]), WithinAbs(-O2 - (O1 + O2) / 2, 1e-15));
    }
    SECTION("as printed vs half coefficient at zero coupling") {
        const RVector ex = exact_energies(params(4, O1, O2, 0, 0, 3)).head(8);
        const auto half = sorted(energies_ququart(params(4, O1, O2, 0, 0), QuquartVariant::HalfCoefficient));
        for (int i = 0; i < 8; ++i) CHECK_THAT(half[i], WithinAbs(ex(i), 1e-14));
        const auto printed = energies_ququart(params(4, O1, O2, 0, 0), QuquartVariant::AsPrinted);
        CHECK(std::abs(std::max(printed[0], printed[1]) - 2.0 * std::abs(O1 - 3 * O2)) < 1e-15);
    }
    SECTION("inner six levels against exact") {
        const ModelParams p = params(4, O1, O2, 0.01, 0.01);
        const auto e = energies_ququart(p);
        const std::vector<double> inner(e.begin() + 2, e.end());
        const RVector ex = exact_energies(p);
        CHECK(max_level_error(inner, ex.head(8)) <= 3e-3);
    }
}

TEST_CASE("weak energies dispatch and finiteness", "[weak_coupling][property]") {
    CHECK(weak_energies(params(2, 0.15, 0.1, 0.02, 0.02)).size() == 4);
    CHECK(weak_energies(params(3, 0.15, 0.1, 0.02, 0.02)).size() == 6);
    CHECK(weak_energies(params(4, 0.15, 0.1, 0.02, 0.02)).size() == 8);
    CHECK_THROWS_AS(weak_energies(params(5, 0.15, 0.1, 0.02, 0.02)), UnsupportedRegime);
    for (int d : {2, 3, 4})
        for (double O : {0.0, 0.3, 0.9, 1.5, 3.0})
            for (double g : {0.0, 0.1, 0.5})
                for (double e : weak_energies(params(d, O, 0.5 * O, g, g))) CHECK(std::isfinite(e));
}

TEST_CASE("level matching", "[weak_coupling]") {
    const RVector exact = (RVector(4) << -1.0, -0.5, 0.2, 0.21).finished();
    const auto m = match_levels({0.205, 0.22, -0.9}, exact);
    REQUIRE(m.size() == 3);
    CHECK(m[0].exact_index == 2);
    CHECK(m[1].exact_index == 3);
    CHECK(m[2].exact_index == 0);
    CHECK_THAT(m[2].error(), WithinAbs(0.1, 1e-15));
}
