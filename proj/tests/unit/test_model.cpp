#include "support/oracles.hpp"

#include <qrabi/errors.hpp>
#include <qrabi/model.hpp>

#include <catch_amalgamated.hpp>

using namespace qrabi;
using Catch::Matchers::WithinAbs;

namespace {

ModelParams params(int d, double O1, double O2, double g1, double g2, int n_max = -1) {
    ModelParams p;
    p.d = d;
    p.Omega1 = O1;
    p.Omega2 = O2;
    p.g1 = g1;
    p.g2 = g2;
    p.n_max = n_max > 0 ? n_max : ModelParams::required_n_max(d, g1, g2);
    return p;
}

double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("full Hamiltonian matches element-wise construction", "[model]") {
    for (int d : {2, 3, 4})
        for (double g : {0.0, 0.13, 0.4}) {
            const ModelParams p = params(d, 0.15, 0.1, g, 0.7 * g, 9);
            const CMatrix ref = oracle::hamiltonian(d, 9, 1.0, 0.15, 0.1, g, 0.7 * g);
            CHECK(max_diff(build_full_hamiltonian(p).entries(), ref) < 1e-14);
        }
}

TEST_CASE("uncoupled ground energies", "[model]") {
    CHECK_THAT(exact_energies(params(2, 0.15, 0.1, 0, 0))(0), WithinAbs(-0.125, 1e-14));
    CHECK_THAT(exact_energies(params(3, 0.15, 0.1, 0, 0))(0), WithinAbs(-0.175, 1e-14));
}

TEST_CASE("coupling-only ground energy", "[model]") {
    const ModelParams p = params(3, 0, 0, 0.3, 0.3);
    CHECK_THAT(exact_energies(p)(0), WithinAbs(-0.81, 1e-8));
}

TEST_CASE("build_uncoupled", "[model]") {
    const OperatorMatrix h0 = build_uncoupled(params(3, 0.15, 0.1, 0.3, 0.2));
    CMatrix off = h0.entries();
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);

    const OperatorMatrix h2 = build_uncoupled(params(2, 0.12, 0.1, 0, 0));
    Index arg = 0;
    h2.entries().diagonal().real().minCoeff(&arg);
    CHECK(arg == 0);

    const ModelParams p4 = params(4, 0, 0.5, 0, 0);
    CHECK_THAT(build_uncoupled(p4).entries().diagonal().real().minCoeff(), WithinAbs(-0.75, 1e-15));
}

TEST_CASE("build_reduced", "[model]") {
    const ModelParams zero = params(3, 0.2, 0.1, 0, 0, 6);
    const CMatrix hr = build_reduced(zero).entries();
    for (Index i = 0; i < hr.rows(); ++i) CHECK(hr(i, i).real() == static_cast<double>(i % 7));
    CHECK(max_diff(hr, CMatrix(hr.diagonal().asDiagonal())) == 0.0);

    const ModelParams p = params(4, 0.15, 0.1, 0.2, 0.1);
    CHECK(build_reduced(p).entries() == build_full_hamiltonian(p.with_frequencies(0, 0)).entries());

    const RVector e = exact_energies(params(2, 0.15, 0.1, 0.3, 0.3).with_frequencies(0, 0));
    CHECK_THAT(e(0), WithinAbs(-0.36, 1e-9));
    CHECK_THAT(e(1) - e(0), WithinAbs(0.0, 1e-9));
}

TEST_CASE("parity operator", "[model]") {
    const ModelParams p = params(3, 0.15, 0.1, 0.3, 0.3);
    const OperatorMatrix P = build_parity(p);
    CHECK((P * P).entries() == CMatrix::Identity(p.dim(), p.dim()));
    const OperatorMatrix H = build_full_hamiltonian(p);
    CHECK(max_diff((P * H * P).entries(), H.entries()) <= 1e-12);
    CHECK(P(0, 0).real() == 1.0);
    CHECK(build_parity(p)(0, 0) == P(0, 0));

    const RVector diag = parity_diagonal(p);
    CHECK(max_diff(CMatrix(diag.cast<Complex>().asDiagonal()), P.entries()) == 0.0);
    const ParitySectors s = parity_sectors(p);
    CHECK(static_cast<Index>(s.even.size() + s.odd.size()) == p.dim());
    for (Index i : s.even) CHECK(diag(i) == 1.0);
    for (Index i : s.odd) CHECK(diag(i) == -1.0);
}

TEST_CASE("Hermiticity and parity commutation over a grid", "[model][property]") {
    for (int d : {2, 3, 4})
        for (double g1 : {0.0, 0.2, 0.6})
            for (double g2 : {0.0, 0.35, 0.6}) {
                const ModelParams p = params(d, 0.15, 0.1, g1, g2, 12);
                const OperatorMatrix H = build_full_hamiltonian(p);
                CHECK(H.hermiticity_defect() <= 1e-12);
                CHECK(commutator(H, build_parity(p)).max_abs() <= 1e-10);
            }
}

TEST_CASE("variational monotonicity in n_max", "[model][property]") {
    for (int d : {2, 3, 4}) {
        const ModelParams p = params(d, 0.15, 0.1, 0.3, 0.25);
        double prev = exact_energies(p.with_n_max(1))(0);
        for (int n = 2; n <= p.n_max; ++n) {
            const double e = exact_energies(p.with_n_max(n))(0);
            CHECK(e <= prev + 1e-12);
            prev = e;
        }
        const double at_rule = exact_energies(p)(0);
        const double beyond = exact_energies(p.with_n_max(p.n_max + 10))(0);
        CHECK(std::abs(at_rule - beyond) <= 1e-8);
    }
}

TEST_CASE("qubit exchange symmetry 1 <-> 2", "[model][property]") {
    for (auto [O1, O2, g1, g2] : {std::tuple{0.15, 0.1, 0.3, 0.2}, std::tuple{0.3, 0.05, 0.1, 0.45}}) {
        const ModelParams a = params(2, O1, O2, g1, g2, 25);
        const ModelParams b = params(2, O2, O1, g2, g1, 25);
        const RVector ea = exact_energies(a);
        const RVector eb = exact_energies(b);
        CHECK((ea - eb).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("exact spectrum merges parity sectors", "[model]") {
    const ModelParams p = params(3, 0.15, 0.1, 0.25, 0.2);
    const SpectrumResult s = exact_spectrum(p);
    const RVector ref = oracle::energies(build_full_hamiltonian(p).entries());
    CHECK((s.values - ref).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(s.provenance == Provenance::Exact);
    const CMatrix H = build_full_hamiltonian(p).entries();
    const RVector par = parity_diagonal(p);
    for (Index k = 0; k < 10; ++k) {
        CHECK((H * s.vectors.col(k) - s.values(k) * s.vectors.col(k)).norm() < 1e-9);
        CHECK_THAT(s.vectors.col(k).cwiseAbs2().dot(par), WithinAbs(s.parity[static_cast<std::size_t>(k)], 1e-12));
    }
}

TEST_CASE("ground state parity selection", "[model]") {
    SECTION("weak coupling ground state is even") {
        const GroundState g = ground_state(params(2, 0.15, 0.1, 0.05, 0.05));
        CHECK(g.parity == 1);
        CHECK(g.sector_gap > 0.0);
    }
    SECTION("degenerate pair picks even") {
        const ModelParams p = params(2, 0.0, 0.0, 0.6, 0.6);
        const GroundState g = ground_state(p);
        CHECK(g.parity == 1);
        CHECK(std::abs(g.sector_gap) < 1e-10);
    }
    SECTION("sector energies agree with the full spectrum") {
        const ModelParams p = params(4, 0.15, 0.1, 0.2, 0.1);
        const SectorEnergies se = lowest_sector_energies(p);
        const RVector e = exact_energies(p);
        CHECK_THAT(std::min(se.even, se.odd), WithinAbs(e(0), 1e-10));
        CHECK_THAT(se.even, WithinAbs(sector_ground(p, 1).energy, 1e-10));
        CHECK_THAT(se.odd, WithinAbs(sector_ground(p, -1).energy, 1e-10));
    }
}

TEST_CASE("parameter validation and truncation rule", "[model]") {
    ModelParams p;
    p.d = 1;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = ModelParams{};
    p.omega = 0.0;
    CHECK_THROWS_AS(build_full_hamiltonian(p), InvalidParams);
    p = ModelParams{};
    p.g1 = -0.1;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = ModelParams{};
    p.n_max = 0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);

    CHECK(ModelParams::required_n_max(2, 0.0, 0.0) == 10);
    CHECK(ModelParams::required_n_max(2, 0.25, 0.25) == 12);
    CHECK(ModelParams::required_n_max(4, 0.5, 0.5) == 42);
    CHECK(ModelParams::required_n_max(2, 0.5, 0.5, 2.0) == 12);

    const ModelParams low = params(3, 0.1, 0.1, 0.4, 0.4, 5);
    CHECK_FALSE(check_truncation(low).adequate);
    CHECK(low.with_adequate_truncation().n_max == low.required_n_max());
    CHECK(low.with_n_max(100).with_adequate_truncation().n_max == 100);
}

TEST_CASE("omega rescaling", "[model]") {
    ModelParams p = params(3, 0.3, 0.2, 0.4, 0.2, 15);
    p.omega = 2.0;
    const RVector e = exact_energies(p);
    const RVector eu = exact_energies(p.in_omega_units());
    CHECK((e - 2.0 * eu).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ladder qudit at d=2 is a shifted spin", "[model]") {
    ModelParams p = params(2, 0.15, 0.1, 0.2, 0.3);
    const RVector es = exact_energies(p);
    p.qudit = QuditOperators::Ladder;
    const RVector el = exact_energies(p);
    CHECK((el - es - RVector::Constant(es.size(), 0.05)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(qudit_operators_from_string(to_string(QuditOperators::Ladder)) == QuditOperators::Ladder);
    CHECK_THROWS_AS(qudit_operators_from_string("boson"), InvalidParams);
}

TEST_CASE("Hamiltonian terms combine linearly", "[model]") {
    const ModelParams p = params(3, 0.15, 0.1, 0.25, 0.2, 8);
    const HamiltonianTerms t = hamiltonian_terms(3, 8);
    CHECK(max_diff(t.combine(p).cast<Complex>(), build_full_hamiltonian(p).entries()) < 1e-15);
}
