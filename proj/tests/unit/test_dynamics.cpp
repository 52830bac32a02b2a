#include "support/oracles.hpp"

#include <qrabi/dynamics.hpp>
#include <qrabi/errors.hpp>
#include <qrabi/strong_coupling.hpp>

#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

using namespace qrabi;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = std::numbers::pi;

ModelParams params(int d, double O1, double O2, double g1, double g2) {
    ModelParams p;
    p.d = d;
    p.Omega1 = O1;
    p.Omega2 = O2;
    p.g1 = g1;
    p.g2 = g2;
    return p.with_adequate_truncation();
}

ModelParams quench_params(int d) { return params(d, 0.12, 0.1, 0.3, 0.3); }

TimeSeries series(std::vector<double> t, std::vector<double> v) {
    TimeSeries s;
    s.times = std::move(t);
    s.values = std::move(v);
    return s;
}

double max_over(const TimeSeries& s, double t_max) {
    double m = -1e300;
    for (std::size_t k = 0; k < s.size() && s.times[k] <= t_max; ++k) m = std::max(m, s.values[k]);
    return m;
}

}  // namespace

TEST_CASE("uniform grids", "[dynamics]") {
    const auto t = uniform_grid(0.0, 1.0, 4);
    CHECK(t == std::vector<double>{0.0, 0.25, 0.5, 0.75});
    const auto te = uniform_grid(0.0, 1.0, 5, true);
    CHECK(te.back() == 1.0);
    CHECK_NOTHROW(series(uniform_grid(0.0, 100.0, 8192), std::vector<double>(8192)).validate_uniform());
    CHECK_THROWS_AS(series({0.0, 0.1, 0.3}, {0, 0, 0}).validate_uniform(), InvalidArgument);
    CHECK_THROWS_AS(series({0.0, 0.1}, {0}).validate_uniform(), InvalidArgument);
    CHECK_THROWS_AS(series({0.2, 0.1}, {0, 0}).validate_uniform(), InvalidArgument);
}

TEST_CASE("static evolution", "[dynamics]") {
    SECTION("t = 0 returns the initial state") {
        const ModelParams p = quench_params(2);
        std::mt19937_64 rng(2);
        const StateVector psi0(oracle::random_state(p.dim(), rng), p.layout());
        const auto out = evolve_static(build_full_hamiltonian(p), psi0, {0.0});
        CHECK(out[0].amplitudes() == psi0.amplitudes());
    }
    SECTION("diagonal Hamiltonian gives a pure phase") {
        const OperatorMatrix H = OperatorMatrix::diagonal((RVector(3) << 0.3, -1.1, 2.0).finished());
        const StateVector psi0 = StateVector::basis({3}, 1);
        for (const auto& s : evolve_static(H, psi0, {0.5, 3.0, 17.0})) CHECK_THAT(fidelity(s, psi0), WithinAbs(1.0, 1e-14));
        const auto s = evolve_static(H, psi0, {2.0});
        CHECK(std::abs(s[0][1] - std::exp(Complex(0, 2.2))) < 1e-14);
    }
    SECTION("agrees with an RK4 integrator") {
        const ModelParams p = quench_params(2);
        const StateVector psi0 = StateVector::basis(p.layout(), 0);
        const CMatrix h = oracle::hamiltonian(2, p.n_max, 1.0, 0.12, 0.1, 0.3, 0.3);
        const CVector ref = oracle::rk4(h, psi0.amplitudes(), 20.0, 1e-3);
        const auto out = evolve_static(build_full_hamiltonian(p), psi0, {20.0});
        CHECK((out[0].amplitudes() - ref).norm() <= 1e-6);
    }
    SECTION("norm and energy conservation") {
        const ModelParams p = quench_params(3);
        const OperatorMatrix H = build_full_hamiltonian(p);
        const StateVector psi0 = StateVector::basis(p.layout(), 0);
        const double e0 = expectation(H, psi0);
        for (const auto& s : evolve_static(H, psi0, uniform_grid(0.0, 100.0, 200))) {
            CHECK(std::abs(s.norm() - 1.0) <= 1e-10);
            CHECK(std::abs(expectation(H, s) - e0) <= 1e-9);
        }
    }
    CHECK_THROWS_AS(evolve_static(OperatorMatrix::identity(3), StateVector::basis({2}, 0), {1.0}), InvalidDimension);
}

TEST_CASE("quench run", "[dynamics]") {
    const auto times = uniform_grid(0.0, 100.0, 8192);
    SECTION("qubit") {
        const QuenchResult q = quench_run(quench_params(2), times);
        CHECK(q.fidelity.values[0] == 1.0);
        CHECK(q.photon_number.values[0] == 0.0);
        CHECK(q.sigma_z.values[0] == 1.0);
        CHECK(q.J_z.values[0] == -0.5);
        CHECK(q.max_norm_drift <= 1e-8);
        CHECK(q.max_parity_drift <= 1e-8);
        const Spectrum s = spectrum_of(q.photon_number);
        CHECK(std::abs(s.dominant_frequency() - 1.0) <= s.bin_width);
    }
    SECTION("ququart photon peak") {
        const QuenchResult q = quench_run(quench_params(4), times);
        CHECK(std::abs(max_over(q.photon_number, 2 * pi) - 1.44) <= 0.15 * 1.44);
        CHECK(q.max_parity_drift <= 1e-8);
    }
    SECTION("analytic fidelity tracks the initial decay") {
        const auto early = uniform_grid(0.0, 5.0, 501, true);
        const ModelParams p = quench_params(2);
        const QuenchResult q = quench_run(p, early);
        const TimeSeries a = analytic_quench_fidelity(p, early);
        double worst = 0.0;
        for (std::size_t k = 0; k < early.size(); ++k) worst = std::max(worst, std::abs(q.fidelity.values[k] - a.values[k]));
        CHECK(worst <= 0.1);
    }
}

TEST_CASE("analytic quench fidelity", "[dynamics]") {
    const auto times = uniform_grid(0.0, 30.0, 300);
    for (int d : {2, 3, 4}) {
        const TimeSeries f = analytic_quench_fidelity(quench_params(d), times);
        CHECK_THAT(f.values[0], WithinAbs(1.0, 1e-6));
        const TimeSeries z = analytic_quench_fidelity(params(d, 0.12, 0.1, 0, 0), times);
        for (double v : z.values) CHECK_THAT(v, WithinAbs(1.0, 1e-15));
    }
    SECTION("branch weights are binomial") {
        for (int d : {2, 3, 4}) {
            const ModelParams p = quench_params(d);
            const CMatrix q = coupling_eigenvectors(d).vectors;
            for (int m = 0; m < d; ++m)
                CHECK_THAT(std::norm(q(0, m)), WithinAbs(oracle::binomial(d - 1, m) / std::pow(2.0, d - 1), 1e-14));
            // explicit series with oracle weights
            const TimeSeries f = analytic_quench_fidelity(p, times);
            for (std::size_t k = 0; k < times.size(); k += 37) {
                Complex amp = 0.0;
                for (int m = 0; m < d; ++m) {
                    const double a = p.g1 + (-(d - 1) + 2 * m) * p.g2;
                    for (int N = 0; N <= 10; ++N)
                        amp += oracle::binomial(d - 1, m) / std::pow(2.0, d - 1) * oracle::poisson(a * a, N) *
                               std::exp(Complex(0, -(N - a * a) * times[k]));
                }
                CHECK_THAT(f.values[k], WithinAbs(std::abs(amp), 1e-12));
            }
        }
    }
    SECTION("uniform weights coincide for the qubit") {
        AnalyticFidelityOptions u;
        u.weights = BranchWeights::Uniform;
        const TimeSeries a = analytic_quench_fidelity(quench_params(2), times);
        const TimeSeries b = analytic_quench_fidelity(quench_params(2), times, u);
        for (std::size_t k = 0; k < times.size(); ++k) CHECK_THAT(a.values[k], WithinAbs(b.values[k], 1e-15));
    }
}

TEST_CASE("analytic sigma_z and J_z", "[dynamics]") {
    const auto times = uniform_grid(0.0, 100.0, 8192);
    const ModelParams p = quench_params(2);
    const TimeSeries s = analytic_sigma_z(p, times);
    CHECK_THAT(s.values[0], WithinAbs(1.0, 1e-6));
    const TimeSeries j = analytic_J_z(p, times);
    for (std::size_t k = 0; k < times.size(); k += 101) CHECK(j.values[k] == -0.5 * s.values[k]);

    for (double v : analytic_sigma_z(params(2, 0.12, 0.1, 0, 0), times).values) CHECK(v == 1.0);

    SECTION("dominant frequency against the exact quench") {
        const QuenchResult q = quench_run(p, times);
        const Spectrum se = spectrum_of(q.sigma_z);
        const Spectrum sa = spectrum_of(s);
        CHECK(std::abs(se.dominant_frequency() - sa.dominant_frequency()) <= 2 * se.bin_width);
    }
    SECTION("raw printed series") {
        AnalyticSigmaZOptions raw;
        raw.raw_printed = true;
        double ref = 0.0;
        for (int N = 0; N <= 10; ++N) ref += std::pow(0.36, N) / std::tgamma(N + 1.0);
        CHECK_THAT(analytic_sigma_z(p, {0.0}, raw).values[0], WithinAbs(ref, 1e-12));
    }
    CHECK_THROWS_AS(analytic_sigma_z(params(2, 0.1, 0.1, 0.3, 0.2), times), UnsupportedRegime);
    CHECK_THROWS_AS(analytic_sigma_z(quench_params(3), times), UnsupportedRegime);
}

TEST_CASE("analytic photon number", "[dynamics]") {
    CHECK(analytic_photon(quench_params(2), {0.0}).values[0] == 0.0);
    CHECK_THAT(analytic_photon(quench_params(2), {pi}).values[0], WithinAbs(0.72, 1e-14));
    CHECK_THAT(analytic_photon(quench_params(3), {pi}).values[0], WithinAbs(1.08, 1e-14));
}

TEST_CASE("spectrum", "[dynamics]") {
    SECTION("pure cosine") {
        const auto t = uniform_grid(0.0, 200 * pi, 4096);
        std::vector<double> v;
        for (double x : t) v.push_back(std::cos(x));
        const Spectrum s = spectrum_of(series(t, v));
        CHECK(std::abs(s.dominant_frequency() - 1.0) <= s.bin_width);
        CHECK_THAT(s.magnitudes[s.dominant_index()], WithinAbs(1.0, 1e-10));
    }
    SECTION("constant") {
        const auto t = uniform_grid(0.0, 10.0, 128);
        const Spectrum s = spectrum_of(series(t, std::vector<double>(128, 3.7)));
        for (double m : s.magnitudes) CHECK(m <= 1e-12);
    }
    SECTION("matches a naive DFT") {
        std::mt19937_64 rng(4);
        std::normal_distribution<double> g;
        for (std::size_t n : {64u, 100u, 257u}) {
            const auto t = uniform_grid(0.0, 0.05 * n, n);
            std::vector<double> v(n);
            for (double& x : v) x = g(rng);
            const Spectrum s = spectrum_of(series(t, v));
            const auto ref = oracle::naive_dft(v, 0.05);
            REQUIRE(s.magnitudes.size() == ref.magnitudes.size());
            for (std::size_t k = 0; k < ref.magnitudes.size(); ++k) {
                CHECK_THAT(s.magnitudes[k], WithinAbs(ref.magnitudes[k], 1e-10));
                CHECK_THAT(s.freqs[k], WithinAbs(ref.freqs[k], 1e-12));
            }
        }
    }
    SECTION("quench photon number") {
        const QuenchResult q = quench_run(quench_params(2), uniform_grid(0.0, 100.0, 8192));
        const Spectrum s = spectrum_of(q.photon_number);
        const auto ref = oracle::naive_dft(q.photon_number.values, q.photon_number.dt());
        std::size_t arg = 1;
        for (std::size_t k = 1; k < ref.magnitudes.size(); ++k)
            if (ref.magnitudes[k] > ref.magnitudes[arg]) arg = k;
        CHECK(s.dominant_index() == arg);
    }
    SECTION("errors") {
        CHECK_THROWS_AS(spectrum_of(series(uniform_grid(0, 1, 32), std::vector<double>(32))), InvalidArgument);
        auto t = uniform_grid(0.0, 1.0, 64);
        t[10] += 1e-4;
        CHECK_THROWS_AS(spectrum_of(series(t, std::vector<double>(64))), InvalidArgument);
    }
}

TEST_CASE("ramp schedules", "[dynamics]") {
    const ModelParams end = params(2, 0.1, 0.1, 0.5, 0.5);
    const RampSchedule a = RampSchedule::scheme_I(end, 500.0);
    CHECK(a.mu(0.0) == 0.0);
    CHECK(a.mu(500.0) == 1.0);
    double prev = 0.0;
    for (double t = 0; t <= 600; t += 7) {
        CHECK(a.mu(t) >= prev);
        prev = a.mu(t);
    }
    CHECK(a.start.g1 == 0.0);
    CHECK(a.at(250.0).g1 == 0.25);
    CHECK(a.at(500.0) == a.end);

    const RampSchedule b = RampSchedule::scheme_II(end, 2.0, 2.0, 500.0);
    CHECK(b.start.Omega1 == 2.0);
    CHECK(b.start.g1 == b.end.g1);
    CHECK_THAT(b.at(250.0).Omega2, WithinAbs(1.05, 1e-15));

    RampSchedule bad = a;
    bad.start.g1 = 0.1;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = b;
    bad.start.g2 = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    CHECK_THROWS_AS(RampSchedule::scheme_I(end, 0.0), InvalidArgument);
}

TEST_CASE("adiabatic preparation", "[dynamics]") {
    SECTION("sudden limit") {
        const ModelParams end = params(2, 0.1, 0.1, 0.5, 0.5);
        const RampSchedule s = RampSchedule::scheme_I(end, 1e-3);
        const StateVector target = ghz_state_with_parity(s.end, 1);
        const AdiabaticResult r = adiabatic_run(s, 1, target);
        CHECK_THAT(r.fidelity.values.back(), WithinAbs(std::abs(target[0]), 1e-3));
    }
    SECTION("scheme I, qubit") {
        const RampSchedule s = RampSchedule::scheme_I(params(2, 0.1, 0.1, 0.5, 0.5), 500.0);
        const StateVector target = ghz_state_with_parity(s.end, 1);
        const AdiabaticResult r = adiabatic_run(s, 5000, target);
        CHECK(r.fidelity.size() == 5001);
        CHECK(r.fidelity.values.back() >= 0.99);
        CHECK(r.max_norm_drift <= 1e-8);
        CHECK(std::abs(r.final_state.norm() - 1.0) <= 1e-8);

        const AdiabaticResult r2 = adiabatic_run(s, 10000, target);
        CHECK(std::abs(r2.fidelity.values.back() - r.fidelity.values.back()) <= 1e-5);

        AdiabaticOptions full;
        full.use_parity_sector = false;
        const AdiabaticResult rf = adiabatic_run(s, 5000, target, full);
        CHECK(rf.max_parity_drift <= 1e-8);
        CHECK(rf.max_norm_drift <= 1e-8);
        CHECK_THAT(rf.fidelity.values.back(), WithinAbs(r.fidelity.values.back(), 1e-9));
    }
    SECTION("scheme II, qutrit") {
        const RampSchedule s = RampSchedule::scheme_II(params(3, 0.1, 0.1, 0.5, 0.5), 2.0, 2.0, 500.0);
        const int parity = ground_state(s.start).parity;
        const AdiabaticResult r = adiabatic_run(s, 5000, ghz_state_with_parity(s.end, parity));
        CHECK(r.fidelity.values.back() >= 0.99);
        bool monotone = true;
        for (std::size_t k = 2501; k < r.fidelity.size(); ++k)
            if (r.fidelity.values[k] < r.fidelity.values[k - 1] - 1e-12) monotone = false;
        CHECK(monotone);
    }
    SECTION("errors") {
        const RampSchedule s = RampSchedule::scheme_I(params(2, 0.1, 0.1, 0.5, 0.5), 10.0);
        CHECK_THROWS_AS(adiabatic_run(s, 0, ghz_state(s.end, 1)), InvalidArgument);
        CHECK_THROWS_AS(adiabatic_run(s, 10, StateVector::basis({2}, 0)), InvalidDimension);
    }
}
