#include "experiments.hpp"

#include <qrabi/qrabi.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace qrabi::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> axis(double lo, double hi, int points) {
    return uniform_grid(lo, hi, static_cast<std::size_t>(points), true);
}

class TruncationTracker {
public:
    explicit TruncationTracker(std::optional<int> fixed) : fixed_(fixed) {}

    // Parameters actually used for a point.
    ModelParams resolve(const ModelParams& p) const {
        return fixed_ ? p.with_n_max(*fixed_) : p.with_adequate_truncation();
    }

    // Routines that raise truncation on their own.
    ModelParams resolve_raised(const ModelParams& p) const {
        return resolve(p).with_adequate_truncation();
    }

    void note(const ModelParams& used) {
        const TruncationReport r = check_truncation(used);
        ++diag_.points;
        if (!r.adequate) ++diag_.inadequate_points;
        const std::pair key{r.required - r.n_max, r.required};
        if (diag_.points == 1 || key > worst_key_) {
            worst_key_ = key;
            worst_ = used;
        }
    }

    TruncationDiagnostics finish() {
        if (diag_.points == 0) return diag_;
        if (diag_.inadequate_points) warn_truncation(worst_, "run");
        diag_.n_max_used = worst_.n_max;
        diag_.n_max_required = worst_.required_n_max();
        diag_.g1 = worst_.g1;
        diag_.g2 = worst_.g2;
        diag_.tail_mass = fock_tail_mass(ground_state(worst_).state);
        return diag_;
    }

private:
    std::optional<int> fixed_;
    TruncationDiagnostics diag_;
    ModelParams worst_;
    std::pair<int, int> worst_key_{0, 0};
};

template <class F>
std::vector<double> or_nan(std::size_t n, F&& f) {
    try {
        return f();
    } catch (const qrabi::Error&) {
        return std::vector<double>(n, kNaN);
    }
}

RunResult run_spectrum(const Config& cfg) {
    const ModelParams base = cfg.model();
    TruncationTracker tr(cfg.fixed_n_max());
    const int levels = cfg.get_int("spectrum.levels");
    const auto variant =
        cfg.get_string("spectrum.ququart_variant") == "half" ? QuquartVariant::HalfCoefficient : QuquartVariant::AsPrinted;
    const bool has_weak = base.d >= 2 && base.d <= 4;
    const std::size_t n_weak = has_weak ? static_cast<std::size_t>(2 * base.d) : 0;

    Table t;
    t.name = "";
    t.header.push_back("g [omega]");
    for (int i = 0; i < levels; ++i) t.header.push_back("E_exact_" + std::to_string(i) + " [omega]");
    for (std::size_t i = 0; i < n_weak; ++i) t.header.push_back("E_weak_" + std::to_string(i) + " [omega]");
    t.header.push_back("E_strong_minus [omega]");
    t.header.push_back("E_strong_plus [omega]");

    int weak_valid = 0, strong_valid = 0;
    for (double g : axis(cfg.get_double("spectrum.g_min"), cfg.get_double("spectrum.g_max"), cfg.get_int("spectrum.points"))) {
        const ModelParams p = tr.resolve(base.with_couplings(g, g));
        tr.note(p);
        const ModelParams unit = p.in_omega_units();
        std::vector<double> row{g / p.omega};
        const RVector E = exact_energies(unit);
        for (int i = 0; i < levels; ++i) row.push_back(i < E.size() ? E(i) : kNaN);
        if (has_weak) {
            const auto w = or_nan(n_weak, [&] { return weak_energies(unit, variant); });
            if (!std::isnan(w.front())) ++weak_valid;
            row.insert(row.end(), w.begin(), w.end());
        }
        const auto s = or_nan(2, [&] {
            const PerturbationResult r = perturbative_energies(unit);
            return std::vector<double>{r.E_minus, r.E_plus};
        });
        if (!std::isnan(s.front())) ++strong_valid;
        row.insert(row.end(), s.begin(), s.end());
        t.add(std::move(row));
    }

    RunResult r;
    r.summary["points"] = t.rows.size();
    r.summary["weak_points"] = weak_valid;
    r.summary["strong_points"] = strong_valid;
    r.tables.push_back(std::move(t));
    r.truncation = tr.finish();
    return r;
}

RunResult run_ghz(const Config& cfg) {
    const ModelParams base = cfg.model();
    TruncationTracker tr(cfg.fixed_n_max());
    Table t;
    t.header = {"g [omega]", "ghz_fidelity [1]", "ground_parity [1]", "sector_gap [omega]", "branch_overlap [1]"};
    double best = 0.0;
    for (double g : axis(cfg.get_double("ghz.g_min"), cfg.get_double("ghz.g_max"), cfg.get_int("ghz.points"))) {
        const ModelParams p = tr.resolve(base.with_couplings(g, g));
        tr.note(p);
        const ModelParams unit = p.in_omega_units();
        const GroundState gs = ground_state(unit);
        const double f = fidelity(gs.state, ghz_state_with_parity(unit, gs.parity));
        best = std::max(best, f);
        t.add({g / p.omega, f, static_cast<double>(gs.parity), gs.sector_gap, ghz_branch_overlap(unit)});
    }
    RunResult r;
    r.summary["final_fidelity"] = t.rows.back()[1];
    r.summary["max_fidelity"] = best;
    r.tables.push_back(std::move(t));
    r.truncation = tr.finish();
    return r;
}

RunResult run_negativity(const Config& cfg) {
    const ModelParams base = cfg.model();
    TruncationTracker tr(cfg.fixed_n_max());
    const auto g1 = axis(cfg.get_double("negativity.g1_min"), cfg.get_double("negativity.g1_max"),
                         cfg.get_int("negativity.g1_points"));
    const auto g2 = axis(cfg.get_double("negativity.g2_min"), cfg.get_double("negativity.g2_max"),
                         cfg.get_int("negativity.g2_points"));
    for (double a : g1)
        for (double b : g2) tr.note(tr.resolve_raised(base.with_couplings(a, b)));

    ModelParams tmpl = tr.resolve(base).in_omega_units();
    std::vector<double> g1u(g1), g2u(g2);
    for (double& v : g1u) v /= base.omega;
    for (double& v : g2u) v /= base.omega;
    const NegativityGrid grid = negativity_map(tmpl, g1u, g2u, cfg.get_int("negativity.threads"));

    Table t;
    t.header = {"g1 [omega]", "g2 [omega]", "negativity [1]"};
    for (std::size_t i = 0; i < g1u.size(); ++i)
        for (std::size_t j = 0; j < g2u.size(); ++j)
            t.add({g1u[i], g2u[j], grid.values(static_cast<Index>(i), static_cast<Index>(j))});

    const auto peak = grid.argmax();
    RunResult r;
    r.summary["argmax"] = {{"g1", peak.g1}, {"g2", peak.g2}, {"negativity", peak.value}};
    r.tables.push_back(std::move(t));
    r.truncation = tr.finish();
    return r;
}

RunResult run_quench(const Config& cfg) {
    TruncationTracker tr(cfg.fixed_n_max());
    const ModelParams p = tr.resolve(cfg.model());
    tr.note(p);
    const ModelParams unit = p.in_omega_units();
    const auto times = uniform_grid(0.0, cfg.get_double("quench.t_max") * p.omega,
                                    static_cast<std::size_t>(cfg.get_int("quench.samples")));

    const QuenchResult q = quench_run(unit, times);
    AnalyticFidelityOptions fo;
    fo.n_sum = cfg.get_int("quench.n_sum");
    fo.weights = cfg.get_string("quench.weights") == "uniform" ? BranchWeights::Uniform : BranchWeights::Overlap;
    const TimeSeries fa = analytic_quench_fidelity(unit, times, fo);
    AnalyticSigmaZOptions so;
    so.n_sum = fo.n_sum;
    const auto sza = or_nan(times.size(), [&] { return analytic_sigma_z(unit, times, so).values; });
    const auto jza = or_nan(times.size(), [&] { return analytic_J_z(unit, times, so).values; });
    const TimeSeries na = analytic_photon(unit, times);

    Table t;
    t.header = {"t [1/omega]",           "fidelity_exact [1]", "fidelity_analytic [1]",
                "sigma_z_exact [1]",     "sigma_z_analytic [1]", "J_z_exact [1]",
                "J_z_analytic [1]",      "photon_exact [1]",   "photon_analytic [1]"};
    for (std::size_t k = 0; k < times.size(); ++k)
        t.add({times[k], q.fidelity.values[k], fa.values[k], q.sigma_z.values[k], sza[k], q.J_z.values[k], jza[k],
               q.photon_number.values[k], na.values[k]});

    const Spectrum sp_n = spectrum_of(q.photon_number);
    const Spectrum sp_s = spectrum_of(q.sigma_z);
    const Spectrum sp_j = spectrum_of(q.J_z);
    Table s;
    s.name = "spectrum";
    s.header = {"frequency [omega]", "photon_magnitude [1]", "sigma_z_magnitude [1]", "J_z_magnitude [1]"};
    for (std::size_t k = 0; k < sp_n.freqs.size(); ++k)
        s.add({sp_n.freqs[k], sp_n.magnitudes[k], sp_s.magnitudes[k], sp_j.magnitudes[k]});

    double peak = 0.0;
    const double period = 2.0 * std::numbers::pi;
    for (std::size_t k = 0; k < times.size() && times[k] <= period; ++k)
        peak = std::max(peak, q.photon_number.values[k]);

    RunResult r;
    r.summary["photon_peak_first_period"] = peak;
    r.summary["photon_amplitude_analytic"] = 4.0 * (unit.g1 * unit.g1 + (unit.d - 1) * unit.g2 * unit.g2);
    r.summary["dft_bin_width"] = sp_n.bin_width;
    r.summary["dominant_frequency"] = {{"photon", sp_n.dominant_frequency()},
                                       {"sigma_z", sp_s.dominant_frequency()},
                                       {"J_z", sp_j.dominant_frequency()}};
    r.summary["max_norm_drift"] = q.max_norm_drift;
    r.summary["max_parity_drift"] = q.max_parity_drift;
    r.tables.push_back(std::move(t));
    r.tables.push_back(std::move(s));
    r.truncation = tr.finish();
    return r;
}

RunResult run_adiabatic(const Config& cfg) {
    TruncationTracker tr(cfg.fixed_n_max());
    const ModelParams end = tr.resolve(cfg.model()).in_omega_units();
    const double t_f = cfg.get_double("adiabatic.t_f") * cfg.model().omega;
    const bool two = cfg.get_string("adiabatic.scheme") == "II";
    const double w = cfg.model().omega;
    const RampSchedule sched =
        two ? RampSchedule::scheme_II(end, cfg.get_double("adiabatic.Omega1_start") / w,
                                      cfg.get_double("adiabatic.Omega2_start") / w, t_f)
            : RampSchedule::scheme_I(end, t_f);
    tr.note(sched.end);

    const int parity = two ? ground_state(sched.start).parity : +1;
    const StateVector target = ghz_state_with_parity(sched.end, parity);
    const int steps = cfg.get_int("adiabatic.steps");
    const AdiabaticResult a = adiabatic_run(sched, steps, target);

    const int every = cfg.get_int("adiabatic.record_every");
    Table t;
    t.header = {"t [1/omega]", "mu [1]", "fidelity [1]"};
    for (std::size_t k = 0; k < a.fidelity.size(); ++k)
        if (k % static_cast<std::size_t>(every) == 0 || k + 1 == a.fidelity.size())
            t.add({a.fidelity.times[k], sched.mu(a.fidelity.times[k]), a.fidelity.values[k]});

    const std::size_t k75 = static_cast<std::size_t>(std::lround(0.75 * steps));
    RunResult r;
    r.summary["final_fidelity"] = a.fidelity.values.back();
    r.summary["fidelity_at_0.75_t_f"] = a.fidelity.values[std::min(k75, a.fidelity.size() - 1)];
    r.summary["target_parity"] = parity;
    r.summary["max_norm_drift"] = a.max_norm_drift;
    r.summary["max_parity_drift"] = a.max_parity_drift;
    r.tables.push_back(std::move(t));
    r.truncation = tr.finish();
    return r;
}

RunResult run_splitting(const Config& cfg) {
    TruncationTracker tr(cfg.fixed_n_max());
    const ModelParams base = cfg.model();
    const ModelParams p = tr.resolve_raised(base);
    tr.note(p);
    std::vector<double> values = cfg.get_list("splitting.Omega2_values");
    for (double& v : values) v /= base.omega;
    const auto samples = ground_splitting_scaling(p.in_omega_units(), values);

    Table t;
    t.header = {"Omega2 [omega]", "gap [omega]"};
    for (const auto& s : samples) t.add({s.Omega2, s.gap});

    RunResult r;
    try {
        r.summary["loglog_slope"] = loglog_slope(samples);
    } catch (const qrabi::Error& e) {
        r.summary["loglog_slope"] = nullptr;
        r.summary["loglog_slope_error"] = e.what();
    }
    r.summary["expected_slope"] = base.d - 1;
    r.tables.push_back(std::move(t));
    r.truncation = tr.finish();
    return r;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> cat{
        {Experiment::Spectrum, "low-lying spectrum vs g1 = g2: exact, weak- and strong-coupling", "Fig. 2"},
        {Experiment::GhzFidelity, "fidelity of the ground state with the GHZ state vs g1 = g2", "Fig. 3"},
        {Experiment::NegativityMap, "qubit-qudit negativity of the ground state over (g1, g2)", "Fig. 4"},
        {Experiment::Quench, "sudden quench from |g,0,0>: fidelity, <sigma_z>, <J_z>, <a^dag a>, DFT", "Figs. 5-6"},
        {Experiment::Adiabatic, "adiabatic GHZ preparation, scheme I (couplings) or II (frequencies)", "Fig. 7"},
        {Experiment::SplittingScaling, "ground doublet splitting vs Omega2 (log-log slope)", "Appendix C"},
    };
    return cat;
}

std::string list_experiments() {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-18s %-11s %s\n", "experiment", "figure", "description");
    out << buf;
    for (const auto& e : experiment_catalog()) {
        std::snprintf(buf, sizeof buf, "%-18s %-11s %s\n", to_string(e.id), e.figure, e.description);
        out << buf;
    }
    return out.str();
}

nlohmann::json TruncationDiagnostics::to_json() const {
    return {{"points", points},
            {"inadequate_points", inadequate_points},
            {"adequate", adequate()},
            {"hardest_point", {{"g1", g1}, {"g2", g2}, {"n_max", n_max_used}, {"n_max_required", n_max_required}}},
            {"tail_mass_top5", tail_mass}};
}

double fock_tail_mass(const StateVector& psi, int top) {
    const Layout& l = psi.layout();
    const Index nf = l.back();
    const Index first = std::max<Index>(0, nf - top);
    double mass = 0.0;
    for (Index i = 0; i < psi.dim(); ++i)
        if (i % nf >= first) mass += std::norm(psi[i]);
    return mass;
}

RunResult run_experiment(const Config& cfg) {
    switch (cfg.experiment()) {
    case Experiment::Spectrum: return run_spectrum(cfg);
    case Experiment::GhzFidelity: return run_ghz(cfg);
    case Experiment::NegativityMap: return run_negativity(cfg);
    case Experiment::Quench: return run_quench(cfg);
    case Experiment::Adiabatic: return run_adiabatic(cfg);
    case Experiment::SplittingScaling: return run_splitting(cfg);
    }
    throw std::logic_error("unhandled experiment");
}

}  // namespace qrabi::cli
