#include "qrabi/entanglement.hpp"

#include "qrabi/errors.hpp"
#include "qrabi/strong_coupling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace qrabi {

double negativity(const DensityMatrix& rho, const Layout& layout) {
    if (layout.size() != 2) throw InvalidArgument("negativity needs a bipartite layout");
    const OperatorMatrix pt = partial_transpose(rho, layout, 1);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(pt.entries(), Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) < 0.0) neg -= es.eigenvalues()(i);
    return neg < 1e-14 ? 0.0 : neg;
}

double schmidt_negativity(const CMatrix& amplitudes) {
    Eigen::JacobiSVD<CMatrix> svd(amplitudes);
    const RVector s = svd.singularValues() / amplitudes.norm();
    const double sum = s.sum();
    return std::max(0.0, 0.5 * (sum * sum - 1.0));
}

DensityMatrix ground_reduced_state(const ModelParams& p) {
    const ModelParams q = p.with_adequate_truncation();
    const GroundState g = ground_state(q);
    return reduced_state(g.state, {0, 1});
}

double ground_negativity(const ModelParams& p) {
    return negativity(ground_reduced_state(p), {2, p.d});
}

double analytic_negativity(const ModelParams& p) {
    return 0.5 * ghz_branch_overlap(p);
}

NegativityGrid::Peak NegativityGrid::argmax() const {
    if (values.size() == 0) throw InvalidArgument("argmax of an empty grid");
    Peak best{g1_axis[0], g2_axis[0], values(0, 0)};
    for (Index i = 0; i < values.rows(); ++i)
        for (Index j = 0; j < values.cols(); ++j)
            if (values(i, j) > best.value) best = {g1_axis[static_cast<std::size_t>(i)], g2_axis[static_cast<std::size_t>(j)], values(i, j)};
    return best;
}

NegativityGrid negativity_map(const ModelParams& tmpl, const std::vector<double>& g1_axis,
                              const std::vector<double>& g2_axis, int threads) {
    if (g1_axis.empty() || g2_axis.empty()) throw InvalidArgument("negativity_map: axes must be nonempty");
    if (!std::is_sorted(g1_axis.begin(), g1_axis.end()) || !std::is_sorted(g2_axis.begin(), g2_axis.end())) {
        throw InvalidArgument("negativity_map: axes must be ascending");
    }
    tmpl.validate();

    NegativityGrid grid;
    grid.g1_axis = g1_axis;
    grid.g2_axis = g2_axis;
    grid.params = tmpl;
    const Index n1 = static_cast<Index>(g1_axis.size());
    const Index n2 = static_cast<Index>(g2_axis.size());
    grid.values = RMatrix::Zero(n1, n2);

    const Index total = n1 * n2;
    unsigned nt = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    nt = static_cast<unsigned>(std::min<Index>(nt, total));

    std::atomic<Index> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (Index k = next++; k < total; k = next++) {
            const Index i = k / n2;
            const Index j = k % n2;
            try {
                const double v = ground_negativity(
                    tmpl.with_couplings(g1_axis[static_cast<std::size_t>(i)], g2_axis[static_cast<std::size_t>(j)]));
                grid.values(i, j) = v;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return grid;
}

CMatrix to_adiabatic_basis(const DensityMatrix& rho, int d) {
    if (rho.dim() != 2 * d) throw InvalidDimension("to_adiabatic_basis: expected a 2d x 2d qubit-qudit state");
    const CMatrix u = adiabatic_basis(d);
    return u.adjoint() * rho.entries() * u;
}

}  // namespace qrabi
