#include "gpocr/kernel.hpp"
#include "gpocr/error.hpp"

#include <cmath>

namespace gpocr {

double matern32(double distance, const KernelConfig& cfg) {
    const double a = std::sqrt(3.0) * distance / cfg.ell;
    return cfg.sigma * cfg.sigma * (1.0 + a) * std::exp(-a);
}

double default_length_scale(int h, int w) {
    const double lo = std::min(1.0 / h, 1.0 / w);
    return 20.0 * lo * std::max(h, w);
}

std::vector<std::pair<double, double>> window_coords() {
    std::vector<std::pair<double, double>> c;
    c.reserve(25);
    for (int di = -2; di <= 2; ++di)
        for (int dj = -2; dj <= 2; ++dj)
            c.emplace_back(di, dj);
    return c;
}

std::vector<std::pair<double, double>> fine_offsets(int ratio) {
    std::vector<std::pair<double, double>> off;
    off.reserve(static_cast<std::size_t>(ratio) * ratio);
    for (int a = 0; a < ratio; ++a)
        for (int b = 0; b < ratio; ++b)
            off.emplace_back(-0.5 + (2.0 * a + 1.0) / (2.0 * ratio),
                             -0.5 + (2.0 * b + 1.0) / (2.0 * ratio));
    return off;
}

CovMatrix build_cov_matrix(const std::vector<std::pair<double, double>>& coords,
                           const KernelConfig& cfg) {
    const int n = static_cast<int>(coords.size());
    CovMatrix K;
    K.n = n;
    K.entries.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double dy = coords[i].first - coords[j].first;
            const double dx = coords[i].second - coords[j].second;
            const double d = std::hypot(dy, dx);
            if (i != j && d == 0.0) throw DuplicateCoordinates();
            const double v = matern32(d, cfg);
            K.entries(i, j) = v;
            K.entries(j, i) = v;
        }
    }
    return K;
}

CholeskySolver::CholeskySolver(const CovMatrix& K) : original_(K.entries) {
    static const double ladder[] = {0.0, 1e-10, 1e-8, 1e-6};
    const Eigen::VectorXd probe = Eigen::VectorXd::Ones(K.n);
    for (double jitter : ladder) {
        Eigen::MatrixXd M = original_;
        if (jitter > 0.0) M.diagonal().array() += jitter;
        llt_.compute(M);
        if (llt_.info() != Eigen::Success) continue;
        // A level is accepted only if it can actually solve against the
        // original matrix: jitter rescues borderline conditioning but must
        // not paper over a singular K.
        Eigen::VectorXd x = llt_.solve(probe);
        Eigen::VectorXd res = probe - original_ * x;
        if (res.cwiseAbs().maxCoeff() > 1e-8) {
            x += llt_.solve(res);
            res = probe - original_ * x;
        }
        if (res.cwiseAbs().maxCoeff() <= 1e-8) {
            jitter_used_ = jitter;
            return;
        }
    }
    throw NotPositiveDefinite();
}

Eigen::VectorXd CholeskySolver::solve(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd x = llt_.solve(rhs);
    // One refinement step against the original (unjittered) matrix if the
    // residual misses the contract.
    const double bound = 1e-8 * rhs.cwiseAbs().maxCoeff();
    const Eigen::VectorXd res = rhs - original_ * x;
    if (res.cwiseAbs().maxCoeff() > bound) x += llt_.solve(res);
    return x;
}

Eigen::VectorXd cholesky_solve(CovMatrix& K, const Eigen::VectorXd& rhs) {
    CholeskySolver solver(K);
    K.jitter_used = solver.jitter_used();
    return solver.solve(rhs);
}

GpWeights precompute_weights(int ratio, const KernelConfig& cfg) {
    if (ratio < 2 || ratio > 8) throw Error("upsample ratio must be in [2,8]");
    const auto coords = window_coords();
    const CovMatrix K = build_cov_matrix(coords, cfg);
    const CholeskySolver solver(K);

    GpWeights w;
    w.ratio = ratio;
    w.jitter_used = solver.jitter_used();
    w.offsets = fine_offsets(ratio);

    const Eigen::VectorXd z = solver.solve(Eigen::VectorXd::Ones(K.n));
    w.mle_weights = z / z.sum();

    w.interp_weights.reserve(w.offsets.size());
    for (const auto& [oy, ox] : w.offsets) {
        Eigen::VectorXd kstar(K.n);
        for (int m = 0; m < K.n; ++m)
            kstar(m) = matern32(std::hypot(oy - coords[m].first, ox - coords[m].second), cfg);
        w.interp_weights.push_back(solver.solve(kstar)); // K symmetric: K^-1 k* == (k*^T K^-1)^T
    }
    return w;
}

} // namespace gpocr
