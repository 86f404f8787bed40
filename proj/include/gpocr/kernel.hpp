#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace gpocr {

// Matérn-3/2 hyper-parameters. sigma and nu are fixed by design; ell is the
// length scale in low-resolution pixel units.
struct KernelConfig {
    double sigma = 1.0;
    double ell = 20.0;
    double nu = 1.5;
};

struct CovMatrix {
    int n = 0;
    Eigen::MatrixXd entries;
    double jitter_used = 0.0;
};

// Precomputed upsampling weights for one (ratio, kernel) pair. Image-content
// independent: computed once, applied to every window.
struct GpWeights {
    int ratio = 0;
    std::vector<Eigen::VectorXd> interp_weights;       // r^2 vectors of length 25
    Eigen::VectorXd mle_weights;                       // normalized K^-1*1
    std::vector<std::pair<double, double>> offsets;    // (dy,dx) per fine pixel
    double jitter_used = 0.0;
};

double matern32(double distance, const KernelConfig& cfg);

// 20*min(1/h,1/w)*max(h,w): always 20 under the isotropic pixel-unit
// coordinate convention, kept as a formula so the convention is explicit.
double default_length_scale(int h, int w);

CovMatrix build_cov_matrix(const std::vector<std::pair<double, double>>& coords,
                           const KernelConfig& cfg);

// Factor once, solve many. Applies the jitter ladder 1e-10, 1e-8, 1e-6 when
// plain Cholesky fails and records what was added; a level counts only if it
// yields solutions of the original system within the residual contract.
class CholeskySolver {
public:
    explicit CholeskySolver(const CovMatrix& K);
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    double jitter_used() const { return jitter_used_; }

private:
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::MatrixXd original_; // K as given, without jitter
    double jitter_used_ = 0.0;
};

// Solves K x = rhs; records any jitter into K.jitter_used.
Eigen::VectorXd cholesky_solve(CovMatrix& K, const Eigen::VectorXd& rhs);

// The 25 window coordinates (di,dj) in {-2..2}^2, row-major.
std::vector<std::pair<double, double>> window_coords();

// Fine-pixel offsets for ratio r: subcell centers -1/2 + (2k+1)/(2r).
std::vector<std::pair<double, double>> fine_offsets(int ratio);

GpWeights precompute_weights(int ratio, const KernelConfig& cfg);

} // namespace gpocr
