#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gpocr {

enum class Kernel1d { SquaredExponential, Matern32 };

// Noise-free 1-D GP regression with zero prior mean and unit output scale.
struct Gp1dFit {
    std::vector<double> mean;
    std::vector<double> sd;
    double jitter_used = 0.0;
};

Gp1dFit fit_gp_1d(const std::vector<double>& train_x, const std::vector<double>& train_y,
                  const std::vector<double>& eval_x, Kernel1d kernel, double ell = 1.0);

// Training set of the 1-D demo: 10 draws X~U(0,5), Y=sin((X-2.5)^2).
void demo_training_set(std::uint64_t seed, std::vector<double>& x, std::vector<double>& y);

struct Demo1dRow {
    double x = 0.0;
    int y_train_flag = 0;
    double se_mean = 0.0, se_sd = 0.0;
    double m32_mean = 0.0, m32_sd = 0.0;
    double se_prior[3] = {0, 0, 0};
    double m32_prior[3] = {0, 0, 0};
};

struct Demo1dTable {
    std::vector<Demo1dRow> rows; // 200 grid rows (flag 0) + 10 training rows (flag 1), sorted by x
};

Demo1dTable demo_1d_fit(std::uint64_t seed);

void write_demo_csv(const Demo1dTable& t, const std::string& path);
void write_demo_svg(const Demo1dTable& t, const std::string& path);

} // namespace gpocr
