#include "gpocr/demo1d.hpp"
#include "gpocr/error.hpp"
#include "gpocr/kernel.hpp"
#include "gpocr/rng.hpp"
#include "gpocr/svg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace gpocr {
namespace {

double kernel_1d(double d, Kernel1d k, double ell) {
    if (k == Kernel1d::SquaredExponential) return std::exp(-d * d / (2.0 * ell * ell));
    return matern32(d, KernelConfig{1.0, ell, 1.5});
}

Eigen::MatrixXd gram(const std::vector<double>& xs, Kernel1d k, double ell) {
    const int n = static_cast<int>(xs.size());
    Eigen::MatrixXd K(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = kernel_1d(std::abs(xs[i] - xs[j]), k, ell);
            K(i, j) = v;
            K(j, i) = v;
        }
    return K;
}

// Same jitter ladder as CholeskySolver, for plain Gram matrices.
Eigen::LLT<Eigen::MatrixXd> factor_with_jitter(Eigen::MatrixXd K, double& jitter_used) {
    static const double ladder[] = {0.0, 1e-10, 1e-8, 1e-6};
    Eigen::LLT<Eigen::MatrixXd> llt;
    for (double jitter : ladder) {
        Eigen::MatrixXd M = K;
        if (jitter > 0.0) M.diagonal().array() += jitter;
        llt.compute(M);
        if (llt.info() == Eigen::Success) {
            jitter_used = jitter;
            return llt;
        }
    }
    throw NotPositiveDefinite();
}

} // namespace

Gp1dFit fit_gp_1d(const std::vector<double>& tx, const std::vector<double>& ty,
                  const std::vector<double>& ex, Kernel1d kernel, double ell) {
    const int n = static_cast<int>(tx.size());
    Eigen::Map<const Eigen::VectorXd> y(ty.data(), n);

    Gp1dFit fit;
    const auto llt = factor_with_jitter(gram(tx, kernel, ell), fit.jitter_used);
    const Eigen::VectorXd alpha = llt.solve(y);

    fit.mean.resize(ex.size());
    fit.sd.resize(ex.size());
    Eigen::VectorXd kstar(n);
    for (std::size_t e = 0; e < ex.size(); ++e) {
        for (int i = 0; i < n; ++i) kstar(i) = kernel_1d(std::abs(ex[e] - tx[i]), kernel, ell);
        fit.mean[e] = kstar.dot(alpha);
        const double var = 1.0 - kstar.dot(llt.solve(kstar));
        fit.sd[e] = std::sqrt(std::max(0.0, var));
    }
    return fit;
}

void demo_training_set(std::uint64_t seed, std::vector<double>& x, std::vector<double>& y) {
    Rng rng(seed);
    x.resize(10);
    y.resize(10);
    for (int i = 0; i < 10; ++i) {
        x[i] = 5.0 * rng.uniform01();
        y[i] = std::sin((x[i] - 2.5) * (x[i] - 2.5));
    }
}

Demo1dTable demo_1d_fit(std::uint64_t seed) {
    std::vector<double> tx, ty;
    demo_training_set(seed, tx, ty);

    std::vector<double> xs;
    std::vector<int> flags;
    for (int j = 0; j < 200; ++j) {
        xs.push_back(5.0 * j / 199.0);
        flags.push_back(0);
    }
    for (double v : tx) {
        xs.push_back(v);
        flags.push_back(1);
    }
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

    std::vector<double> sx(xs.size());
    Demo1dTable t;
    t.rows.resize(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        sx[i] = xs[order[i]];
        t.rows[i].x = sx[i];
        t.rows[i].y_train_flag = flags[order[i]];
    }

    // Prior draws continue the same stream that drew the training abscissae:
    // 3 SE draws then 3 Matérn draws, each consuming 210 gaussians in row order.
    Rng rng(seed);
    for (int i = 0; i < 10; ++i) rng.uniform01();
    const int n = static_cast<int>(sx.size());
    for (int which = 0; which < 2; ++which) {
        const Kernel1d k = which == 0 ? Kernel1d::SquaredExponential : Kernel1d::Matern32;
        double jitter = 0.0;
        const auto llt = factor_with_jitter(gram(sx, k, 1.0), jitter);
        const Eigen::MatrixXd L = llt.matrixL();
        for (int draw = 0; draw < 3; ++draw) {
            Eigen::VectorXd g(n);
            for (int i = 0; i < n; ++i) g(i) = rng.gaussian();
            const Eigen::VectorXd sample = L * g;
            for (int i = 0; i < n; ++i) {
                if (which == 0)
                    t.rows[i].se_prior[draw] = sample(i);
                else
                    t.rows[i].m32_prior[draw] = sample(i);
            }
        }
    }

    const Gp1dFit se = fit_gp_1d(tx, ty, sx, Kernel1d::SquaredExponential);
    const Gp1dFit m32 = fit_gp_1d(tx, ty, sx, Kernel1d::Matern32);
    for (int i = 0; i < n; ++i) {
        t.rows[i].se_mean = se.mean[i];
        t.rows[i].se_sd = se.sd[i];
        t.rows[i].m32_mean = m32.mean[i];
        t.rows[i].m32_sd = m32.sd[i];
    }
    return t;
}

void write_demo_csv(const Demo1dTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "x,y_train_flag,se_mean,se_sd,m32_mean,m32_sd,"
           "se_prior_1,se_prior_2,se_prior_3,m32_prior_1,m32_prior_2,m32_prior_3\n";
    char buf[512];
    for (const auto& r : t.rows) {
        std::snprintf(buf, sizeof buf,
                      "%.12f,%d,%.12f,%.12f,%.12f,%.12f,%.12f,%.12f,%.12f,%.12f,%.12f,%.12f\n",
                      r.x, r.y_train_flag, r.se_mean, r.se_sd, r.m32_mean, r.m32_sd,
                      r.se_prior[0], r.se_prior[1], r.se_prior[2],
                      r.m32_prior[0], r.m32_prior[1], r.m32_prior[2]);
        out << buf;
    }
    if (!out) throw IoError("short write: " + path);
}

void write_demo_svg(const Demo1dTable& t, const std::string& path) {
    SvgPlot plot(900, 420, "1-D GP regression: squared-exponential vs Matérn-3/2");
    double lo = -3.0, hi = 3.0;
    for (const auto& r : t.rows) {
        lo = std::min({lo, r.se_mean - 2 * r.se_sd, r.m32_mean - 2 * r.m32_sd});
        hi = std::max({hi, r.se_mean + 2 * r.se_sd, r.m32_mean + 2 * r.m32_sd});
    }
    plot.set_range(0.0, 5.0, lo, hi);

    std::vector<std::pair<double, double>> pts;
    auto series = [&](auto getter) {
        pts.clear();
        for (const auto& r : t.rows) pts.emplace_back(r.x, getter(r));
        return pts;
    };

    for (int d = 0; d < 3; ++d) {
        plot.polyline(series([&](const Demo1dRow& r) { return r.se_prior[d]; }), "#b8cbe8", 1.0);
        plot.polyline(series([&](const Demo1dRow& r) { return r.m32_prior[d]; }), "#e8c3b8", 1.0);
    }
    plot.band(series([](const Demo1dRow& r) { return r.se_mean - 2 * r.se_sd; }),
              series([](const Demo1dRow& r) { return r.se_mean + 2 * r.se_sd; }), "#3060c0", 0.15);
    plot.band(series([](const Demo1dRow& r) { return r.m32_mean - 2 * r.m32_sd; }),
              series([](const Demo1dRow& r) { return r.m32_mean + 2 * r.m32_sd; }), "#c04030", 0.15);
    plot.polyline(series([](const Demo1dRow& r) { return r.se_mean; }), "#3060c0", 2.0, "SE mean");
    plot.polyline(series([](const Demo1dRow& r) { return r.m32_mean; }), "#c04030", 2.0, "Matérn-3/2 mean");

    for (const auto& r : t.rows)
        if (r.y_train_flag) plot.point(r.x, std::sin((r.x - 2.5) * (r.x - 2.5)), "#000000", 4.0);
    plot.write(path);
}

} // namespace gpocr
