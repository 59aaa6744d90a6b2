#pragma once
// Dense Levenberg-Marquardt least squares with a minimum-norm Gauss-Newton
// polish. The unitarity systems solved here are gauge-degenerate (continuous
// families of solutions), so the Jacobian is rank-deficient at the solution;
// plain LM stalls around 1e-10 while an SVD-based minimum-norm Newton step
// lands at machine precision.

#include <Eigen/Dense>
#include <functional>
#include <random>

#include "linalg.hpp"

namespace commsq {

using ResidualFn = std::function<VecD(const VecD&)>;

inline MatD numeric_jacobian(const ResidualFn& fn, const VecD& x, const VecD& r0) {
    const double h = 1.49e-8;  // ~sqrt(machine eps)
    MatD J(r0.size(), x.size());
    VecD xp = x;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        double step = h * std::max(1.0, std::abs(x(k)));
        xp(k) = x(k) + step;
        J.col(k) = (fn(xp) - r0) / step;
        xp(k) = x(k);
    }
    return J;
}

struct LeastSquaresResult {
    VecD x;
    double max_residual = 0.0;
    int iterations = 0;
};

// One LM run from a given start point, then up to a few minimum-norm polish
// steps. Returns the best point found.
inline LeastSquaresResult levenberg_marquardt(const ResidualFn& fn, VecD x,
                                              int max_iter = 400) {
    VecD r = fn(x);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    int it = 0;
    for (; it < max_iter; ++it) {
        MatD J = numeric_jacobian(fn, x, r);
        MatD A = J.transpose() * J;
        VecD g = J.transpose() * r;
        if (g.lpNorm<Eigen::Infinity>() < 1e-14) break;
        VecD diag = A.diagonal().cwiseMax(1e-12);
        bool accepted = false;
        for (int tries = 0; tries < 40; ++tries) {
            MatD Ad = A;
            Ad.diagonal() += lambda * diag;
            VecD d = Ad.ldlt().solve(-g);
            VecD xn = x + d;
            VecD rn = fn(xn);
            double cn = rn.squaredNorm();
            if (cn < cost) {
                double rel = d.norm() / (x.norm() + 1e-12);
                x = xn;
                r = rn;
                cost = cn;
                lambda = std::max(lambda * 0.3, 1e-12);
                accepted = true;
                if (rel < 1e-14) it = max_iter;  // converged in x
                break;
            }
            lambda *= 2.0;
            if (lambda > 1e12) break;
        }
        if (!accepted) break;
        if (cost < 1e-28) break;
    }
    // Minimum-norm Gauss-Newton polish.
    for (int k = 0; k < 4; ++k) {
        MatD J = numeric_jacobian(fn, x, r);
        Eigen::BDCSVD<MatD> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-8);
        VecD d = svd.solve(-r);
        VecD xn = x + d;
        VecD rn = fn(xn);
        if (rn.squaredNorm() < cost) {
            x = xn;
            r = rn;
            cost = r.squaredNorm();
        } else {
            break;
        }
        if (cost < 1e-28) break;
    }
    return {x, r.lpNorm<Eigen::Infinity>(), it};
}

// Multi-start driver: trial 0 seeds every unknown deterministically at
// (1, 0); later trials draw from N(0, 0.7^2) with a fixed generator.
inline LeastSquaresResult solve_least_squares(const ResidualFn& fn, int nvars,
                                              int trials = 12,
                                              unsigned seed = 0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 0.7);
    LeastSquaresResult best;
    best.max_residual = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        VecD x0(nvars);
        if (t == 0) {
            for (int k = 0; k < nvars; ++k) x0(k) = (k % 2 == 0) ? 1.0 : 0.0;
        } else {
            for (int k = 0; k < nvars; ++k) x0(k) = gauss(rng);
        }
        LeastSquaresResult res = levenberg_marquardt(fn, x0);
        if (res.max_residual < best.max_residual) best = res;
        if (best.max_residual < 1e-12) break;
    }
    return best;
}

}  // namespace commsq
