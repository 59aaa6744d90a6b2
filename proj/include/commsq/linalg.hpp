#pragma once
// Small dense linear-algebra helpers shared by the connection machinery.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace commsq {

using Complex = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using MatD = Eigen::MatrixXd;
using MatI = Eigen::MatrixXi;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;

// Largest |entry| of a complex matrix.
inline double max_abs(const MatC& m) {
    double w = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            w = std::max(w, std::abs(m(i, j)));
    return w;
}

// ||B* B - I||_inf over entries: the unitarity residual of a square block.
inline double unitarity_residual(const MatC& b) {
    MatC r = b.adjoint() * b;
    r -= MatC::Identity(b.rows(), b.cols());
    return max_abs(r);
}

// Deterministic Gram-Schmidt completion: given mutually orthonormal rows,
// append standard-basis candidates e_1, e_2, ... in index order, orthogonalize
// against everything so far and keep the result when it is not (nearly)
// dependent. Returns only the appended vectors, in order.
inline std::vector<VecC> complete_orthonormal(const std::vector<VecC>& rows,
                                              int dim, double dep_tol = 1e-8) {
    std::vector<VecC> basis = rows;
    for (const auto& r : rows) {
        if (r.size() != dim) throw std::invalid_argument("complete_orthonormal: bad row size");
        if (std::abs(r.norm() - 1.0) > 1e-9)
            throw std::invalid_argument("complete_orthonormal: input row not unit");
    }
    std::vector<VecC> out;
    for (int k = 0; k < dim; ++k) {
        VecC cand = VecC::Zero(dim);
        cand(k) = 1.0;
        for (const auto& b : basis) cand -= b.dot(cand) * b;
        double n = cand.norm();
        if (n > dep_tol) {
            cand /= n;
            basis.push_back(cand);
            out.push_back(cand);
        }
        if ((int)basis.size() == dim) break;
    }
    if ((int)basis.size() != dim)
        throw std::runtime_error("complete_orthonormal: could not complete basis");
    return out;
}

// Real-vector variant (used by constructions that stay real).
inline std::vector<VecD> complete_orthonormal_real(const std::vector<VecD>& rows,
                                                   int dim, double dep_tol = 1e-8) {
    std::vector<VecC> cr;
    cr.reserve(rows.size());
    for (const auto& r : rows) cr.push_back(r.cast<Complex>());
    auto cc = complete_orthonormal(cr, dim, dep_tol);
    std::vector<VecD> out;
    out.reserve(cc.size());
    for (const auto& v : cc) out.push_back(v.real());
    return out;
}

inline VecD cross3(const VecD& a, const VecD& b) {
    VecD c(3);
    c << a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
        a(0) * b(1) - a(1) * b(0);
    return c;
}

}  // namespace commsq
