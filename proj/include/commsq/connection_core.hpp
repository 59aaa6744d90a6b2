#pragma once
// Block layout of connection unitaries from two-step path counts, the
// weighted bi-duality transform, partial assignment with duality
// write-through, and unitarity verification.
//
// Conventions:
//   SquareShape: G: P x Q (left vertical), H: P x R (bottom horizontal),
//   K: Q x S (top horizontal), L: R x S (right vertical).
//   Nondegenerate: G K == H L and G^T H == K L^T, exact integers.
//   u cells: (p,s) with (GK)[p,s] > 0; inside a cell, rows are grouped by q
//   (group height K[q,s], requires G[p,q] > 0) and columns by r (group width
//   H[p,r], requires L[r,s] > 0). v cells: (q,r) with (G^T H)[q,r] > 0,
//   rows grouped by p, columns by s.
//   Bi-duality: v^{(q,r)}_{p,s} = w(p,q,r,s) * conj(u^{(p,s)}_{q,r})^T with
//   w = sqrt(lambda(p) eta(s) / (lambda(q) eta(r))).

#include <Eigen/Dense>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "linalg.hpp"
#include "solver.hpp"

namespace commsq {

using Cell = std::pair<std::string, std::string>;
using Groups = std::vector<std::pair<std::string, int>>;  // (vertex, size)
using MaskB = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

inline int groups_total(const Groups& g) {
    int t = 0;
    for (const auto& [_, n] : g) t += n;
    return t;
}

inline std::pair<int, int> group_offset(const Groups& g, const std::string& v) {
    int off = 0;
    for (const auto& [name, n] : g) {
        if (name == v) return {off, n};
        off += n;
    }
    throw std::invalid_argument("vertex " + v + " not in block group");
}

struct SquareShape {
    std::vector<std::string> P, Q, R, S;
    MatI G, H, K, L;

    SquareShape() = default;
    SquareShape(std::vector<std::string> P_, std::vector<std::string> Q_,
                std::vector<std::string> R_, std::vector<std::string> S_,
                MatI G_, MatI H_, MatI K_, MatI L_)
        : P(std::move(P_)), Q(std::move(Q_)), R(std::move(R_)), S(std::move(S_)),
          G(std::move(G_)), H(std::move(H_)), K(std::move(K_)), L(std::move(L_)) {
        if (G.rows() != (int)P.size() || G.cols() != (int)Q.size() ||
            H.rows() != (int)P.size() || H.cols() != (int)R.size() ||
            K.rows() != (int)Q.size() || K.cols() != (int)S.size() ||
            L.rows() != (int)R.size() || L.cols() != (int)S.size())
            throw std::invalid_argument("SquareShape: matrix dimensions do not match labels");
    }

    int pi(const std::string& v) const { return idx(P, v); }
    int qi(const std::string& v) const { return idx(Q, v); }
    int ri(const std::string& v) const { return idx(R, v); }
    int si(const std::string& v) const { return idx(S, v); }

    bool nondegenerate() const {
        return (G * K == H * L) && (G.transpose() * H == K * L.transpose());
    }

    std::vector<Cell> u_cells() const {
        MatI GK = G * K;
        std::vector<Cell> out;
        for (size_t i = 0; i < P.size(); ++i)
            for (size_t j = 0; j < S.size(); ++j)
                if (GK(i, j) > 0) out.push_back({P[i], S[j]});
        return out;
    }
    Groups u_rows(const std::string& p, const std::string& s) const {
        int i = pi(p), j = si(s);
        Groups out;
        for (size_t k = 0; k < Q.size(); ++k)
            if (G(i, k) > 0 && K(k, j) > 0) out.push_back({Q[k], K(k, j)});
        return out;
    }
    Groups u_cols(const std::string& p, const std::string& s) const {
        int i = pi(p), j = si(s);
        Groups out;
        for (size_t k = 0; k < R.size(); ++k)
            if (H(i, k) > 0 && L(k, j) > 0) out.push_back({R[k], H(i, k)});
        return out;
    }

    std::vector<Cell> v_cells() const {
        MatI GtH = G.transpose() * H;
        std::vector<Cell> out;
        for (size_t i = 0; i < Q.size(); ++i)
            for (size_t j = 0; j < R.size(); ++j)
                if (GtH(i, j) > 0) out.push_back({Q[i], R[j]});
        return out;
    }
    Groups v_rows(const std::string& q, const std::string& r) const {
        int i = qi(q), j = ri(r);
        Groups out;
        for (size_t k = 0; k < P.size(); ++k)
            if (G(k, i) > 0 && H(k, j) > 0) out.push_back({P[k], H(k, j)});
        return out;
    }
    Groups v_cols(const std::string& q, const std::string& r) const {
        int i = qi(q), j = ri(r);
        Groups out;
        for (size_t k = 0; k < S.size(); ++k)
            if (K(i, k) > 0 && L(j, k) > 0) out.push_back({S[k], K(i, k)});
        return out;
    }

  private:
    static int idx(const std::vector<std::string>& v, const std::string& n) {
        for (size_t k = 0; k < v.size(); ++k)
            if (v[k] == n) return (int)k;
        throw std::invalid_argument("unknown vertex " + n);
    }
};

inline bool check_nondegenerate(const SquareShape& shape) { return shape.nondegenerate(); }

// Summary of the block structure on one side (u or v).
struct BlockLayout {
    struct CellInfo {
        Cell cell;
        Groups rows, cols;
        int size = 0;
    };
    std::vector<CellInfo> cells;

    // Number of cells of each square size, e.g. {4:2, 3:6, 1:6}.
    std::map<int, int> size_histogram() const {
        std::map<int, int> h;
        for (const auto& c : cells) h[c.size]++;
        return h;
    }
};

inline BlockLayout block_layout(const SquareShape& shape, char side = 'u') {
    if (!shape.nondegenerate())
        throw std::invalid_argument("block_layout: shape is degenerate");
    BlockLayout lay;
    auto cells = (side == 'u') ? shape.u_cells() : shape.v_cells();
    for (const auto& c : cells) {
        BlockLayout::CellInfo info;
        info.cell = c;
        info.rows = (side == 'u') ? shape.u_rows(c.first, c.second)
                                  : shape.v_rows(c.first, c.second);
        info.cols = (side == 'u') ? shape.u_cols(c.first, c.second)
                                  : shape.v_cols(c.first, c.second);
        info.size = groups_total(info.rows);
        if (info.size != groups_total(info.cols))
            throw std::runtime_error("block_layout: non-square cell " + c.first + "," + c.second);
        lay.cells.push_back(std::move(info));
    }
    return lay;
}

inline double weight(double lam_p, double lam_q, double eta_r, double eta_s) {
    if (lam_p <= 0 || lam_q <= 0 || eta_r <= 0 || eta_s <= 0)
        throw std::invalid_argument("weight: nonpositive Perron-Frobenius value");
    return std::sqrt(lam_p * eta_s / (lam_q * eta_r));
}

struct VerificationReport {
    double max_unitarity_residual_u = 0.0;
    double max_unitarity_residual_v = 0.0;
    bool nondegenerate = false;
    // (side, cell, block size, residual) in deterministic cell order
    struct Row {
        char side;
        Cell cell;
        int size;
        double residual;
    };
    std::vector<Row> per_block;

    bool pass(double tol) const {
        return nondegenerate && max_unitarity_residual_u <= tol &&
               max_unitarity_residual_v <= tol;
    }
};

// A connection under construction: u blocks with a known-mask, v maintained
// implicitly through the bi-duality relation (writes to v land in u).
class Connection {
  public:
    SquareShape sh;
    std::map<std::string, double> lam, eta;
    std::map<Cell, MatC> u;
    std::map<Cell, MaskB> known;

    Connection() = default;
    Connection(SquareShape shape, std::map<std::string, double> lambda,
               std::map<std::string, double> eta_)
        : sh(std::move(shape)), lam(std::move(lambda)), eta(std::move(eta_)) {
        for (const auto& c : sh.u_cells()) {
            int n1 = groups_total(sh.u_rows(c.first, c.second));
            int n2 = groups_total(sh.u_cols(c.first, c.second));
            if (n1 != n2)
                throw std::invalid_argument("non-square u cell " + c.first + "," + c.second);
            u[c] = MatC::Zero(n1, n1);
            known[c] = MaskB::Constant(n1, n1, false);
        }
    }

    double w(const std::string& p, const std::string& q, const std::string& r,
             const std::string& s) const {
        return weight(lam.at(p), lam.at(q), eta.at(r), eta.at(s));
    }

    struct Range {
        int i0, m, j0, n;
    };
    Range u_block_range(const std::string& p, const std::string& s,
                        const std::string& q, const std::string& r) const {
        auto [i0, m] = group_offset(sh.u_rows(p, s), q);
        auto [j0, n] = group_offset(sh.u_cols(p, s), r);
        return {i0, m, j0, n};
    }

    void set_u(const std::string& p, const std::string& s, const std::string& q,
               const std::string& r, const MatC& blk, bool check = true) {
        Range rg = u_block_range(p, s, q, r);
        if (blk.rows() != rg.m || blk.cols() != rg.n)
            throw std::invalid_argument("set_u: block size mismatch at (" + p + "," + s +
                                        ")[" + q + "," + r + "]");
        Cell c{p, s};
        auto& U = u.at(c);
        auto& kn = known.at(c);
        if (check) {
            for (int i = 0; i < rg.m; ++i)
                for (int j = 0; j < rg.n; ++j)
                    if (kn(rg.i0 + i, rg.j0 + j) &&
                        std::abs(U(rg.i0 + i, rg.j0 + j) - blk(i, j)) > 1e-9)
                        throw std::runtime_error("set_u: conflicting assignment at (" + p +
                                                 "," + s + ")[" + q + "," + r + "]");
        }
        U.block(rg.i0, rg.j0, rg.m, rg.n) = blk;
        kn.block(rg.i0, rg.j0, rg.m, rg.n).setConstant(true);
    }

    std::pair<MatC, MaskB> get_u(const std::string& p, const std::string& s,
                                 const std::string& q, const std::string& r) const {
        Range rg = u_block_range(p, s, q, r);
        Cell c{p, s};
        return {u.at(c).block(rg.i0, rg.j0, rg.m, rg.n),
                known.at(c).block(rg.i0, rg.j0, rg.m, rg.n)};
    }

    void set_v(const std::string& q, const std::string& r, const std::string& p,
               const std::string& s, const MatC& blk, bool check = true) {
        set_u(p, s, q, r, blk.adjoint() / w(p, q, r, s), check);
    }

    std::pair<MatC, MaskB> get_v(const std::string& q, const std::string& r,
                                 const std::string& p, const std::string& s) const {
        auto [ub, kn] = get_u(p, s, q, r);
        return {w(p, q, r, s) * ub.adjoint(), kn.transpose()};
    }

    std::pair<MatC, MaskB> v_matrix(const std::string& q, const std::string& r) const {
        Groups ro = sh.v_rows(q, r), co = sh.v_cols(q, r);
        int n1 = groups_total(ro), n2 = groups_total(co);
        if (n1 != n2) throw std::runtime_error("non-square v cell " + q + "," + r);
        MatC V = MatC::Zero(n1, n1);
        MaskB kn = MaskB::Constant(n1, n1, false);
        int i0 = 0;
        for (const auto& [p, m] : ro) {
            int j0 = 0;
            for (const auto& [s, n] : co) {
                auto [blk, bk] = get_v(q, r, p, s);
                V.block(i0, j0, m, n) = blk;
                kn.block(i0, j0, m, n) = bk;
                j0 += n;
            }
            i0 += m;
        }
        return {V, kn};
    }

    int unknown_count() const {
        int t = 0;
        for (const auto& [_, kn] : known) t += (int)(kn.size() - kn.count());
        return t;
    }

    // Maximum unitarity residual over all u and v cells (assumes fully known).
    double verify_residual() const {
        double worst = 0.0;
        for (const auto& [c, U] : u) worst = std::max(worst, unitarity_residual(U));
        for (const auto& c : sh.v_cells())
            worst = std::max(worst, unitarity_residual(v_matrix(c.first, c.second).first));
        return worst;
    }

    VerificationReport verify() const {
        VerificationReport rep;
        rep.nondegenerate = sh.nondegenerate();
        for (const auto& [c, U] : u) {
            double res = unitarity_residual(U);
            rep.max_unitarity_residual_u = std::max(rep.max_unitarity_residual_u, res);
            rep.per_block.push_back({'u', c, (int)U.rows(), res});
        }
        for (const auto& c : sh.v_cells()) {
            MatC V = v_matrix(c.first, c.second).first;
            double res = unitarity_residual(V);
            rep.max_unitarity_residual_v = std::max(rep.max_unitarity_residual_v, res);
            rep.per_block.push_back({'v', c, (int)V.rows(), res});
        }
        return rep;
    }

    // Fill the remaining unknown entries by least squares over all unitarity
    // residuals (u and v cells). Deterministic multi-start; returns the final
    // verification residual and marks everything known.
    double solve_rest(unsigned seed = 0, int trials = 12) {
        std::vector<std::tuple<Cell, int, int>> idx;
        for (const auto& [c, kn] : known)
            for (int i = 0; i < kn.rows(); ++i)
                for (int j = 0; j < kn.cols(); ++j)
                    if (!kn(i, j)) idx.push_back({c, i, j});
        if (idx.empty()) return verify_residual();

        auto vcells = sh.v_cells();
        int resid_len = 0;
        for (const auto& [c, U] : u) resid_len += 2 * (int)U.size();
        for (const auto& c : vcells) {
            int n = groups_total(sh.v_rows(c.first, c.second));
            resid_len += 2 * n * n;
        }
        auto fn = [&](const VecD& x) -> VecD {
            for (size_t t = 0; t < idx.size(); ++t) {
                const auto& [c, i, j] = idx[t];
                u.at(c)(i, j) = Complex(x(2 * t), x(2 * t + 1));
            }
            VecD out(resid_len);
            int pos = 0;
            auto push = [&](const MatC& B) {
                MatC Rm = B.adjoint() * B;
                Rm -= MatC::Identity(B.rows(), B.cols());
                for (Eigen::Index a = 0; a < Rm.rows(); ++a)
                    for (Eigen::Index b = 0; b < Rm.cols(); ++b) {
                        out(pos++) = Rm(a, b).real();
                        out(pos++) = Rm(a, b).imag();
                    }
            };
            for (const auto& [c, U] : u) push(U);
            for (const auto& c : vcells) push(v_matrix(c.first, c.second).first);
            return out;
        };
        LeastSquaresResult best =
            solve_least_squares(fn, 2 * (int)idx.size(), trials, seed);
        fn(best.x);  // write the best solution back into the blocks
        for (auto& [_, kn] : known) kn.setConstant(true);
        return verify_residual();
    }
};

// The dual connection: v becomes the primary family of unitaries, on the
// shape with the roles of the two path decompositions exchanged.
inline Connection bi_dual(const Connection& c) {
    SquareShape d(c.sh.Q, c.sh.P, c.sh.S, c.sh.R, c.sh.G.transpose(), c.sh.K,
                  c.sh.H, c.sh.L.transpose());
    std::map<std::string, double> dl, de;
    for (const auto& v : d.P) dl[v] = c.lam.at(v);
    for (const auto& v : d.Q) dl[v] = c.lam.at(v);
    for (const auto& v : d.R) de[v] = c.eta.at(v);
    for (const auto& v : d.S) de[v] = c.eta.at(v);
    Connection out(d, dl, de);
    for (const auto& qr : c.sh.v_cells())
        out.u.at(qr) = c.v_matrix(qr.first, qr.second).first;
    for (auto& [_, kn] : out.known) kn.setConstant(true);
    return out;
}

// ---- serialization ----

inline std::string decimal30(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.30g", x);
    return buf;
}

inline nlohmann::json matrix_to_json(const MatI& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline MatI matrix_from_json(const nlohmann::json& j, int rows, int cols) {
    MatI m(rows, cols);
    if ((int)j.size() != rows) throw std::invalid_argument("matrix row count mismatch");
    for (int i = 0; i < rows; ++i) {
        if ((int)j[i].size() != cols) throw std::invalid_argument("matrix col count mismatch");
        for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<int>();
    }
    return m;
}

inline nlohmann::json connection_to_json(const Connection& c) {
    nlohmann::json j;
    j["P"] = c.sh.P;
    j["Q"] = c.sh.Q;
    j["R"] = c.sh.R;
    j["S"] = c.sh.S;
    j["G"] = matrix_to_json(c.sh.G);
    j["H"] = matrix_to_json(c.sh.H);
    j["K"] = matrix_to_json(c.sh.K);
    j["L"] = matrix_to_json(c.sh.L);
    nlohmann::json lamj, etaj;
    for (const auto& [k, v] : c.lam) lamj[k] = decimal30(v);
    for (const auto& [k, v] : c.eta) etaj[k] = decimal30(v);
    j["lambda"] = lamj;
    j["eta"] = etaj;
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [cell, U] : c.u) {
        nlohmann::json cj;
        cj["p"] = cell.first;
        cj["s"] = cell.second;
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < U.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index jj = 0; jj < U.cols(); ++jj)
                row.push_back({U(i, jj).real(), U(i, jj).imag()});
            rows.push_back(row);
        }
        cj["block"] = rows;
        cells.push_back(cj);
    }
    j["u"] = cells;
    return j;
}

inline Connection connection_from_json(const nlohmann::json& j) {
    std::vector<std::string> P = j.at("P"), Q = j.at("Q"), R = j.at("R"), S = j.at("S");
    SquareShape sh(P, Q, R, S, matrix_from_json(j.at("G"), P.size(), Q.size()),
                   matrix_from_json(j.at("H"), P.size(), R.size()),
                   matrix_from_json(j.at("K"), Q.size(), S.size()),
                   matrix_from_json(j.at("L"), R.size(), S.size()));
    std::map<std::string, double> lam, eta;
    for (auto it = j.at("lambda").begin(); it != j.at("lambda").end(); ++it)
        lam[it.key()] = std::stod(it.value().get<std::string>());
    for (auto it = j.at("eta").begin(); it != j.at("eta").end(); ++it)
        eta[it.key()] = std::stod(it.value().get<std::string>());
    Connection c(sh, lam, eta);
    for (const auto& cj : j.at("u")) {
        Cell cell{cj.at("p").get<std::string>(), cj.at("s").get<std::string>()};
        auto it = c.u.find(cell);
        if (it == c.u.end())
            throw std::invalid_argument("connection JSON: unknown cell " + cell.first +
                                        "," + cell.second);
        auto rows = cj.at("block");
        MatC& U = it->second;
        if ((int)rows.size() != U.rows())
            throw std::invalid_argument("connection JSON: block size mismatch");
        for (int i = 0; i < U.rows(); ++i) {
            if ((int)rows[i].size() != U.cols())
                throw std::invalid_argument("connection JSON: block size mismatch");
            for (int jj = 0; jj < U.cols(); ++jj)
                U(i, jj) = Complex(rows[i][jj][0].get<double>(),
                                   rows[i][jj][1].get<double>());
        }
        c.known.at(cell).setConstant(true);
    }
    if (c.unknown_count() != 0)
        throw std::invalid_argument("connection JSON: missing cells");
    return c;
}

}  // namespace commsq
