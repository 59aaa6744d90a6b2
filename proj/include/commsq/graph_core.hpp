#pragma once
// Bipartite graphs, Perron-Frobenius spectral data, and the row-norm
// irreducibility bound.

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linalg.hpp"

namespace commsq {

struct BipartiteGraph {
    std::vector<std::string> left;
    std::vector<std::string> right;
    MatI adj;  // |left| x |right|, entry = edge multiplicity

    int left_index(const std::string& v) const {
        auto it = std::find(left.begin(), left.end(), v);
        if (it == left.end()) throw std::invalid_argument("unknown left vertex " + v);
        return (int)(it - left.begin());
    }
    int right_index(const std::string& v) const {
        auto it = std::find(right.begin(), right.end(), v);
        if (it == right.end()) throw std::invalid_argument("unknown right vertex " + v);
        return (int)(it - right.begin());
    }
};

inline BipartiteGraph from_adjacency(std::vector<std::string> left,
                                     std::vector<std::string> right, MatI adj) {
    if (adj.rows() != (Eigen::Index)left.size() || adj.cols() != (Eigen::Index)right.size())
        throw std::invalid_argument("adjacency dimensions do not match label counts");
    auto unique_check = [](const std::vector<std::string>& v) {
        auto s = v;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("duplicate vertex label");
    };
    unique_check(left);
    unique_check(right);
    if (adj.minCoeff() < 0) throw std::invalid_argument("negative adjacency entry");
    if (adj.maxCoeff() == 0) throw std::invalid_argument("all-zero adjacency");
    for (Eigen::Index i = 0; i < adj.rows(); ++i)
        if (adj.row(i).sum() == 0)
            throw std::invalid_argument("isolated left vertex " + left[i]);
    for (Eigen::Index j = 0; j < adj.cols(); ++j)
        if (adj.col(j).sum() == 0)
            throw std::invalid_argument("isolated right vertex " + right[j]);
    return {std::move(left), std::move(right), std::move(adj)};
}

// m-star S(k_1,...,k_m): central vertex (left side, named "A") with m pendant
// paths. Arm i gets letter 'a'+i-1; vertex k of that arm (distance k from the
// center) is e.g. "b3". Even-distance vertices sit on the left with the
// center, odd-distance on the right. Ordering: center first, arms in input
// order, vertices outward.
inline BipartiteGraph make_star(const std::vector<int>& arm_lengths) {
    if (arm_lengths.empty()) throw std::invalid_argument("make_star: empty arm list");
    if (arm_lengths.size() > 26) throw std::invalid_argument("make_star: too many arms");
    for (int k : arm_lengths)
        if (k < 1) throw std::invalid_argument("make_star: arm length must be positive");
    std::vector<std::string> left{"A"}, right;
    for (size_t a = 0; a < arm_lengths.size(); ++a) {
        char c = (char)('a' + a);
        for (int k = 1; k <= arm_lengths[a]; ++k) {
            std::string name = std::string(1, c) + std::to_string(k);
            (k % 2 == 1 ? right : left).push_back(name);
        }
    }
    MatI adj = MatI::Zero(left.size(), right.size());
    auto gi = [&](const std::vector<std::string>& v, const std::string& n) {
        return (int)(std::find(v.begin(), v.end(), n) - v.begin());
    };
    for (size_t a = 0; a < arm_lengths.size(); ++a) {
        char c = (char)('a' + a);
        std::string prev = "A";
        for (int k = 1; k <= arm_lengths[a]; ++k) {
            std::string cur = std::string(1, c) + std::to_string(k);
            if (k % 2 == 1)
                adj(gi(left, prev), gi(right, cur)) += 1;
            else
                adj(gi(left, cur), gi(right, prev)) += 1;
            prev = cur;
        }
    }
    return from_adjacency(left, right, adj);
}

inline bool is_connected(const BipartiteGraph& g) {
    int m = (int)g.left.size(), n = (int)g.right.size();
    std::vector<bool> seen(m + n, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (v < m) {
            for (int j = 0; j < n; ++j)
                if (g.adj(v, j) > 0 && !seen[m + j]) {
                    seen[m + j] = true;
                    q.push(m + j);
                    ++count;
                }
        } else {
            for (int i = 0; i < m; ++i)
                if (g.adj(i, v - m) > 0 && !seen[i]) {
                    seen[i] = true;
                    q.push(i);
                    ++count;
                }
        }
    }
    return count == m + n;
}

struct SpectralData {
    double norm = 0.0;
    std::map<std::string, double> pf_left;
    std::map<std::string, double> pf_right;
    double residual = 0.0;
};

// Perron-Frobenius data via symmetric eigendecomposition of [[0,A],[A^T,0]].
// Default anchor: the maximum entry of pf_left equals anchor_value (1). If
// anchor_vertex names a left vertex, that entry is anchored instead (the
// explicit constructions anchor e.g. lambda(A0) = 1).
inline SpectralData spectral(const BipartiteGraph& g, double tolerance = 1e-12,
                             const std::string& anchor_vertex = "",
                             double anchor_value = 1.0) {
    if (!is_connected(g)) throw std::invalid_argument("spectral: graph is disconnected");
    int m = (int)g.left.size(), n = (int)g.right.size();
    MatD big = MatD::Zero(m + n, m + n);
    big.topRightCorner(m, n) = g.adj.cast<double>();
    big.bottomLeftCorner(n, m) = g.adj.cast<double>().transpose();
    Eigen::SelfAdjointEigenSolver<MatD> es(big);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectral: eigensolver failed");
    double norm = es.eigenvalues()(m + n - 1);
    VecD v = es.eigenvectors().col(m + n - 1);
    if (v.sum() < 0) v = -v;
    double anchor;
    if (anchor_vertex.empty())
        anchor = v.head(m).maxCoeff();
    else
        anchor = v(g.left_index(anchor_vertex));
    v *= anchor_value / anchor;
    SpectralData sd;
    sd.norm = norm;
    for (int i = 0; i < m; ++i) sd.pf_left[g.left[i]] = v(i);
    for (int j = 0; j < n; ++j) sd.pf_right[g.right[j]] = v(m + j);
    VecD r1 = g.adj.cast<double>() * v.tail(n) - norm * v.head(m);
    VecD r2 = g.adj.cast<double>().transpose() * v.head(m) - norm * v.tail(n);
    sd.residual = std::max(r1.lpNorm<Eigen::Infinity>(), r2.lpNorm<Eigen::Infinity>());
    if (sd.residual > std::max(tolerance, 1e-12) * std::max(1.0, norm) * 100)
        throw std::runtime_error("spectral: residual did not meet tolerance");
    return sd;
}

// Relative-commutant dimension bound: (minimal row 1-norm over the rows of G
// and of L)^2. A bound of 1 forces irreducibility. The column variant is
// exposed because the sources apply the criterion to a column in one place
// (inclusion-orientation convention; see README).
inline long wenzl_bound(const MatI& G, const MatI& L, bool columns = false) {
    long best = std::numeric_limits<long>::max();
    auto scan = [&](const MatI& M) {
        if (!columns) {
            for (Eigen::Index i = 0; i < M.rows(); ++i)
                best = std::min<long>(best, M.row(i).template lpNorm<1>());
        } else {
            for (Eigen::Index j = 0; j < M.cols(); ++j)
                best = std::min<long>(best, M.col(j).template lpNorm<1>());
        }
    };
    scan(G);
    scan(L);
    return best * best;
}

// ---- serialization ----

inline nlohmann::json graph_to_json(const BipartiteGraph& g) {
    nlohmann::json j;
    j["left"] = g.left;
    j["right"] = g.right;
    std::vector<std::vector<int>> rows;
    for (Eigen::Index i = 0; i < g.adj.rows(); ++i) {
        std::vector<int> row;
        for (Eigen::Index c = 0; c < g.adj.cols(); ++c) row.push_back(g.adj(i, c));
        rows.push_back(row);
    }
    j["adj"] = rows;
    return j;
}

inline BipartiteGraph graph_from_json(const nlohmann::json& j) {
    std::vector<std::string> left = j.at("left"), right = j.at("right");
    MatI adj(left.size(), right.size());
    auto rows = j.at("adj");
    if (rows.size() != left.size()) throw std::invalid_argument("adj row count mismatch");
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != right.size())
            throw std::invalid_argument("adj col count mismatch");
        for (size_t c = 0; c < right.size(); ++c) adj(i, c) = rows[i][c].get<int>();
    }
    return from_adjacency(left, right, adj);
}

inline std::string graph_to_dot(const BipartiteGraph& g) {
    std::ostringstream os;
    os << "graph bipartite {\n  rankdir=LR;\n";
    os << "  { rank=same;";
    for (const auto& v : g.left) os << " \"" << v << "\";";
    os << " }\n  { rank=same;";
    for (const auto& v : g.right) os << " \"" << v << "\";";
    os << " }\n";
    for (Eigen::Index i = 0; i < g.adj.rows(); ++i)
        for (Eigen::Index j = 0; j < g.adj.cols(); ++j)
            for (int e = 0; e < g.adj(i, j); ++e)
                os << "  \"" << g.left[i] << "\" -- \"" << g.right[j] << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace commsq
