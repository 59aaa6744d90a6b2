#pragma once
// The 1-parameter family of bi-unitary connections on the 4-stars
// S(i,i,j,j): closed-form constants from Perron-Frobenius data, the t(s)
// curve, the central 4x4 block, and the full connection on the star square.

#include <cmath>

#include "connection_core.hpp"
#include "graph_core.hpp"

namespace commsq {

// S(i,i,j,j): arms a,d of length i and b,c of length j; the generic
// make_star ordering gives exactly this with arm letters a,b,c,d.
inline BipartiteGraph fourstar_graph(int i, int j) {
    return make_star({i, j, j, i});
}

struct FourStarConstants {
    int i = 0, j = 0;
    double norm = 0.0;
    double alpha1 = 0, alpha2 = 0, alpha3 = 0, beta = 0, xi = 0;
    std::map<std::string, double> lambda;  // PF values over all star vertices
    // Row/column order of the central block. The closed forms need
    // alpha3 >= beta >= alpha1 (the arccos range), so when the j-arms carry
    // the larger first-vertex weight the two arm pairs swap roles.
    std::vector<std::string> order;
};

// PF data over all vertices of S(i,i,j,j), anchored at the center = 1.
inline std::pair<double, std::map<std::string, double>> fourstar_pf(int i, int j) {
    BipartiteGraph g = fourstar_graph(i, j);
    SpectralData sd = spectral(g, 1e-12, "A", 1.0);
    std::map<std::string, double> lam = sd.pf_left;
    lam.insert(sd.pf_right.begin(), sd.pf_right.end());
    return {sd.norm, lam};
}

inline FourStarConstants fourstar_constants(int i, int j) {
    if (i < 1 || j < 1) throw std::invalid_argument("fourstar_constants: arms must be >= 1");
    auto [norm, lam] = fourstar_pf(i, j);
    double lA = lam.at("A"), la1 = lam.at("a1"), lb1 = lam.at("b1");
    FourStarConstants c;
    c.i = i;
    c.j = j;
    c.norm = norm;
    c.lambda = lam;
    c.order = {"a1", "b1", "c1", "d1"};
    if (lb1 > la1) {
        std::swap(la1, lb1);
        c.order = {"b1", "a1", "d1", "c1"};
    }
    c.alpha2 = std::sqrt(la1 * lb1) / lA;
    c.alpha3 = la1 / lA;
    c.beta = lb1 / lA;
    double a1sq = 1 - 2 * c.alpha2 * c.alpha2 - c.alpha3 * c.alpha3;
    double xisq = 1 - 2 * c.alpha2 * c.alpha2 - c.beta * c.beta;
    if (a1sq < -1e-12 || xisq < -1e-12)
        throw std::runtime_error("fourstar_constants: normalization identity violated");
    c.alpha1 = std::sqrt(std::max(0.0, a1sq));
    c.xi = std::sqrt(std::max(0.0, xisq));
    return c;
}

inline double t_of_s(const FourStarConstants& c, double s) {
    double arg = (c.beta * c.beta - c.xi * c.xi + c.alpha1 * c.alpha1 * std::cos(s)) /
                 (c.alpha3 * c.alpha3);
    if (arg > 1 + 1e-12 || arg < -1 - 1e-12)
        throw std::runtime_error("t_of_s: arccos argument out of range");
    arg = std::clamp(arg, -1.0, 1.0);
    return 0.5 * (s - std::acos(arg));
}

struct FamilyPoint {
    double s = 0, t = 0;
    Complex w, z1, z2, z3;
    MatC block;  // unitary 4x4 with first row (alpha1, alpha2, alpha2, alpha3)
};

inline FamilyPoint family_point(const FourStarConstants& c, double s) {
    const double a1 = c.alpha1, a2 = c.alpha2, a3 = c.alpha3, be = c.beta, xi = c.xi;
    FamilyPoint fp;
    fp.s = s;
    fp.t = t_of_s(c, s);
    fp.z3 = std::polar(1.0, fp.t);
    fp.w = std::polar(1.0, s);
    fp.z1 = -(a1 * (1.0 + fp.w) + a3 * (fp.z3 - fp.w * std::conj(fp.z3))) / (2 * xi);
    fp.z2 = -(a1 * (1.0 - fp.w) + a3 * (fp.z3 + fp.w * std::conj(fp.z3))) / (2 * be);
    Complex x1 = -fp.w * std::conj(fp.z2);
    Complex x2 = fp.w * std::conj(fp.z1);
    Complex x3 = -fp.z3;
    VecC r1(4), r2(4), r3(4);
    r1 << a1, a2, a2, a3;
    r2 << a2, xi * fp.z1, be * fp.z2, a2 * fp.z3;
    r3 << a2, be * x1, xi * x2, a2 * x3;
    auto comp = complete_orthonormal({r1, r2, r3}, 4);
    VecC r4 = comp[0];
    // phase anchor: first entry of the completed row made positive (= alpha3)
    r4 /= r4(0) / std::abs(r4(0));
    fp.block = MatC(4, 4);
    fp.block.row(0) = r1.transpose();
    fp.block.row(1) = r2.transpose();
    fp.block.row(2) = r3.transpose();
    fp.block.row(3) = r4.transpose();
    return fp;
}

// The square over the star: the bipartite split of S(i,i,j,j), with the same
// graph on all four sides (A vertical twice, A / A^T horizontal).
inline SquareShape fourstar_shape(int i, int j) {
    BipartiteGraph g = fourstar_graph(i, j);
    MatI A = g.adj;
    return SquareShape(g.left, g.right, g.right, g.left, A, A, A.transpose(),
                       A.transpose());
}

struct FamilyConnection {
    Connection connection;
    FamilyPoint point;
    double residual = 0.0;
};

inline FamilyConnection family_connection(int i, int j, double s) {
    FourStarConstants c = fourstar_constants(i, j);
    SquareShape sh = fourstar_shape(i, j);
    Connection b(sh, c.lambda, c.lambda);
    FamilyPoint fp = family_point(c, s);
    // central 4x4 cell (A,A)
    for (int ri = 0; ri < 4; ++ri)
        for (int ci = 0; ci < 4; ++ci) {
            MatC blk(1, 1);
            blk(0, 0) = fp.block(ri, ci);
            b.set_u("A", "A", c.order[ri], c.order[ci], blk);
        }
    // remaining scalar u cells on odd-length arms are pinned to 1; cells on
    // even-length arms close a forced phase chain at the tip (which must
    // track s), so those stay free for the solver
    std::map<char, int> arms{{'a', i}, {'b', j}, {'c', j}, {'d', i}};
    for (const auto& [p, ss] : sh.u_cells()) {
        if (p == "A" && ss == "A") continue;
        bool even_arm = false;
        for (const std::string& v : {p, ss})
            if (v != "A" && arms.at(v[0]) % 2 == 0) even_arm = true;
        if (even_arm) continue;
        Groups ro = sh.u_rows(p, ss);
        if (groups_total(ro) == 1) {
            MatC one(1, 1);
            one(0, 0) = 1.0;
            b.set_u(p, ss, ro[0].first, sh.u_cols(p, ss)[0].first, one);
        }
    }
    double res = b.solve_rest();
    return {std::move(b), fp, res};
}

inline bool family_distinct(int i, int j, double s1, double s2, double tol = 1e-10) {
    FourStarConstants c = fourstar_constants(i, j);
    MatC d = family_point(c, s1).block - family_point(c, s2).block;
    return max_abs(d) > tol;
}

// norm^2 of S(i,i,j,j); arm length 60 serves as the infinite-arm proxy.
inline double fourstar_index(int i, int j) {
    auto [norm, lam] = fourstar_pf(i, j);
    (void)lam;
    return norm * norm;
}

struct IndexTable {
    int max = 0;
    std::vector<std::vector<double>> cell;  // [i-1][j-1], j >= i
    std::vector<double> limit_row;          // arm length 60 proxy for j = inf
    double limit_corner = 0.0;              // both arms long
};

inline IndexTable index_table(int imax, int jmax) {
    IndexTable tb;
    tb.max = imax;
    for (int i = 1; i <= imax; ++i) {
        std::vector<double> row;
        for (int j = i; j <= jmax; ++j) row.push_back(fourstar_index(i, j));
        tb.cell.push_back(row);
    }
    for (int i = 1; i <= imax; ++i) tb.limit_row.push_back(fourstar_index(i, 60));
    tb.limit_corner = fourstar_index(60, 60);
    return tb;
}

}  // namespace commsq
