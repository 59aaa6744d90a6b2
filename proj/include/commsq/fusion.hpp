#pragma once
// Fusion rings, fusion bimodules, and the multiplication-map search:
// frontier-by-frontier extension of partial maps with sum-of-squares
// candidate vectors, pairing conditions, and a final associativity check.
//
// Pairing conventions (frozen by the regular Z/2 and Fibonacci oracles, see
// README): the combined pairing uses (xi-bar_{i1} xi_{i2}, eta_{j1}
// eta-bar_{j2}) = sum_b R_K[b]_{i1,i2} L_L[b]_{j2,j1}. The displayed fourth
// condition (with the j-indices swapped) admits no solution at all on the
// regular Z/3 triple; the consistent reading is the transpose of the second
// condition and is therefore implied by it.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linalg.hpp"

namespace commsq {

using IntVec = std::vector<long long>;
// Complete multiplication map: v^{ij} indexed by i*m + j.
using MultMap = std::vector<IntVec>;

struct FusionRing {
    std::vector<std::string> labels;
    int n = 0;
    int unit = 0;
    std::vector<int> dual;          // involution on basis indices
    std::vector<MatI> N;            // N[a](b,c) = multiplicity of c in a*b
    VecD dims;                      // PF dimensions, d(unit) = 1

    int index(const std::string& l) const {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw std::invalid_argument("unknown ring label " + l);
        return (int)(it - labels.begin());
    }
};

namespace fusion_detail {

// PF dimensions: the positive eigenvector of T(b,c) = sum_a N[a](b,c),
// scaled so the unit has dimension 1.
inline VecD ring_dims(const std::vector<MatI>& N, int unit) {
    int n = (int)N.size();
    MatD T = MatD::Zero(n, n);
    for (const auto& M : N) T += M.cast<double>();
    Eigen::EigenSolver<MatD> es(T);
    int best = 0;
    for (int k = 1; k < n; ++k)
        if (es.eigenvalues()(k).real() > es.eigenvalues()(best).real()) best = k;
    VecD v = es.eigenvectors().col(best).real().cwiseAbs();
    return v / v(unit);
}

}  // namespace fusion_detail

// Validates all ring laws, throwing with the failed law named.
inline FusionRing make_fusion_ring(std::vector<std::string> labels, int unit,
                                   std::vector<int> dual, std::vector<MatI> N) {
    FusionRing r;
    r.labels = std::move(labels);
    r.n = (int)r.labels.size();
    r.unit = unit;
    r.dual = std::move(dual);
    r.N = std::move(N);
    if ((int)r.N.size() != r.n) throw std::invalid_argument("ring: N has wrong length");
    for (const auto& M : r.N) {
        if (M.rows() != r.n || M.cols() != r.n)
            throw std::invalid_argument("ring: N matrix has wrong shape");
        if (M.minCoeff() < 0)
            throw std::invalid_argument("ring: negative structure constant");
    }
    if ((int)r.dual.size() != r.n) throw std::invalid_argument("ring: dual has wrong length");
    for (int a = 0; a < r.n; ++a)
        if (r.dual[a] < 0 || r.dual[a] >= r.n || r.dual[r.dual[a]] != a)
            throw std::invalid_argument("ring: dual is not an involution at " + r.labels[a]);
    for (int b = 0; b < r.n; ++b)
        for (int c = 0; c < r.n; ++c)
            if (r.N[r.unit](b, c) != (b == c ? 1 : 0))
                throw std::invalid_argument("ring: unit law fails at (" + r.labels[b] +
                                            "," + r.labels[c] + ")");
    for (int a = 0; a < r.n; ++a)
        for (int b = 0; b < r.n; ++b)
            for (int c = 0; c < r.n; ++c)
                if (r.N[a](b, c) != r.N[r.dual[a]](c, b) ||
                    r.N[a](b, c) != r.N[c](r.dual[b], a))
                    throw std::invalid_argument(
                        "ring: Frobenius reciprocity fails at (" + r.labels[a] + "," +
                        r.labels[b] + "," + r.labels[c] + ")");
    r.dims = fusion_detail::ring_dims(r.N, r.unit);
    for (int a = 0; a < r.n; ++a)
        for (int b = 0; b < r.n; ++b) {
            double acc = 0;
            for (int c = 0; c < r.n; ++c) acc += r.N[a](b, c) * r.dims(c);
            if (std::abs(r.dims(a) * r.dims(b) - acc) > 1e-10)
                throw std::invalid_argument("ring: dimension law fails at (" +
                                            r.labels[a] + "," + r.labels[b] + ")");
        }
    return r;
}

inline FusionRing cyclic_ring(int m) {
    std::vector<std::string> labels;
    std::vector<int> dual;
    std::vector<MatI> N;
    for (int a = 0; a < m; ++a) {
        labels.push_back("g" + std::to_string(a));
        dual.push_back((m - a) % m);
        MatI M = MatI::Zero(m, m);
        for (int b = 0; b < m; ++b) M(b, (a + b) % m) = 1;
        N.push_back(M);
    }
    return make_fusion_ring(labels, 0, dual, N);
}

inline FusionRing fib_ring() {
    MatI N0 = MatI::Identity(2, 2), N1(2, 2);
    N1 << 0, 1, 1, 1;
    return make_fusion_ring({"1", "tau"}, 0, {0, 1}, {N0, N1});
}

// Truncated su(2)-type fusion rules with k simple objects X_0..X_{k-1}:
// X_a X_b = sum X_c over |a-b| <= c <= min(a+b, 2(k-1)-a-b), c = a+b mod 2.
inline FusionRing tl_ring(int k) {
    std::vector<std::string> labels;
    std::vector<int> dual;
    std::vector<MatI> N;
    for (int a = 0; a < k; ++a) {
        labels.push_back("X" + std::to_string(a));
        dual.push_back(a);
        MatI M = MatI::Zero(k, k);
        for (int b = 0; b < k; ++b)
            for (int c = std::abs(a - b); c <= std::min(a + b, 2 * (k - 1) - a - b); c += 2)
                M(b, c) = 1;
        N.push_back(M);
    }
    return make_fusion_ring(labels, 0, dual, N);
}

// A-B fusion bimodule: lam . xi_i = sum_k L[lam](i,k) xi_k and
// xi_i . b = sum_k R[b](i,k) xi_k, with commuting nonnegative actions.
struct FusionBimodule {
    FusionRing A, B;
    std::vector<std::string> basis;
    int n = 0;
    std::vector<MatI> L, R;
    VecD dims;

    int index(const std::string& l) const {
        auto it = std::find(basis.begin(), basis.end(), l);
        if (it == basis.end()) throw std::invalid_argument("unknown bimodule label " + l);
        return (int)(it - basis.begin());
    }
};

inline FusionBimodule make_fusion_bimodule(FusionRing A, FusionRing B,
                                           std::vector<std::string> basis,
                                           std::vector<MatI> L, std::vector<MatI> R,
                                           VecD dims) {
    FusionBimodule M;
    M.A = std::move(A);
    M.B = std::move(B);
    M.basis = std::move(basis);
    M.n = (int)M.basis.size();
    M.L = std::move(L);
    M.R = std::move(R);
    if ((int)M.L.size() != M.A.n || (int)M.R.size() != M.B.n)
        throw std::invalid_argument("bimodule: action count mismatch");
    for (const auto& mats : {M.L, M.R})
        for (const auto& Mat : mats) {
            if (Mat.rows() != M.n || Mat.cols() != M.n)
                throw std::invalid_argument("bimodule: action matrix has wrong shape");
            if (Mat.minCoeff() < 0)
                throw std::invalid_argument("bimodule: negative action entry");
        }
    for (int lam = 0; lam < M.A.n; ++lam)
        for (int mu = 0; mu < M.A.n; ++mu) {
            MatI acc = MatI::Zero(M.n, M.n);
            for (int nu = 0; nu < M.A.n; ++nu) acc += M.A.N[lam](mu, nu) * M.L[nu];
            if (M.L[mu] * M.L[lam] != acc)
                throw std::invalid_argument("bimodule: left module law fails at (" +
                                            M.A.labels[lam] + "," + M.A.labels[mu] + ")");
        }
    for (int b = 0; b < M.B.n; ++b)
        for (int c = 0; c < M.B.n; ++c) {
            MatI acc = MatI::Zero(M.n, M.n);
            for (int e = 0; e < M.B.n; ++e) acc += M.B.N[b](c, e) * M.R[e];
            if (M.R[b] * M.R[c] != acc)
                throw std::invalid_argument("bimodule: right module law fails at (" +
                                            M.B.labels[b] + "," + M.B.labels[c] + ")");
        }
    for (int lam = 0; lam < M.A.n; ++lam)
        for (int b = 0; b < M.B.n; ++b)
            if (M.L[lam] * M.R[b] != M.R[b] * M.L[lam])
                throw std::invalid_argument("bimodule: actions fail to commute at (" +
                                            M.A.labels[lam] + "," + M.B.labels[b] + ")");
    if (dims.size() == 0) {
        // dims unique up to scale (PF vector of the total left action);
        // normalized so the smallest basis dimension is 1
        MatD T = MatD::Zero(M.n, M.n);
        for (const auto& Mat : M.L) T += Mat.cast<double>();
        Eigen::EigenSolver<MatD> es(T);
        int best = 0;
        for (int k = 1; k < M.n; ++k)
            if (es.eigenvalues()(k).real() > es.eigenvalues()(best).real()) best = k;
        VecD v = es.eigenvectors().col(best).real().cwiseAbs();
        dims = v / v.minCoeff();
    }
    if (dims.size() != M.n) throw std::invalid_argument("bimodule: dims has wrong length");
    M.dims = std::move(dims);
    for (int lam = 0; lam < M.A.n; ++lam) {
        VecD lhs = M.A.dims(lam) * M.dims, rhs = M.L[lam].cast<double>() * M.dims;
        if ((lhs - rhs).lpNorm<Eigen::Infinity>() > 1e-9)
            throw std::invalid_argument("bimodule: dimension law fails at " +
                                        M.A.labels[lam]);
    }
    return M;
}

// The ring as a bimodule over itself: L[lam] = N[lam], R[b](i,k) = N[i](b,k).
inline FusionBimodule regular_bimodule(const FusionRing& ring) {
    std::vector<MatI> L = ring.N, R;
    for (int b = 0; b < ring.n; ++b) {
        MatI M(ring.n, ring.n);
        for (int i = 0; i < ring.n; ++i)
            for (int k = 0; k < ring.n; ++k) M(i, k) = ring.N[i](b, k);
        R.push_back(M);
    }
    return make_fusion_bimodule(ring, ring, ring.labels, L, R, ring.dims);
}

// Basis permutations of M preserving dims and both actions.
inline std::vector<std::vector<int>> bimodule_autos(const FusionBimodule& M) {
    std::vector<int> p(M.n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int k = 0; ok && k < M.n; ++k)
            if (std::abs(M.dims(k) - M.dims(p[k])) > 1e-9) ok = false;
        auto fixes = [&](const std::vector<MatI>& mats) {
            for (const auto& Mat : mats)
                for (int i = 0; i < M.n; ++i)
                    for (int j = 0; j < M.n; ++j)
                        if (Mat(p[i], p[j]) != Mat(i, j)) return false;
            return true;
        };
        if (ok && fixes(M.L) && fixes(M.R)) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// All length-n nonnegative integer vectors whose squared entries sum to N,
// generated from multisets {(a_i, b_i)} with sum b_i a_i^2 = N, distinct
// a_i >= 1, sum b_i <= n, expanded to all distinct permutations. Sorted.
inline std::vector<IntVec> sum_of_squares_decompositions(long long N, int n) {
    if (N < 0 || n < 1) throw std::invalid_argument("sum_of_squares_decompositions");
    if (N == 0) return {IntVec(n, 0)};
    std::set<IntVec> vecs;
    std::vector<std::pair<long long, int>> acc;
    std::function<void(long long, long long, int)> rec = [&](long long amax,
                                                             long long rem, int slots) {
        if (rem == 0) {
            IntVec base;
            for (auto [a, b] : acc) base.insert(base.end(), b, a);
            base.resize(n, 0);
            std::sort(base.begin(), base.end());
            do vecs.insert(base);
            while (std::next_permutation(base.begin(), base.end()));
            return;
        }
        for (long long a = std::min(amax, (long long)std::sqrt((double)rem)); a >= 1; --a)
            for (int b = (int)std::min<long long>(slots, rem / (a * a)); b >= 1; --b) {
                acc.push_back({a, b});
                rec(a - 1, rem - b * a * a, slots - b);
                acc.pop_back();
            }
    };
    rec((long long)std::sqrt((double)N), N, n);
    return {vecs.begin(), vecs.end()};
}

// A triple (K: A-B, L: B-C, M: A-C) with the pairing oracle and the
// multiplication-map search.
struct MultTriple {
    FusionBimodule K, L, M;

    MultTriple(FusionBimodule K_, FusionBimodule L_, FusionBimodule M_)
        : K(std::move(K_)), L(std::move(L_)), M(std::move(M_)) {
        if (K.B.labels != L.A.labels || K.A.labels != M.A.labels ||
            L.B.labels != M.B.labels)
            throw std::invalid_argument("triple: ring mismatch");
    }

    int nA() const { return K.A.n; }
    int nB() const { return K.B.n; }
    int nC() const { return L.B.n; }

    // (xi-bar_{i1} xi_{i2}, eta_{j1} eta-bar_{j2})
    long long pb(int i1, int i2, int j1, int j2) const {
        long long t = 0;
        for (int b = 0; b < nB(); ++b)
            t += (long long)K.R[b](i1, i2) * L.L[b](j2, j1);
        return t;
    }

    // (xi_{i1} (eta_{j1} eta-bar_{j2}) xi-bar_{i2}, lam)
    long long c_lhs(int i1, int i2, int j1, int j2, int lam) const {
        long long t = 0;
        for (int b = 0; b < nB(); ++b) {
            long long coef = L.L[b](j2, j1);
            if (coef) {
                long long inner = 0;
                for (int k = 0; k < K.n; ++k)
                    inner += (long long)K.R[b](i1, k) * K.L[lam](i2, k);
                t += coef * inner;
            }
        }
        return t;
    }

    // (eta-bar_{j1} (xi-bar_{i1} xi_{i2}) eta_{j2}, kap)
    long long cp_lhs(int i1, int i2, int j1, int j2, int kap) const {
        long long t = 0;
        for (int b = 0; b < nB(); ++b) {
            long long coef = K.R[b](i1, i2);
            if (coef) {
                long long inner = 0;
                for (int k = 0; k < L.n; ++k)
                    inner += (long long)L.L[b](j2, k) * L.R[kap](j1, k);
                t += coef * inner;
            }
        }
        return t;
    }

    // (mu_{k1} mu-bar_{k2}, lam) = L_M[lam](k2, k1); the paired-down
    // (mu-bar_{k1} mu_{k2}, kap) = R_M[kap](k1, k2).
    long long c_rhs(const IntVec& v, const IntVec& w, int lam) const {
        long long t = 0;
        for (int k1 = 0; k1 < M.n; ++k1)
            for (int k2 = 0; k2 < M.n; ++k2)
                t += v[k1] * (long long)M.L[lam](k2, k1) * w[k2];
        return t;
    }
    long long cp_rhs(const IntVec& v, const IntVec& w, int kap) const {
        long long t = 0;
        for (int k1 = 0; k1 < M.n; ++k1)
            for (int k2 = 0; k2 < M.n; ++k2)
                t += v[k1] * (long long)M.R[kap](k1, k2) * w[k2];
        return t;
    }

    // All conditions of the partial-map definition for the assignment v at
    // frontier pair pi against everything already assigned (including v
    // itself). The fourth pairing condition is the transpose of the second
    // under the documented reading, hence implied.
    bool check_conditions(int pi, const IntVec& v, const MultMap& assigned,
                          bool skip_c_prime) const {
        int m = L.n;
        int i1 = pi / m, j1 = pi % m;
        double dim = 0;
        for (int k = 0; k < M.n; ++k) dim += v[k] * M.dims(k);
        if (std::abs(dim - K.dims(i1) * L.dims(j1)) > 1e-9) return false;
        for (int p2 = 0; p2 <= pi; ++p2) {
            const IntVec& w = p2 == pi ? v : assigned[p2];
            int i2 = p2 / m, j2 = p2 % m;
            long long dot = 0;
            for (int k = 0; k < M.n; ++k) dot += v[k] * w[k];
            if (dot != pb(i1, i2, j1, j2)) return false;
            for (int lam = 0; lam < nA(); ++lam)
                if (c_rhs(v, w, lam) != c_lhs(i1, i2, j1, j2, lam)) return false;
            if (!skip_c_prime)
                for (int kap = 0; kap < nC(); ++kap)
                    if (cp_rhs(v, w, kap) != cp_lhs(i1, i2, j1, j2, kap)) return false;
        }
        return true;
    }

    // The three associativity families over all basis elements.
    bool associative(const MultMap& mp) const {
        int l = K.n, m = L.n;
        auto vm = [&](int i, int j) -> const IntVec& { return mp[i * m + j]; };
        for (int lam = 0; lam < nA(); ++lam)
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < M.n; ++k) {
                        long long lhs = 0, rhs = 0;
                        for (int k2 = 0; k2 < M.n; ++k2)
                            lhs += (long long)M.L[lam](k2, k) * vm(i, j)[k2];
                        for (int i2 = 0; i2 < l; ++i2)
                            rhs += (long long)K.L[lam](i, i2) * vm(i2, j)[k];
                        if (lhs != rhs) return false;
                    }
        for (int rho = 0; rho < nB(); ++rho)
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < M.n; ++k) {
                        long long lhs = 0, rhs = 0;
                        for (int i2 = 0; i2 < l; ++i2)
                            lhs += (long long)K.R[rho](i, i2) * vm(i2, j)[k];
                        for (int j2 = 0; j2 < m; ++j2)
                            rhs += (long long)L.L[rho](j, j2) * vm(i, j2)[k];
                        if (lhs != rhs) return false;
                    }
        for (int kap = 0; kap < nC(); ++kap)
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < M.n; ++k) {
                        long long lhs = 0, rhs = 0;
                        for (int k2 = 0; k2 < M.n; ++k2)
                            lhs += (long long)M.R[kap](k2, k) * vm(i, j)[k2];
                        for (int j2 = 0; j2 < m; ++j2)
                            rhs += (long long)L.R[kap](j, j2) * vm(i, j2)[k];
                        if (lhs != rhs) return false;
                    }
        return true;
    }

    // Depth-first completion over the lexicographic frontier, candidates in
    // sorted order, survivors filtered by associativity. Deterministic.
    std::vector<MultMap> find_multiplication_maps(bool skip_c_prime = false) const {
        int l = K.n, m = L.n;
        std::vector<MultMap> results;
        MultMap assigned;
        std::function<void(int)> dfs = [&](int pi) {
            if (pi == l * m) {
                results.push_back(assigned);
                return;
            }
            int i = pi / m, j = pi % m;
            for (const IntVec& v : sum_of_squares_decompositions(pb(i, i, j, j), M.n))
                if (check_conditions(pi, v, assigned, skip_c_prime)) {
                    assigned.push_back(v);
                    dfs(pi + 1);
                    assigned.pop_back();
                }
        };
        dfs(0);
        std::vector<MultMap> out;
        for (auto& mp : results)
            if (associative(mp)) out.push_back(std::move(mp));
        return out;
    }

    // Number of maps up to basis automorphisms of M (relabeling the target;
    // e.g. composing with a central group element in a group ring).
    long orbit_count(const std::vector<MultMap>& maps) const {
        auto autos = bimodule_autos(M);
        std::set<MultMap> seen;
        long orbits = 0;
        for (const auto& mp : maps) {
            if (seen.count(mp)) continue;
            ++orbits;
            for (const auto& p : autos) {
                MultMap img;
                for (const auto& v : mp) {
                    IntVec w(M.n);
                    for (int k = 0; k < M.n; ++k) w[p[k]] = v[k];
                    img.push_back(w);
                }
                seen.insert(img);
            }
        }
        return orbits;
    }

    // Exhaustive oracle: every dimension-admissible candidate at every pair,
    // then all conditions + associativity. Throws if the product space
    // exceeds the budget.
    std::vector<MultMap> brute_force_maps(bool skip_c_prime = false,
                                          double budget = 1e6) const {
        int l = K.n, m = L.n;
        std::vector<std::vector<IntVec>> cands;
        double space = 1;
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < m; ++j) {
                std::vector<IntVec> cs;
                for (const IntVec& v : sum_of_squares_decompositions(pb(i, i, j, j), M.n)) {
                    double dim = 0;
                    for (int k = 0; k < M.n; ++k) dim += v[k] * M.dims(k);
                    if (std::abs(dim - K.dims(i) * L.dims(j)) < 1e-9) cs.push_back(v);
                }
                space *= (double)cs.size();
                cands.push_back(std::move(cs));
            }
        if (space > budget) throw std::runtime_error("brute_force_maps: space too large");
        std::vector<MultMap> out;
        MultMap mp(l * m);
        std::function<void(int)> rec = [&](int pi) {
            if (pi == l * m) {
                bool ok = true;
                for (int p = 0; ok && p < l * m; ++p)
                    ok = check_conditions(p, mp[p], mp, skip_c_prime);
                if (ok && associative(mp)) out.push_back(mp);
                return;
            }
            for (const IntVec& v : cands[pi]) {
                mp[pi] = v;
                rec(pi + 1);
            }
        };
        rec(0);
        return out;
    }
};

// Module graph of a complete map with respect to basis element x of K:
// adjacency (j,k) = coefficient of mu_k in xi_x * eta_j.
inline MatI fusion_graph(const MultTriple& t, const MultMap& mp, int x) {
    if (x < 0 || x >= t.K.n) throw std::invalid_argument("fusion_graph: bad element");
    MatI G(t.L.n, t.M.n);
    for (int j = 0; j < t.L.n; ++j)
        for (int k = 0; k < t.M.n; ++k) G(j, k) = (int)mp[x * t.L.n + j][k];
    return G;
}

// ---- JSON loaders ----
// Ring schema: {basis:[labels], unit:label, dual:{label:label},
// N:{"a,b":{c:int}}}. Bimodule schema: {ring_left:{...}, ring_right:{...},
// basis:[labels], L:{ringlabel:matrix}, R:{ringlabel:matrix}, dims:[...]?}.

inline FusionRing ring_from_json(const nlohmann::json& j) {
    std::vector<std::string> labels = j.at("basis");
    int n = (int)labels.size();
    auto idx = [&](const std::string& l) {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw std::invalid_argument("unknown label " + l);
        return (int)(it - labels.begin());
    };
    int unit = idx(j.at("unit").get<std::string>());
    std::vector<int> dual(n, -1);
    for (auto& [a, b] : j.at("dual").items()) dual[idx(a)] = idx(b.get<std::string>());
    for (int a = 0; a < n; ++a)
        if (dual[a] < 0) throw std::invalid_argument("dual missing for " + labels[a]);
    std::vector<MatI> N(n, MatI::Zero(n, n));
    for (auto& [ab, cs] : j.at("N").items()) {
        auto comma = ab.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("bad N key " + ab);
        int a = idx(ab.substr(0, comma)), b = idx(ab.substr(comma + 1));
        for (auto& [c, mult] : cs.items()) N[a](b, idx(c)) = mult.get<int>();
    }
    return make_fusion_ring(labels, unit, dual, N);
}

inline FusionBimodule bimodule_from_json(const nlohmann::json& j) {
    FusionRing A = ring_from_json(j.at("ring_left"));
    FusionRing B = ring_from_json(j.at("ring_right"));
    std::vector<std::string> basis = j.at("basis");
    int n = (int)basis.size();
    auto actions = [&](const nlohmann::json& obj, const FusionRing& ring) {
        std::vector<MatI> out(ring.n, MatI::Zero(n, n));
        for (auto& [lab, mat] : obj.items()) {
            int a = ring.index(lab);
            if ((int)mat.size() != n) throw std::invalid_argument("action row mismatch");
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) out[a](i, k) = mat[i][k].get<int>();
        }
        return out;
    };
    std::vector<MatI> L = actions(j.at("L"), A), R = actions(j.at("R"), B);
    VecD dims;
    if (j.contains("dims")) {
        std::vector<double> d = j.at("dims");
        dims = Eigen::Map<VecD>(d.data(), d.size());
    }
    return make_fusion_bimodule(std::move(A), std::move(B), std::move(basis),
                                std::move(L), std::move(R), std::move(dims));
}

inline nlohmann::json ring_to_json(const FusionRing& r) {
    nlohmann::json j;
    j["basis"] = r.labels;
    j["unit"] = r.labels[r.unit];
    nlohmann::json dual = nlohmann::json::object();
    for (int a = 0; a < r.n; ++a) dual[r.labels[a]] = r.labels[r.dual[a]];
    j["dual"] = dual;
    nlohmann::json N = nlohmann::json::object();
    for (int a = 0; a < r.n; ++a)
        for (int b = 0; b < r.n; ++b) {
            nlohmann::json cs = nlohmann::json::object();
            for (int c = 0; c < r.n; ++c)
                if (r.N[a](b, c)) cs[r.labels[c]] = r.N[a](b, c);
            if (!cs.empty()) N[r.labels[a] + "," + r.labels[b]] = cs;
        }
    j["N"] = N;
    return j;
}

inline nlohmann::json bimodule_to_json(const FusionBimodule& M) {
    nlohmann::json j;
    j["ring_left"] = ring_to_json(M.A);
    j["ring_right"] = ring_to_json(M.B);
    j["basis"] = M.basis;
    auto dump = [&](const std::vector<MatI>& mats, const FusionRing& ring) {
        nlohmann::json obj = nlohmann::json::object();
        for (int a = 0; a < ring.n; ++a) {
            std::vector<std::vector<int>> rows;
            for (int i = 0; i < M.n; ++i) {
                std::vector<int> row;
                for (int k = 0; k < M.n; ++k) row.push_back(mats[a](i, k));
                rows.push_back(row);
            }
            obj[ring.labels[a]] = rows;
        }
        return obj;
    };
    j["L"] = dump(M.L, M.A);
    j["R"] = dump(M.R, M.B);
    std::vector<double> d(M.dims.data(), M.dims.data() + M.n);
    j["dims"] = d;
    return j;
}

// Dispatcher: a file with an "N" field is a ring, one with "L" a bimodule.
struct FusionData {
    bool is_ring = false;
    FusionRing ring;
    FusionBimodule bimodule;
};

inline FusionData load_fusion_data(const nlohmann::json& j) {
    FusionData d;
    if (j.contains("N")) {
        d.is_ring = true;
        d.ring = ring_from_json(j);
    } else if (j.contains("L")) {
        d.bimodule = bimodule_from_json(j);
    } else {
        throw std::invalid_argument("fusion data: neither ring (N) nor bimodule (L)");
    }
    return d;
}

}  // namespace commsq
