// Command-line front end: catalog verification, norm tables, integer graph
// factorization with norm screening, the 4-star connection family, and the
// fusion multiplication-map search. All output is deterministic; numbers are
// serialized as 17-significant-digit decimal strings.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commsq/catalog.hpp"
#include "commsq/factorization.hpp"
#include "commsq/fourstar.hpp"
#include "commsq/fusion.hpp"

using namespace commsq;
using nlohmann::json;

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double default_tol() {
    if (const char* env = std::getenv("COMMSQ_TOL")) {
        try {
            return std::stod(env);
        } catch (...) {
            throw std::invalid_argument("COMMSQ_TOL is not a number");
        }
    }
    return 1e-10;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void emit(const json& j, const std::string& format, const std::string& text) {
    if (format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

json report_to_json(const VerificationReport& rep) {
    json j;
    j["nondegenerate"] = rep.nondegenerate;
    j["max_unitarity_residual_u"] = fmt17(rep.max_unitarity_residual_u);
    j["max_unitarity_residual_v"] = fmt17(rep.max_unitarity_residual_v);
    json blocks = json::array();
    for (const auto& r : rep.per_block)
        blocks.push_back({{"side", std::string(1, r.side)},
                          {"cell", {r.cell.first, r.cell.second}},
                          {"size", r.size},
                          {"residual", fmt17(r.residual)}});
    j["blocks"] = blocks;
    return j;
}

int cmd_verify(const std::string& target, double tol, const std::string& format) {
    Connection conn;
    std::vector<std::pair<std::string, double>> identities;
    std::string name = target;
    try {
        auto names = catalog_names();
        if (std::find(names.begin(), names.end(), target) != names.end()) {
            CatalogEntry e = catalog_entry(target);
            conn = std::move(e.connection);
            identities = std::move(e.identities);
        } else {
            conn = connection_from_json(load_json_file(target));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    VerificationReport rep = conn.verify();
    bool ok = rep.pass(tol);
    json j = report_to_json(rep);
    j["name"] = name;
    j["tolerance"] = fmt17(tol);
    j["pass"] = ok;
    if (!identities.empty()) {
        json ids = json::object();
        for (const auto& [k, v] : identities) ids[k] = fmt17(v);
        j["identities"] = ids;
    }
    std::ostringstream os;
    os << name << ": " << (ok ? "PASS" : "FAIL") << " (nondegenerate="
       << (rep.nondegenerate ? "yes" : "no")
       << ", max residual u=" << fmt17(rep.max_unitarity_residual_u)
       << ", v=" << fmt17(rep.max_unitarity_residual_v) << ", tol=" << fmt17(tol)
       << ")\n";
    emit(j, format, os.str());
    return ok ? 0 : 1;
}

int cmd_norms(const std::string& format) {
    struct Row {
        const char* name;
        const char* closed_form;
        double target;
    };
    double t = quipu_t();
    std::vector<Row> rows = {
        {"small_broom", "5", 5.0},
        {"medium_broom", "3+sqrt(3)", 3 + std::sqrt(3.0)},
        {"large_broom", "(5+sqrt(17))/2", (5 + std::sqrt(17.0)) / 2},
        {"quipu", "largest root of x^3-8x^2+17x-5", t},
    };
    json out = json::array();
    std::ostringstream os;
    os << "graph            norm^2               target               residual\n";
    for (const auto& r : rows) {
        double n2 = [&] {
            SpectralData sd = spectral(catalog_graph(r.name));
            return sd.norm * sd.norm;
        }();
        double res = std::abs(n2 - r.target);
        out.push_back({{"graph", r.name},
                       {"norm_sq", fmt17(n2)},
                       {"closed_form", r.closed_form},
                       {"target", fmt17(r.target)},
                       {"residual", fmt17(res)}});
        char line[160];
        std::snprintf(line, sizeof(line), "%-16s %-20.14f %-20.14f %s\n", r.name, n2,
                      r.target, fmt17(res).c_str());
        os << line;
    }
    emit(out, format, os.str());
    return 0;
}

int cmd_factorize(const std::string& graph, double target, bool has_target,
                  double tol, bool want_raw, const std::string& format) {
    MatI G;
    try {
        if (graph == "star3333") {
            G = star3333_adjacency();
        } else {
            BipartiteGraph g = graph_from_json(load_json_file(graph));
            G = g.adj;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    auto fs = enumerate_factorizations(G);
    json j;
    j["graph"] = graph;
    j["count"] = fs.size();
    if (want_raw) j["labeled_count"] = raw_count(fs);
    std::ostringstream os;
    os << graph << ": " << fs.size() << " factorizations up to middle relabeling\n";
    if (want_raw) os << "labeled (H,K) pairs: " << raw_count(fs) << "\n";
    if (graph == "star3333") {
        long cb = center_bundle_subcount(fs);
        j["center_bundle_count"] = cb;
        os << "center edges on distinct middle vertices, nontrivial: " << cb << "\n";
    }
    bool empty_screen = false;
    if (has_target) {
        json hits = json::array();
        int nhit = 0;
        for (const auto& f : fs) {
            double n2 = factor_norm_sq(f);
            if (std::abs(n2 - target) > tol) continue;
            ++nhit;
            hits.push_back({{"H", matrix_to_json(factor_H(f))},
                            {"K", matrix_to_json(factor_K(f))},
                            {"middle_dim", f.size()},
                            {"norm_sq", fmt17(n2)}});
        }
        j["target_norm_sq"] = fmt17(target);
        j["matches"] = hits;
        os << "factors with |H|^2 = " << fmt17(target) << " (tol " << fmt17(tol)
           << "): " << nhit << "\n";
        empty_screen = nhit == 0;
    }
    emit(j, format, os.str());
    return (has_target && empty_screen) ? 1 : 0;
}

int cmd_fourstar(int i, int j, double s, const std::string& export_path,
                 double tol, const std::string& format) {
    FamilyConnection fc = [&] {
        return family_connection(i, j, s);
    }();
    VerificationReport rep = fc.connection.verify();
    bool ok = rep.pass(tol);
    json out = report_to_json(rep);
    out["i"] = i;
    out["j"] = j;
    out["s"] = fmt17(s);
    out["t"] = fmt17(fc.point.t);
    out["norm_sq"] = fmt17(fourstar_index(i, j));
    out["pass"] = ok;
    std::vector<std::vector<std::vector<std::string>>> blk;
    for (int r = 0; r < 4; ++r) {
        std::vector<std::vector<std::string>> row;
        for (int c = 0; c < 4; ++c)
            row.push_back({fmt17(fc.point.block(r, c).real()),
                           fmt17(fc.point.block(r, c).imag())});
        blk.push_back(row);
    }
    out["central_block"] = blk;
    if (!export_path.empty()) {
        std::ofstream f(export_path);
        if (!f) {
            std::cerr << "error: cannot write " << export_path << "\n";
            return 2;
        }
        f << connection_to_json(fc.connection).dump(2) << "\n";
    }
    std::ostringstream os;
    os << "S(" << i << "," << i << "," << j << "," << j << ") at s=" << fmt17(s)
       << ": t=" << fmt17(fc.point.t) << ", norm^2=" << fmt17(fourstar_index(i, j))
       << ", " << (ok ? "PASS" : "FAIL")
       << " (max residual u=" << fmt17(rep.max_unitarity_residual_u)
       << ", v=" << fmt17(rep.max_unitarity_residual_v) << ")\n";
    emit(out, format, os.str());
    return ok ? 0 : 1;
}

int cmd_fourstar_table(int maxn, const std::string& format) {
    IndexTable tb = index_table(maxn, maxn);
    json out;
    out["max"] = maxn;
    json cells = json::array();
    std::ostringstream os;
    os << "norm^2 of S(i,i,j,j), j >= i (long-arm proxy: length 60)\n";
    for (int i = 1; i <= maxn; ++i) {
        for (int j = i; j <= maxn; ++j) {
            double v = tb.cell[i - 1][j - i];
            cells.push_back({{"i", i}, {"j", j}, {"norm_sq", fmt17(v)}});
            os << "  S(" << i << "," << i << "," << j << "," << j
               << "): " << fmt17(v) << "\n";
        }
    }
    out["cells"] = cells;
    json lim = json::array();
    for (int i = 1; i <= maxn; ++i) {
        lim.push_back(fmt17(tb.limit_row[i - 1]));
        os << "  S(" << i << "," << i << ",inf,inf): " << fmt17(tb.limit_row[i - 1])
           << "\n";
    }
    out["limit_row"] = lim;
    out["limit_corner"] = fmt17(tb.limit_corner);
    os << "  S(inf,inf,inf,inf): " << fmt17(tb.limit_corner) << "\n";
    emit(out, format, os.str());
    return 0;
}

int cmd_multmaps(const std::vector<std::string>& files, bool skip_c_prime,
                 const std::string& format) {
    FusionBimodule K, L, M;
    try {
        K = bimodule_from_json(load_json_file(files[0]));
        L = bimodule_from_json(load_json_file(files[1]));
        M = bimodule_from_json(load_json_file(files[2]));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    MultTriple tr(std::move(K), std::move(L), std::move(M));
    auto maps = tr.find_multiplication_maps(skip_c_prime);
    long orbits = tr.orbit_count(maps);
    json out;
    out["map_count"] = maps.size();
    out["orbit_count"] = orbits;  // up to basis automorphisms of the target
    json jmaps = json::array();
    for (const auto& mp : maps) {
        json jm = json::array();
        for (const auto& v : mp) jm.push_back(v);
        jmaps.push_back(jm);
    }
    out["maps"] = jmaps;
    std::ostringstream os;
    os << maps.size() << " multiplication map(s), " << orbits
       << " up to target relabeling\n";
    emit(out, format, os.str());
    return maps.empty() ? 1 : 0;
}

int cmd_fusiongraph(const std::string& map_id, const std::string& x,
                    const std::string& format) {
    FusionRing ring;
    if (map_id == "z2")
        ring = cyclic_ring(2);
    else if (map_id == "z3")
        ring = cyclic_ring(3);
    else if (map_id == "fib")
        ring = fib_ring();
    else if (map_id == "tl4")
        ring = tl_ring(4);
    else {
        std::cerr << "error: unknown map id " << map_id
                  << " (expected z2|z3|fib|tl4)\n";
        return 2;
    }
    FusionBimodule bm = regular_bimodule(ring);
    MultTriple tr(bm, bm, bm);
    // the canonical multiplication map of a regular triple: the ring product
    MultMap mult;
    for (int i = 0; i < ring.n; ++i)
        for (int j = 0; j < ring.n; ++j) {
            IntVec v(ring.n);
            for (int k = 0; k < ring.n; ++k) v[k] = ring.N[i](j, k);
            mult.push_back(v);
        }
    int xi;
    try {
        xi = ring.index(x);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    MatI G = fusion_graph(tr, mult, xi);
    BipartiteGraph g = from_adjacency(bm.basis, bm.basis, G);
    if (format == "dot") {
        std::cout << graph_to_dot(g);
    } else if (format == "json") {
        std::cout << graph_to_json(g).dump(2) << "\n";
    } else {
        std::cout << "fusion graph of " << map_id << " with respect to " << x << ":\n";
        for (int r = 0; r < G.rows(); ++r) {
            for (int c = 0; c < G.cols(); ++c) std::cout << " " << G(r, c);
            std::cout << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"commuting-square connection toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "dot", "text"}));

    double tol = default_tol();

    auto* sv = app.add_subcommand("verify", "verify a catalog or JSON connection");
    std::string target;
    sv->add_option("name", target, "catalog name or connection JSON path")->required();
    sv->add_option("--tol", tol, "unitarity tolerance");

    auto* sn = app.add_subcommand("norms", "catalog graph norms vs closed forms");

    auto* sf = app.add_subcommand("factorize", "integer factorizations G = H K");
    std::string graph = "star3333";
    double target_norm_sq = 0.0;
    bool raw = false;
    sf->add_option("--graph", graph, "built-in name or graph JSON path");
    auto* topt = sf->add_option("--target-norm-sq", target_norm_sq,
                                "screen factors H by squared operator norm");
    sf->add_option("--tol", tol, "screening tolerance");
    sf->add_flag("--raw-count", raw, "also report the labeled (H,K) pair count");

    auto* s4 = app.add_subcommand("fourstar", "the 4-star connection family");
    int fi = 1, fj = 1, maxn = 4;
    double s = 0.0;
    std::string export_path;
    s4->add_option("--i", fi, "half the count of length-i arms");
    s4->add_option("--j", fj, "arm length j");
    s4->add_option("--s", s, "family parameter");
    s4->add_option("--export", export_path, "write the connection JSON here");
    auto* s4t = s4->add_subcommand("table", "norm^2 table over small 4-stars");
    s4t->add_option("--max", maxn, "largest arm length");

    auto* sm = app.add_subcommand("multmaps", "multiplication-map search");
    std::vector<std::string> triple;
    sm->add_option("--triple", triple, "K.json L.json M.json")->expected(3);
    bool skip_cp = false;
    sm->add_flag("--skip-c-prime", skip_cp, "relaxed mode: drop the second triple pairing condition");

    auto* sg = app.add_subcommand("fusiongraph", "module graph of a built-in triple");
    std::string map_id, xlabel;
    sg->add_option("--map", map_id, "z2|z3|fib|tl4")->required();
    sg->add_option("--x", xlabel, "acting basis element")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sv->parsed()) return cmd_verify(target, tol, format);
        if (sn->parsed()) return cmd_norms(format);
        if (sf->parsed())
            return cmd_factorize(graph, target_norm_sq, topt->count() > 0, tol, raw,
                                 format);
        if (s4->parsed()) {
            if (s4t->parsed()) return cmd_fourstar_table(maxn, format);
            return cmd_fourstar(fi, fj, s, export_path, tol, format);
        }
        if (sm->parsed()) {
            if (triple.size() != 3) {
                std::cerr << "error: --triple requires three files\n";
                return 2;
            }
            return cmd_multmaps(triple, skip_cp, format);
        }
        if (sg->parsed()) return cmd_fusiongraph(map_id, xlabel, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
