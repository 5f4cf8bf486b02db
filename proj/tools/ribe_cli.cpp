#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ribe/common.hpp"
#include "ribe/cube.hpp"
#include "ribe/graph.hpp"
#include "ribe/hst.hpp"
#include "ribe/lamplighter.hpp"
#include "ribe/markov.hpp"
#include "ribe/metric.hpp"
#include "ribe/oracle.hpp"
#include "ribe/skeleton.hpp"
#include "ribe/spectral.hpp"

namespace {

using namespace ribe;

std::string g_format = "text";

void report(const std::string& key, const std::string& value) {
    if (g_format == "tsv")
        std::cout << key << '\t' << value << '\n';
    else
        std::cout << key << " = " << value << '\n';
}

template <typename T>
void report(const std::string& key, T value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    report(key, os.str());
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("RIBE_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

int run_gen(const std::string& named, int tree_k, int tree_depth, int laakso_k, int rr_n,
            int rr_k, int rr_girth, std::uint64_t seed, const std::string& out) {
    Graph g;
    if (!named.empty()) {
        g = gen_named(named);
        report("generator", named);
    } else if (tree_k > 0) {
        g = gen_tree(tree_k, tree_depth);
        report("generator", "tree");
    } else if (laakso_k >= 0) {
        g = gen_laakso(laakso_k);
        report("generator", "laakso");
    } else if (rr_n > 0) {
        g = gen_random_regular(rr_n, rr_k, rr_girth, seed);
        report("generator", "random-regular");
        report("seed", seed);
    } else {
        throw invalid_parameter("gen needs --named, --tree-k, --laakso or --rr-n");
    }
    report("vertices", g.num_vertices());
    report("edges", g.num_edges());
    save_graph(out, g);
    report("out", out);
    return 0;
}

int run_metric(const std::string& graph_path, int hypercube_n, const std::string& out) {
    FiniteMetric m = hypercube_n > 0 ? gen_hypercube(hypercube_n)
                                     : metric_from_graph(load_graph(graph_path));
    report("points", m.size());
    report("diameter", m.max_distance());
    save_metric(out, m);
    report("out", out);
    return 0;
}

int run_build_oracle(const std::string& metric_path, double epsilon, std::uint64_t seed,
                     const std::string& out) {
    FiniteMetric m = load_metric(metric_path);
    OracleStructure o = build_oracle(m, epsilon, seed);
    RankingStructure r = build_ranking(o, m);
    save_oracle(out, o, r);
    report("n", o.n);
    report("epsilon", epsilon);
    report("seed", seed);
    report("certified_distortion", o.certified_distortion);
    report("levels", o.levels.size());
    report("out", out);
    return 0;
}

int run_query(const std::string& oracle_path, int i, int j) {
    OracleStructure o;
    RankingStructure r;
    load_oracle(oracle_path, o, r);
    report("estimate", query_distance(o, i, j));
    return 0;
}

int run_rank(const std::string& oracle_path, int x, int i) {
    OracleStructure o;
    RankingStructure r;
    load_oracle(oracle_path, o, r);
    report("point", rank_query(r, x, i));
    return 0;
}

int run_verify(const std::string& oracle_path, const std::string& metric_path) {
    OracleStructure o;
    RankingStructure r;
    load_oracle(oracle_path, o, r);
    FiniteMetric m = load_metric(metric_path);
    if (m.size() != o.n) throw invalid_parameter("metric does not match the oracle");
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < o.n; ++i)
        for (int j = i + 1; j < o.n; ++j) {
            double e = query_distance(o, i, j);
            double d = m(i, j);
            worst = std::max(worst, e / d);
            if (e < d - 1e-9 * d || e > o.certified_distortion * d + 1e-9 * d) ok = false;
        }
    report("pairs", static_cast<long long>(o.n) * (o.n - 1) / 2);
    report("max_ratio", worst);
    report("certified_distortion", o.certified_distortion);
    report("sandwich", ok ? "pass" : "fail");
    bool rank_ok = true;
    for (int x = 0; x < r.n && rank_ok; ++x)
        for (int i = 1; i <= r.n && rank_ok; ++i)
            if (rank_inverse(r, x, rank_query(r, x, i)) != i) rank_ok = false;
    report("ranking_inverse", rank_ok ? "pass" : "fail");
    return ok && rank_ok ? 0 : 1;
}

int run_bench(const std::string& metric_path, double epsilon, std::uint64_t seed,
              long long queries) {
    FiniteMetric m = load_metric(metric_path);
    auto t0 = std::chrono::steady_clock::now();
    OracleStructure o = build_oracle(m, epsilon, seed);
    auto t1 = std::chrono::steady_clock::now();
    report("n", o.n);
    report("seed", seed);
    report("build_ms", std::chrono::duration<double, std::milli>(t1 - t0).count());

    long long scalars = 0;
    for (const auto& lvl : o.levels) {
        scalars += static_cast<long long>(lvl.skeleton.tree.num_nodes()) * 4;
        scalars += static_cast<long long>(lvl.remaining.size()) + lvl.subset.size();
        scalars += o.n;  // local_of
    }
    report("size_scalars", scalars);

    SplitMix64 rng(seed);
    std::vector<double> lat;
    lat.reserve(queries);
    std::vector<long long> histogram(12, 0);  // distortion ratio buckets, powers of 2
    for (long long q = 0; q < queries; ++q) {
        int i = static_cast<int>(rng.next_below(o.n));
        int j = static_cast<int>(rng.next_below(o.n));
        auto q0 = std::chrono::steady_clock::now();
        double e = query_distance(o, i, j);
        auto q1 = std::chrono::steady_clock::now();
        lat.push_back(std::chrono::duration<double, std::nano>(q1 - q0).count());
        if (i != j) {
            double ratio = e / m(i, j);
            int bucket = std::min<int>(11, std::max(0, static_cast<int>(std::log2(ratio)) + 1));
            ++histogram[bucket];
        }
    }
    std::sort(lat.begin(), lat.end());
    report("queries", queries);
    report("latency_median_ns", lat[lat.size() / 2]);
    report("latency_p99_ns", lat[static_cast<std::size_t>(lat.size() * 0.99)]);
    double worst = 0.0;
    for (int i = 0; i < o.n; ++i)
        for (int j = i + 1; j < o.n; ++j) worst = std::max(worst, query_distance(o, i, j) / m(i, j));
    report("max_distortion", worst);
    for (int b = 0; b < 12; ++b)
        report("ratio_bucket_2^" + std::to_string(b - 1) + ".." + std::to_string(b),
               histogram[b]);
    return worst <= o.certified_distortion ? 0 : 1;
}

int run_walk_drift(const std::string& graph_path, int tmax) {
    Graph g = load_graph(graph_path);
    MarkovChain c = stationary_walk(g);
    FiniteMetric m = metric_from_graph(g);
    auto prof = drift_profile(c, m, tmax);
    for (int t = 0; t <= tmax; ++t) report("drift_t" + std::to_string(t), prof[t]);
    return 0;
}

int run_walk_type(const std::string& graph_path, double p, int tmax) {
    Graph g = load_graph(graph_path);
    MarkovChain c = stationary_walk(g);
    FiniteMetric m = metric_from_graph(g);
    std::vector<int> id(m.size());
    for (int i = 0; i < m.size(); ++i) id[i] = i;
    double best = 0.0;
    for (int t = 1; t <= tmax; ++t) {
        double r = markov_type_ratio(c, m, id, p, t);
        report("ratio_t" + std::to_string(t), r);
        best = std::max(best, r);
    }
    report("max_ratio", best);
    return 0;
}

int run_walk_convexity(int tree_k, int tree_depth, int laakso_k, double p, int T) {
    ConvexityResult res;
    if (tree_k > 0) {
        std::vector<int> parent;
        MarkovChain c = outward_tree_chain(tree_k, tree_depth, &parent);
        if (T <= 0) T = tree_depth;
        if (p == 2.0) {
            res = markov_convexity_tree(c, parent, T);
        } else {
            FiniteMetric m = metric_from_graph(gen_tree(tree_k, tree_depth));
            std::vector<int> id(c.states());
            for (int i = 0; i < c.states(); ++i) id[i] = i;
            res = markov_convexity_functional(c, m, id, p, T);
        }
        report("chain", "tree");
    } else if (laakso_k >= 1) {
        MarkovChain c = laakso_chain(laakso_k);
        if (T <= 0) {
            T = 1;
            for (int i = 0; i < laakso_k; ++i) T *= 4;
        }
        FiniteMetric m = metric_from_graph(gen_laakso(laakso_k));
        std::vector<int> id(c.states());
        for (int i = 0; i < c.states(); ++i) id[i] = i;
        res = markov_convexity_functional(c, m, id, p, T);
        report("chain", "laakso");
    } else {
        throw invalid_parameter("walk convexity needs --tree-k or --laakso");
    }
    report("T", T);
    report("p", p);
    report("lhs", res.lhs);
    report("rhs", res.rhs);
    report("pi_lower", res.pi_lower);
    return 0;
}

int run_spectral(const std::string& sub, const std::string& graph_path, int k, int m,
                 const std::string& subset_csv) {
    if (sub == "geronimus") {
        report("polynomial", geronimus(k, m).to_string());
        return 0;
    }
    Graph g = load_graph(graph_path);
    if (sub == "identity") {
        auto rep = verify_geronimus_identity(g, k, m);
        report("max_deviation", rep.max_deviation);
        report("identity", rep.holds ? "pass" : "fail");
        return rep.holds ? 0 : 1;
    }
    if (sub == "floor") {
        auto rep = lambda_min_floor(g, k, m);
        report("lambda_min", rep.lambda_min);
        report("floor", rep.floor);
        report("floor_holds", rep.holds ? "pass" : "fail");
        return rep.holds ? 0 : 1;
    }
    if (sub == "mixing") {
        std::vector<int> S;
        std::stringstream ss(subset_csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) S.push_back(std::stoi(tok));
        auto rep = self_mixing_check(g, S);
        report("edges_in_subset", rep.edges_in_subset);
        report("bound", rep.bound);
        report("mixing", rep.holds ? "pass" : "fail");
        return rep.holds ? 0 : 1;
    }
    throw invalid_parameter("unknown spectral subcommand " + sub);
}

int run_cube(const std::string& sub, const std::string& in_path, const std::string& out_path,
             double t, double p, double q, const std::string& variant, int n, int m,
             std::uint64_t seed) {
    if (sub == "cotype") {
        // random two-valued torus map into a 2-point metric at distance 1
        long long total = 1;
        for (int i = 0; i < n; ++i) total *= m;
        SplitMix64 rng(seed);
        std::vector<int> f(total);
        for (auto& v : f) v = static_cast<int>(rng.next_below(2));
        FiniteMetric two = FiniteMetric::trusted(2, {1.0});
        report("seed", seed);
        report("C", metric_cotype_constant(n, m, f, two, q));
        return 0;
    }
    std::ifstream in(in_path);
    if (!in) throw parse_error("cannot open " + in_path);
    CubeFunction f = read_cube(in);
    if (sub == "transform") {
        CubeFunction spec = walsh_transform(f);
        std::ofstream out(out_path);
        if (!out) throw parse_error("cannot open " + out_path);
        write_cube(out, spec);
        report("out", out_path);
        return 0;
    }
    if (sub == "heat") {
        CubeFunction h = heat_semigroup(f, t);
        std::ofstream out(out_path);
        if (!out) throw parse_error("cannot open " + out_path);
        write_cube(out, h);
        report("out", out_path);
        return 0;
    }
    if (sub == "pisier") {
        auto rep = pisier_ratio(f, q);
        report("lhs", rep.lhs);
        report("rhs", rep.rhs);
        report("ratio", rep.ratio);
        return 0;
    }
    if (sub == "type") {
        TypeVariant v = variant == "plain"   ? TypeVariant::plain
                        : variant == "bmw"   ? TypeVariant::bmw
                                             : TypeVariant::enflo;
        report("T", metric_type_constant(f, p, v));
        return 0;
    }
    throw invalid_parameter("unknown cube subcommand " + sub);
}

int run_skeleton(const std::string& metric_path, double epsilon, std::uint64_t seed,
                 const std::string& out_path) {
    FiniteMetric m = load_metric(metric_path);
    SkeletonResult s = extract_skeleton(m, epsilon, seed);
    report("n", m.size());
    report("epsilon", epsilon);
    report("seed", seed);
    report("subset_size", s.subset.size());
    report("certified_distortion", s.certified_distortion);
    report("measured_max_ratio", s.measured_max_ratio);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw parse_error("cannot open " + out_path);
        write_skeleton(out, s);
        report("out", out_path);
    }
    return s.measured_max_ratio <= s.certified_distortion ? 0 : 1;
}

}

int main(int argc, char** argv) {
    CLI::App app{"finite-metric-space laboratory"};
    app.require_subcommand(1);
    app.add_option("--format", g_format, "report format: text or tsv")
        ->check(CLI::IsMember({"text", "tsv"}));
    std::uint64_t seed = default_seed();

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph");
    std::string gen_named, gen_out = "graph.txt";
    int gen_tree_k = 0, gen_tree_depth = 1, gen_laakso = -1, gen_rr_n = 0, gen_rr_k = 3,
        gen_rr_girth = 3;
    gen->add_option("--named", gen_named, "petersen|heawood|tutte_coxeter|cycle(m)|torus(m,n)");
    gen->add_option("--tree-k", gen_tree_k);
    gen->add_option("--tree-depth", gen_tree_depth);
    gen->add_option("--laakso", gen_laakso);
    gen->add_option("--rr-n", gen_rr_n);
    gen->add_option("--rr-k", gen_rr_k);
    gen->add_option("--rr-girth", gen_rr_girth);
    gen->add_option("--seed", seed);
    gen->add_option("--out", gen_out);

    // metric
    auto* metric = app.add_subcommand("metric", "shortest-path metric of a graph");
    std::string metric_graph, metric_out = "metric.txt";
    int metric_hypercube = 0;
    metric->add_option("--graph", metric_graph);
    metric->add_option("--hypercube", metric_hypercube);
    metric->add_option("--out", metric_out);

    // build-oracle
    auto* bo = app.add_subcommand("build-oracle", "build a distance oracle dump");
    std::string bo_metric, bo_out = "oracle.txt";
    double bo_eps = 0.5;
    bo->add_option("--metric", bo_metric)->required();
    bo->add_option("--epsilon", bo_eps);
    bo->add_option("--seed", seed);
    bo->add_option("--out", bo_out);

    // query
    auto* qc = app.add_subcommand("query", "approximate distance query");
    std::string q_oracle;
    int q_i = 0, q_j = 0;
    qc->add_option("--oracle", q_oracle)->required();
    qc->add_option("--i", q_i)->required();
    qc->add_option("--j", q_j)->required();

    // rank
    auto* rc = app.add_subcommand("rank", "approximate ranking query");
    std::string r_oracle;
    int r_x = 0, r_i = 1;
    rc->add_option("--oracle", r_oracle)->required();
    rc->add_option("--x", r_x)->required();
    rc->add_option("--i", r_i)->required();

    // verify
    auto* vc = app.add_subcommand("verify", "exhaustive oracle verification");
    std::string v_oracle, v_metric;
    vc->add_option("--oracle", v_oracle)->required();
    vc->add_option("--metric", v_metric)->required();

    // bench
    auto* bc = app.add_subcommand("bench", "oracle build/query benchmark");
    std::string b_metric;
    double b_eps = 0.5;
    long long b_queries = 1000000;
    bc->add_option("--metric", b_metric)->required();
    bc->add_option("--epsilon", b_eps);
    bc->add_option("--seed", seed);
    bc->add_option("--queries", b_queries);

    // walk
    auto* wc = app.add_subcommand("walk", "random-walk functionals");
    wc->require_subcommand(1);
    auto* wd = wc->add_subcommand("drift");
    auto* wt = wc->add_subcommand("type");
    auto* wx = wc->add_subcommand("convexity");
    std::string w_graph;
    double w_p = 2.0;
    int w_tmax = 8, w_T = 0, w_tree_k = 0, w_tree_depth = 1, w_laakso = 0;
    wd->add_option("--graph", w_graph)->required();
    wd->add_option("--tmax", w_tmax);
    wt->add_option("--graph", w_graph)->required();
    wt->add_option("--p", w_p);
    wt->add_option("--tmax", w_tmax);
    wx->add_option("--tree-k", w_tree_k);
    wx->add_option("--tree-depth", w_tree_depth);
    wx->add_option("--laakso", w_laakso);
    wx->add_option("--p", w_p);
    wx->add_option("--T", w_T);

    // spectral
    auto* sc = app.add_subcommand("spectral", "girth-graph spectral machinery");
    sc->require_subcommand(1);
    std::string s_graph, s_subset;
    int s_k = 3, s_m = 2;
    for (const char* name : {"geronimus", "identity", "floor", "mixing"}) {
        auto* sub = sc->add_subcommand(name);
        sub->add_option("--graph", s_graph);
        sub->add_option("--k", s_k);
        sub->add_option("--m", s_m);
        sub->add_option("--subset", s_subset, "comma-separated vertex ids");
    }

    // cube
    auto* cc = app.add_subcommand("cube", "hypercube Fourier analysis");
    cc->require_subcommand(1);
    std::string c_in, c_out = "cube_out.txt", c_variant = "enflo";
    double c_t = 1.0, c_p = 2.0, c_q = 2.0;
    int c_n = 2, c_m = 4;
    for (const char* name : {"transform", "heat", "pisier", "type", "cotype"}) {
        auto* sub = cc->add_subcommand(name);
        sub->add_option("--in", c_in);
        sub->add_option("--out", c_out);
        sub->add_option("--t", c_t);
        sub->add_option("--p", c_p);
        sub->add_option("--q", c_q);
        sub->add_option("--variant", c_variant);
        sub->add_option("--n", c_n);
        sub->add_option("--m", c_m);
        sub->add_option("--seed", seed);
    }

    // skeleton
    auto* sk = app.add_subcommand("skeleton", "ultrametric skeleton extraction");
    std::string sk_metric, sk_out;
    double sk_eps = 0.5;
    sk->add_option("--metric", sk_metric)->required();
    sk->add_option("--epsilon", sk_eps);
    sk->add_option("--seed", seed);
    sk->add_option("--out", sk_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return run_gen(gen_named, gen_tree_k, gen_tree_depth, gen_laakso, gen_rr_n, gen_rr_k,
                           gen_rr_girth, seed, gen_out);
        if (metric->parsed()) return run_metric(metric_graph, metric_hypercube, metric_out);
        if (bo->parsed()) return run_build_oracle(bo_metric, bo_eps, seed, bo_out);
        if (qc->parsed()) return run_query(q_oracle, q_i, q_j);
        if (rc->parsed()) return run_rank(r_oracle, r_x, r_i);
        if (vc->parsed()) return run_verify(v_oracle, v_metric);
        if (bc->parsed()) return run_bench(b_metric, b_eps, seed, b_queries);
        if (wc->parsed()) {
            if (wd->parsed()) return run_walk_drift(w_graph, w_tmax);
            if (wt->parsed()) return run_walk_type(w_graph, w_p, w_tmax);
            return run_walk_convexity(w_tree_k, w_tree_depth, w_laakso, w_p, w_T);
        }
        if (sc->parsed())
            return run_spectral(sc->get_subcommands().front()->get_name(), s_graph, s_k, s_m,
                                s_subset);
        if (cc->parsed())
            return run_cube(cc->get_subcommands().front()->get_name(), c_in, c_out, c_t, c_p,
                            c_q, c_variant, c_n, c_m, seed);
        if (sk->parsed()) return run_skeleton(sk_metric, sk_eps, seed, sk_out);
    } catch (const ribe::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
