// Copyright 2026 The Seismic Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: index building, k-NN graph construction, search,
// ground truth, evaluation, dataset statistics and latency benchmarking.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "seismic/seismic.hpp"
#include "seismic/synthetic.hpp"

namespace {

using namespace seismic;

struct BuildOptions {
    std::string input;
    std::string output;
    BuildParams params;
    bool no_quantize = false;
    unsigned threads = 0;
};

struct GraphOptions {
    std::string index;
    std::string output;
    std::uint32_t kappa = 10;
    bool exact = false;
    double alpha_q = 0.8;
    double heap_factor = 0.9;
    unsigned threads = 0;
};

struct SearchOptions {
    std::string index;
    std::string graph;
    std::string queries;
    std::string output;
    std::uint32_t k = 10;
    double alpha_q = 0.8;
    double heap_factor = 0.9;
    std::uint32_t reps = 3;
    std::string gt;
    unsigned threads = 0;
};

struct GroundTruthOptions {
    std::string input;
    std::string queries;
    std::string output;
    std::uint32_t k = 10;
    unsigned threads = 0;
};

struct EvaluateOptions {
    std::string run;
    std::string gt;
    std::uint32_t k = 10;
};

struct StatsOptions {
    std::string input;
    std::string queries;
    std::string mode;
    double alpha = 0.5;
    double alpha_q = 0.5;
    std::uint32_t k_far = 100;
    std::uint32_t max_keep = 200;
    std::uint32_t sample = 10'000;
    std::uint64_t seed = 0;
};

struct GenerateOptions {
    std::string output;
    std::string queries;
    synthetic::Config config;
    std::size_t nq = 100;
    std::size_t query_nnz = 20;
};

struct LoadedGraph {
    std::optional<KnnGraph> graph;
    const KnnGraph* get() const { return graph ? &*graph : nullptr; }
};

LoadedGraph maybe_load_graph(const std::string& path, const SeismicIndex& index)
{
    LoadedGraph out;
    if (path.empty()) return out;
    out.graph = load_graph(path);
    if (out.graph->size() != index.size()) {
        throw std::invalid_argument("graph has " + std::to_string(out.graph->size()) +
                                    " nodes but the index holds " + std::to_string(index.size()) + " vectors");
    }
    return out;
}

SearchParams search_params(const SearchOptions& o, bool have_graph)
{
    SearchParams p;
    p.k = o.k;
    p.alpha_q = o.alpha_q;
    p.heap_factor = o.heap_factor;
    p.use_graph = have_graph;
    return p;
}

void run_build(const BuildOptions& o)
{
    BuildParams params = o.params;
    params.quantize = !o.no_quantize;
    const VectorSet set = load_collection(o.input);
    const SeismicIndex index = build_index(set, params, o.threads);
    save_index(index, o.output);

    std::size_t blocks = 0;
    std::size_t postings = 0;
    for (const auto& list : index.lists) {
        blocks += list.blocks.size();
        postings += list.posting_count();
    }
    std::printf("vectors\t%zu\ndim\t%zu\npostings\t%zu\nblocks\t%zu\n", index.size(), index.dim(), postings,
                blocks);
}

void run_knn_graph(const GraphOptions& o)
{
    const SeismicIndex index = load_index(o.index);
    KnnGraph graph;
    if (o.exact) {
        graph = build_exact_graph(index.forward, o.kappa, o.threads);
    } else {
        SearchParams p;
        p.alpha_q = o.alpha_q;
        p.heap_factor = o.heap_factor;
        graph = build_approx_graph(index, o.kappa, p, o.threads);
    }
    save_graph(graph, o.output);
    std::printf("nodes\t%zu\nkappa\t%u\ndegree\t%zu\n", graph.size(), graph.kappa(), graph.degree());
    if (graph.size() >= 2) {
        std::printf("size_bits\t%llu\n",
                    static_cast<unsigned long long>(graph_size_bits(graph.size(), graph.degree())));
    }
    std::printf("file_id_bytes\t%u\n", graph_id_width(graph.size()));
}

void run_search(const SearchOptions& o)
{
    const SeismicIndex index = load_index(o.index);
    const auto graph = maybe_load_graph(o.graph, index);
    const VectorSet queries = load_collection(o.queries);
    SearchStats stats;
    const auto runs = search_all(index, graph.get(), queries, search_params(o, graph.get() != nullptr),
                                 o.threads, &stats);
    save_run(runs, o.output);
    const double nq = queries.empty() ? 1.0 : static_cast<double>(queries.size());
    std::printf("queries\t%zu\nforward_evals_per_query\t%.1f\nblocks_per_query\t%.1f\n", queries.size(),
                static_cast<double>(stats.forward_evals) / nq, static_cast<double>(stats.blocks_evaluated) / nq);
}

void run_ground_truth(const GroundTruthOptions& o)
{
    const VectorSet set = load_collection(o.input);
    const VectorSet queries = load_collection(o.queries);
    save_ground_truth(compute_ground_truth(set, queries, o.k, o.threads), o.output);
    std::printf("queries\t%zu\nk\t%u\n", queries.size(), o.k);
}

void run_evaluate(const EvaluateOptions& o)
{
    const GroundTruth gt = load_ground_truth(o.gt);
    const auto runs = load_run(o.run, gt.queries.size());
    std::printf("accuracy@%u\t%.6f\n", o.k, mean_accuracy_at_k(gt, runs, o.k));
}

void run_stats(const StatsOptions& o)
{
    const VectorSet set = load_collection(o.input);
    if (o.mode == "mass") {
        std::printf("kept\tfraction\n");
        for (const auto& p : mass_curve(set, o.max_keep)) std::printf("%zu\t%.6f\n", p.kept, p.fraction);
        return;
    }
    if (o.queries.empty()) throw std::invalid_argument("--queries is required for mode " + o.mode);
    const VectorSet queries = load_collection(o.queries);
    if (o.mode == "ip") {
        const auto r = ip_preservation(set, queries, o.alpha, o.alpha_q, o.sample, o.seed);
        std::printf("alpha\talpha_q\tpairs\tmean\tci_low\tci_high\n%.4f\t%.4f\t%zu\t%.6f\t%.6f\t%.6f\n", o.alpha,
                    o.alpha_q, r.pairs, r.mean, r.ci_low, r.ci_high);
    } else if (o.mode == "norm-ratio") {
        std::printf("ratio\tcdf\n");
        for (const auto& p : norm_ratio_cdf(set, queries, o.k_far)) std::printf("%.6f\t%.6f\n", p.ratio, p.cumulative);
    } else {
        throw std::invalid_argument("unknown stats mode '" + o.mode + "'");
    }
}

void run_bench(const SearchOptions& o)
{
    const SeismicIndex index = load_index(o.index);
    const auto graph = maybe_load_graph(o.graph, index);
    const VectorSet queries = load_collection(o.queries);
    std::vector<ResultList> results;
    const auto report =
        bench(index, graph.get(), queries, search_params(o, graph.get() != nullptr), o.reps, &results);
    std::printf("queries\t%zu\nreps\t%u\nmean_us\t%.1f\nmedian_us\t%.1f\np95_us\t%.1f\n", queries.size(), o.reps,
                report.mean_us, report.median_us, report.p95_us);
    if (!o.gt.empty()) {
        const GroundTruth gt = load_ground_truth(o.gt);
        std::printf("accuracy@%u\t%.6f\n", o.k, mean_accuracy_at_k(gt, results, o.k));
    }
}

void run_generate(const GenerateOptions& o)
{
    synthetic::Generator gen(o.config);
    save_collection(gen.collection(), o.output);
    if (!o.queries.empty()) save_collection(gen.collection(o.nq, o.query_nnz), o.queries);
}

int fail(const char* kind, const std::string& what, int code)
{
    std::fprintf(stderr, "error [%s]: %s\n", kind, what.c_str());
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Approximate maximum inner product search over sparse vectors"};
    app.require_subcommand(1);

    BuildOptions build;
    auto* cmd_build = app.add_subcommand("build", "Build an index from a CSR collection");
    cmd_build->add_option("--input", build.input, "Collection (CSR)")->required();
    cmd_build->add_option("--output", build.output, "Index file to write")->required();
    cmd_build->add_option("--alpha", build.params.alpha, "Set alpha-MSS of the collection")->required();
    cmd_build->add_option("--beta", build.params.beta, "Blocks per list as a fraction of its length")->required();
    cmd_build->add_option("--gamma", build.params.gamma, "alpha-MSS applied to block summaries")->required();
    cmd_build->add_option("--seed", build.params.seed, "Clustering seed")->required();
    cmd_build->add_flag("--no-quantize", build.no_quantize, "Store raw float summaries");
    cmd_build->add_option("--threads", build.threads, "Worker threads (0 = all cores)");

    GraphOptions graph;
    auto* cmd_graph = app.add_subcommand("knn-graph", "Build the k-NN graph of an indexed collection");
    cmd_graph->add_option("--index", graph.index, "Index file")->required();
    cmd_graph->add_option("--kappa", graph.kappa, "Neighbours per vector")->required();
    cmd_graph->add_option("--output", graph.output, "Graph file to write")->required();
    cmd_graph->add_flag("--exact", graph.exact, "Brute-force graph instead of index search");
    cmd_graph->add_option("--alpha-q", graph.alpha_q, "Query alpha-MSS for approximate construction");
    cmd_graph->add_option("--heap-factor", graph.heap_factor, "Heap factor for approximate construction");
    cmd_graph->add_option("--threads", graph.threads, "Worker threads (0 = all cores)");

    SearchOptions search;
    auto* cmd_search = app.add_subcommand("search", "Search a batch of queries, write a TSV run");
    cmd_search->add_option("--index", search.index, "Index file")->required();
    cmd_search->add_option("--graph", search.graph, "k-NN graph for candidate expansion");
    cmd_search->add_option("--queries", search.queries, "Queries (CSR)")->required();
    cmd_search->add_option("--k", search.k, "Results per query")->required();
    cmd_search->add_option("--alpha-q", search.alpha_q, "Query alpha-MSS")->required();
    cmd_search->add_option("--heap-factor", search.heap_factor, "Block pruning factor")->required();
    cmd_search->add_option("--output", search.output, "Run file (TSV)")->required();
    cmd_search->add_option("--threads", search.threads, "Worker threads (0 = all cores)");

    GroundTruthOptions gt;
    auto* cmd_gt = app.add_subcommand("ground-truth", "Exact top-k for a batch of queries");
    cmd_gt->add_option("--input", gt.input, "Collection (CSR)")->required();
    cmd_gt->add_option("--queries", gt.queries, "Queries (CSR)")->required();
    cmd_gt->add_option("--k", gt.k, "Depth")->required();
    cmd_gt->add_option("--output", gt.output, "Ground-truth file")->required();
    cmd_gt->add_option("--threads", gt.threads, "Worker threads (0 = all cores)");

    EvaluateOptions eval;
    auto* cmd_eval = app.add_subcommand("evaluate", "Mean accuracy@k of a run");
    cmd_eval->add_option("--run", eval.run, "Run file (TSV)")->required();
    cmd_eval->add_option("--gt", eval.gt, "Ground-truth file")->required();
    cmd_eval->add_option("--k", eval.k, "Cutoff")->required();

    StatsOptions stats;
    auto* cmd_stats = app.add_subcommand("stats", "Dataset statistics as TSV");
    cmd_stats->add_option("--input", stats.input, "Collection (CSR)")->required();
    cmd_stats->add_option("--queries", stats.queries, "Queries (CSR), required by ip and norm-ratio");
    cmd_stats->add_option("--mode", stats.mode, "mass | ip | norm-ratio")
        ->required()
        ->check(CLI::IsMember({"mass", "ip", "norm-ratio"}));
    cmd_stats->add_option("--alpha", stats.alpha, "Vector alpha-MSS (ip)");
    cmd_stats->add_option("--alpha-q", stats.alpha_q, "Query alpha-MSS (ip)");
    cmd_stats->add_option("--k-far", stats.k_far, "Rank of the far neighbour (norm-ratio)");
    cmd_stats->add_option("--max-keep", stats.max_keep, "Largest entry count on the curve (mass)");
    cmd_stats->add_option("--sample", stats.sample, "Pairs to sample (ip)");
    cmd_stats->add_option("--seed", stats.seed, "Sampling seed (ip)");

    SearchOptions bench_opts;
    auto* cmd_bench = app.add_subcommand("bench", "Single-threaded query latency");
    cmd_bench->add_option("--index", bench_opts.index, "Index file")->required();
    cmd_bench->add_option("--graph", bench_opts.graph, "k-NN graph for candidate expansion");
    cmd_bench->add_option("--queries", bench_opts.queries, "Queries (CSR)")->required();
    cmd_bench->add_option("--k", bench_opts.k, "Results per query")->required();
    cmd_bench->add_option("--alpha-q", bench_opts.alpha_q, "Query alpha-MSS")->required();
    cmd_bench->add_option("--heap-factor", bench_opts.heap_factor, "Block pruning factor")->required();
    cmd_bench->add_option("--reps", bench_opts.reps, "Repetitions; the fastest run per query counts")->required();
    cmd_bench->add_option("--gt", bench_opts.gt, "Ground truth, to also report accuracy@k");

    GenerateOptions gen;
    auto* cmd_gen = app.add_subcommand("generate", "Write a synthetic collection (and queries)");
    cmd_gen->add_option("--output", gen.output, "Collection file to write")->required();
    cmd_gen->add_option("--queries", gen.queries, "Query file to write");
    cmd_gen->add_option("--n", gen.config.n, "Vectors");
    cmd_gen->add_option("--dim", gen.config.dim, "Dimensionality");
    cmd_gen->add_option("--nnz", gen.config.mean_nnz, "Mean nonzeros per vector");
    cmd_gen->add_option("--nq", gen.nq, "Queries");
    cmd_gen->add_option("--query-nnz", gen.query_nnz, "Mean nonzeros per query");
    cmd_gen->add_option("--seed", gen.config.seed, "Generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_build) run_build(build);
        if (*cmd_graph) run_knn_graph(graph);
        if (*cmd_search) run_search(search);
        if (*cmd_gt) run_ground_truth(gt);
        if (*cmd_eval) run_evaluate(eval);
        if (*cmd_stats) run_stats(stats);
        if (*cmd_bench) run_bench(bench_opts);
        if (*cmd_gen) run_generate(gen);
    } catch (const FormatError& e) {
        return fail(to_string(e.kind()), e.what(), 2);
    } catch (const std::invalid_argument& e) {
        return fail("argument", e.what(), 3);
    } catch (const std::out_of_range& e) {
        return fail("argument", e.what(), 3);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
