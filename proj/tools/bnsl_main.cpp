#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnsl/equivalence.hpp"
#include "bnsl/experiment.hpp"
#include "bnsl/io.hpp"
#include "bnsl/metrics.hpp"
#include "bnsl/netgen.hpp"
#include "bnsl/scoring.hpp"
#include "bnsl/search.hpp"

namespace {

using namespace bnsl;

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::string tok;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!tok.empty()) out.push_back(std::stoi(tok));
            tok.clear();
        } else {
            tok += c;
        }
    }
    if (out.empty()) throw std::runtime_error("empty integer list");
    return out;
}

int cmd_generate(int nodes, double edge_prob, int max_parents, uint64_t seed,
                 const std::string& out) {
    BayesianNetwork bn = random_network(nodes, edge_prob, max_parents, seed);
    save_network(out, bn);
    std::cout << "nodes " << nodes << " edges " << bn.dag.edge_count() << "\n";
    return 0;
}

int cmd_sample(const std::string& network_path, int cases, uint64_t seed,
               const std::string& out) {
    BayesianNetwork bn = load_network(network_path);
    Dataset data = forward_sample(bn, cases, seed);
    write_dataset_csv(out, data);
    std::cout << "cases " << cases << "\n";
    return 0;
}

int cmd_learn(const std::string& data_path, const std::string& space_name_arg,
              double ess, const std::string& out, const std::string& trace_path) {
    Dataset data = read_dataset_csv(data_path);
    SearchSpace space;
    if (space_name_arg == "b") {
        space = SearchSpace::B;
    } else if (space_name_arg == "e") {
        space = SearchSpace::E;
    } else if (space_name_arg == "hybrid") {
        space = SearchSpace::Hybrid;
    } else {
        throw std::runtime_error("unknown space '" + space_name_arg + "'");
    }

    ScoringConfig cfg{ess};
    ScoreCache cache;
    SearchResult result = greedy(space, data, cfg, &cache);

    const auto& names = data.variables().names();
    if (const Dag* g = result.dag()) {
        write_dag_file(out, names, *g);
    } else {
        write_pdag_file(out, names, result.cpdag()->graph());
    }
    if (!trace_path.empty()) write_text_file(trace_path, result.format_trace());

    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", result.score);
    std::cout << "score " << buf << "\n";
    std::cout << "steps " << result.trace.size() << "\n";
    return 0;
}

// Accepts either a graph text file (a learned dag or completed pdag) or a
// network file (detected by its leading `nodes` line); gold dags are
// reduced to their class representation before comparison.
struct LoadedStructure {
    std::vector<std::string> names;
    CompletedPdag cls;
};

LoadedStructure load_structure(const std::string& path) {
    std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string first_word;
    in >> first_word;
    if (first_word == "nodes") {
        BayesianNetwork bn = parse_network(text);
        return {bn.variables.names(), dag_to_cpdag(bn.dag)};
    }
    ParsedGraph parsed = parse_graph(text);
    if (parsed.has_undirected) {
        return {parsed.names, CompletedPdag::from_pdag(parsed.graph)};
    }
    Dag g(parsed.graph.node_count(), parsed.graph.directed_edges());
    return {parsed.names, dag_to_cpdag(g)};
}

int cmd_compare(const std::string& path_a, const std::string& path_b) {
    LoadedStructure a = load_structure(path_a);
    LoadedStructure b = load_structure(path_b);
    if (a.names != b.names) {
        throw std::runtime_error("structures are over different variable sets");
    }
    std::cout << structural_difference(a.cls, b.cls) << "\n";
    return 0;
}

int cmd_experiment(const std::string& nodes_csv, const std::string& cases_csv,
                   int golds, int dbs, const std::string& spaces_csv, double ess,
                   double edge_prob, int max_parents, uint64_t seed,
                   const std::string& out) {
    ExperimentConfig cfg;
    cfg.node_counts = parse_int_list(nodes_csv);
    cfg.case_counts = parse_int_list(cases_csv);
    cfg.golds = golds;
    cfg.dbs = dbs;
    cfg.ess = ess;
    cfg.edge_prob = edge_prob;
    cfg.max_parents = max_parents;
    cfg.base_seed = seed;

    bool want_b = false, want_e = false;
    std::string tok;
    for (char c : spaces_csv + ",") {
        if (c != ',') {
            tok += c;
            continue;
        }
        if (tok == "b") want_b = true;
        else if (tok == "e") want_e = true;
        else if (tok == "hybrid") cfg.run_hybrid = true;
        else if (!tok.empty()) throw std::runtime_error("unknown space '" + tok + "'");
        tok.clear();
    }
    if (!want_b || !want_e) {
        throw std::runtime_error("experiment needs both b and e (the report compares them)");
    }

    ExperimentResult result = run_experiment(cfg);
    write_text_file(out, format_experiment_tsv(result));
    write_text_file(out + ".runs.tsv", format_runs_tsv(result));
    std::cout << "settings " << result.rows.size() << " runs " << result.runs.size()
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian network structure learning over dag space and "
                 "equivalence-class space"};
    app.require_subcommand(1);

    // generate
    int gen_nodes = 10;
    double gen_edge_prob = 0.3;
    int gen_max_parents = 4;
    uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "Generate a random gold-standard network");
    gen->add_option("--nodes", gen_nodes, "Number of (binary) variables")->required();
    gen->add_option("--edge-prob", gen_edge_prob, "Edge insertion probability");
    gen->add_option("--max-parents", gen_max_parents, "Parent cap per node");
    gen->add_option("--seed", gen_seed, "Random seed");
    gen->add_option("--out", gen_out, "Output network file")->required();

    // sample
    std::string smp_network;
    int smp_cases = 500;
    uint64_t smp_seed = 1;
    std::string smp_out;
    auto* smp = app.add_subcommand("sample", "Forward-sample cases from a network");
    smp->add_option("--network", smp_network, "Network file")->required();
    smp->add_option("--cases", smp_cases, "Number of cases")->required();
    smp->add_option("--seed", smp_seed, "Random seed");
    smp->add_option("--out", smp_out, "Output CSV")->required();

    // learn
    std::string lrn_data;
    std::string lrn_space = "e";
    double lrn_ess = 8.0;
    uint64_t lrn_seed = 0;
    std::string lrn_out;
    std::string lrn_trace;
    auto* lrn = app.add_subcommand("learn", "Greedy structure search on a dataset");
    lrn->add_option("--data", lrn_data, "Dataset CSV")->required();
    lrn->add_option("--space", lrn_space, "Search space: b, e, or hybrid");
    lrn->add_option("--ess", lrn_ess, "Equivalent sample size");
    lrn->add_option("--seed", lrn_seed,
                    "Tie-break seed (accepted for interface stability; the "
                    "built-in tie-break is deterministic)");
    lrn->add_option("--out", lrn_out, "Output structure file")->required();
    lrn->add_option("--trace", lrn_trace, "Optional step trace file");

    // compare
    std::string cmp_a, cmp_b;
    auto* cmp = app.add_subcommand("compare",
                                   "Structural difference between two structures "
                                   "(graph files or a gold network file)");
    cmp->add_option("file_a", cmp_a, "First structure")->required();
    cmp->add_option("file_b", cmp_b, "Second structure or gold network")->required();

    // experiment
    std::string exp_nodes = "10";
    std::string exp_cases = "500";
    int exp_golds = 3;
    int exp_dbs = 3;
    std::string exp_spaces = "b,e";
    double exp_ess = 8.0;
    double exp_edge_prob = 0.3;
    int exp_max_parents = 4;
    uint64_t exp_seed = 1;
    std::string exp_out;
    auto* exp = app.add_subcommand("experiment",
                                   "Run the gold/database/search sweep and write a "
                                   "TSV report plus per-run log");
    exp->add_option("--nodes", exp_nodes, "Comma-separated node counts");
    exp->add_option("--cases", exp_cases, "Comma-separated case counts");
    exp->add_option("--golds", exp_golds, "Gold standards per setting");
    exp->add_option("--dbs", exp_dbs, "Databases per gold standard");
    exp->add_option("--spaces", exp_spaces, "b,e[,hybrid]");
    exp->add_option("--ess", exp_ess, "Equivalent sample size");
    exp->add_option("--edge-prob", exp_edge_prob, "Gold edge probability");
    exp->add_option("--max-parents", exp_max_parents, "Gold parent cap");
    exp->add_option("--seed", exp_seed, "Base seed");
    exp->add_option("--out", exp_out, "Report TSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            return cmd_generate(gen_nodes, gen_edge_prob, gen_max_parents, gen_seed,
                                gen_out);
        }
        if (smp->parsed()) return cmd_sample(smp_network, smp_cases, smp_seed, smp_out);
        if (lrn->parsed()) {
            (void)lrn_seed;
            return cmd_learn(lrn_data, lrn_space, lrn_ess, lrn_out, lrn_trace);
        }
        if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b);
        if (exp->parsed()) {
            return cmd_experiment(exp_nodes, exp_cases, exp_golds, exp_dbs, exp_spaces,
                                  exp_ess, exp_edge_prob, exp_max_parents, exp_seed,
                                  exp_out);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
