#include "bnsl/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "bnsl/metrics.hpp"

namespace bnsl {

namespace {

constexpr uint64_t kStructureStream = 1;
constexpr uint64_t kParameterStream = 2;
constexpr uint64_t kSampleStream = 3;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

const char* space_name(SearchSpace space) {
    switch (space) {
        case SearchSpace::B: return "b";
        case SearchSpace::E: return "e";
        case SearchSpace::Hybrid: return "hybrid";
    }
    return "?";
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.node_counts.empty() || cfg.case_counts.empty()) {
        throw std::invalid_argument("experiment: empty setting lists");
    }
    for (int n : cfg.node_counts) {
        if (n < 1) throw std::invalid_argument("experiment: node count must be >= 1");
    }
    for (int m : cfg.case_counts) {
        if (m < 0) throw std::invalid_argument("experiment: negative case count");
    }
    if (cfg.golds < 1 || cfg.dbs < 1) {
        throw std::invalid_argument("experiment: golds and dbs must be >= 1");
    }
    if (cfg.ess <= 0.0) throw std::invalid_argument("experiment: ess must be > 0");

    std::vector<SearchSpace> spaces{SearchSpace::E, SearchSpace::B};
    if (cfg.run_hybrid) spaces.push_back(SearchSpace::Hybrid);

    ExperimentResult result;
    result.config = cfg;

    uint64_t setting_index = 0;
    for (int nodes : cfg.node_counts) {
        for (int cases : cfg.case_counts) {
            struct Acc {
                double score = 0.0, strct = 0.0, seconds = 0.0;
            };
            Acc acc_e, acc_b, acc_h;
            const int runs_per_space = cfg.golds * cfg.dbs;

            for (int gold = 0; gold < cfg.golds; ++gold) {
                Dag gold_dag = random_dag(
                    nodes, cfg.edge_prob, cfg.max_parents,
                    derive_seed(cfg.base_seed, {setting_index,
                                                static_cast<uint64_t>(gold),
                                                kStructureStream}));
                BayesianNetwork gold_net = random_parameters(
                    gold_dag, VariableTable::binary(nodes),
                    derive_seed(cfg.base_seed, {setting_index,
                                                static_cast<uint64_t>(gold),
                                                kParameterStream}));
                CompletedPdag gold_class = dag_to_cpdag(gold_dag);

                for (int db = 0; db < cfg.dbs; ++db) {
                    Dataset data = forward_sample(
                        gold_net, cases,
                        derive_seed(cfg.base_seed, {setting_index,
                                                    static_cast<uint64_t>(gold),
                                                    static_cast<uint64_t>(db),
                                                    kSampleStream}));
                    ScoringConfig score_cfg{cfg.ess};

                    for (SearchSpace space : spaces) {
                        ScoreCache cache;
                        auto start = std::chrono::steady_clock::now();
                        SearchResult sr = greedy(space, data, score_cfg, &cache);
                        double seconds = elapsed_seconds(start);
                        int sd = structural_difference(sr.result_class(), gold_class);

                        result.runs.push_back({nodes, cases, gold, db, space, sr.score,
                                               sd, seconds,
                                               static_cast<int64_t>(sr.trace.size()),
                                               sr.evaluations});
                        Acc& acc = space == SearchSpace::E   ? acc_e
                                   : space == SearchSpace::B ? acc_b
                                                             : acc_h;
                        acc.score += sr.score;
                        acc.strct += sd;
                        acc.seconds += seconds;
                    }
                }
            }

            ExperimentRow row;
            row.nodes = nodes;
            row.cases = cases;
            row.e_score = acc_e.score / runs_per_space;
            row.b_score = acc_b.score / runs_per_space;
            row.score_diff = row.e_score - row.b_score;
            row.e_struct = acc_e.strct / runs_per_space;
            row.b_struct = acc_b.strct / runs_per_space;
            row.struct_diff_gain = row.b_struct - row.e_struct;
            row.e_seconds = acc_e.seconds / runs_per_space;
            row.b_seconds = acc_b.seconds / runs_per_space;
            row.time_ratio = row.b_seconds > 0.0 ? row.e_seconds / row.b_seconds : 0.0;
            if (cfg.run_hybrid) {
                row.h_score = acc_h.score / runs_per_space;
                row.h_struct = acc_h.strct / runs_per_space;
                row.h_seconds = acc_h.seconds / runs_per_space;
            }
            result.rows.push_back(row);
            ++setting_index;
        }
    }
    return result;
}

namespace {

std::string fmt(double v, const char* spec = "%.6f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

std::string format_experiment_tsv(const ExperimentResult& result) {
    std::string out =
        "nodes\tcases\te_score\tb_score\tscore_diff\te_struct\tb_struct\t"
        "struct_diff\te_time_s\tb_time_s\ttime_ratio";
    if (result.config.run_hybrid) out += "\thybrid_score\thybrid_struct\thybrid_time_s";
    out += "\n";
    for (const ExperimentRow& r : result.rows) {
        out += std::to_string(r.nodes) + "\t" + std::to_string(r.cases) + "\t" +
               fmt(r.e_score) + "\t" + fmt(r.b_score) + "\t" + fmt(r.score_diff) + "\t" +
               fmt(r.e_struct) + "\t" + fmt(r.b_struct) + "\t" +
               fmt(r.struct_diff_gain) + "\t" + fmt(r.e_seconds) + "\t" +
               fmt(r.b_seconds) + "\t" + fmt(r.time_ratio);
        if (result.config.run_hybrid) {
            out += "\t" + fmt(r.h_score) + "\t" + fmt(r.h_struct) + "\t" +
                   fmt(r.h_seconds);
        }
        out += "\n";
    }
    return out;
}

std::string format_runs_tsv(const ExperimentResult& result) {
    std::string out =
        "nodes\tcases\tgold\tdb\tspace\tscore\tstruct_diff\ttime_s\tsteps\tevals\n";
    for (const RunRecord& r : result.runs) {
        out += std::to_string(r.nodes) + "\t" + std::to_string(r.cases) + "\t" +
               std::to_string(r.gold) + "\t" + std::to_string(r.db) + "\t" +
               space_name(r.space) + "\t" + fmt(r.score) + "\t" +
               std::to_string(r.struct_diff) + "\t" + fmt(r.seconds) + "\t" +
               std::to_string(r.steps) + "\t" + std::to_string(r.evaluations) + "\n";
    }
    return out;
}

}  // namespace bnsl
