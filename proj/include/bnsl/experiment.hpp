#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bnsl/netgen.hpp"
#include "bnsl/scoring.hpp"
#include "bnsl/search.hpp"

namespace bnsl {

// One benchmark sweep: for every (nodes, cases) setting, generate `golds`
// random gold-standard networks, sample `dbs` databases from each, and run
// greedy search in the requested spaces on every database. Scores and
// structural differences are averaged over the golds x dbs runs of a
// setting.
//
// The dag-space and class-space searches are always run (the report's
// difference columns need both); the hybrid is optional. All randomness is
// derived from base_seed via (setting index, gold index, db index,
// purpose) so reruns are reproducible and replications independent.
struct ExperimentConfig {
    std::vector<int> node_counts;
    std::vector<int> case_counts;
    int golds = 3;
    int dbs = 3;
    bool run_hybrid = false;
    double ess = 8.0;
    double edge_prob = 0.3;
    int max_parents = 4;
    uint64_t base_seed = 1;
};

struct RunRecord {
    int nodes = 0;
    int cases = 0;
    int gold = 0;
    int db = 0;
    SearchSpace space = SearchSpace::B;
    double score = 0.0;
    int struct_diff = 0;
    double seconds = 0.0;
    int64_t steps = 0;
    int64_t evaluations = 0;
};

// Sign conventions follow the benchmark tables: score_diff = class-space
// minus dag-space, struct_diff_gain = dag-space minus class-space, so a
// positive number is a class-space win on either measure.
struct ExperimentRow {
    int nodes = 0;
    int cases = 0;
    double e_score = 0.0;
    double b_score = 0.0;
    double score_diff = 0.0;
    double e_struct = 0.0;
    double b_struct = 0.0;
    double struct_diff_gain = 0.0;
    double e_seconds = 0.0;
    double b_seconds = 0.0;
    double time_ratio = 0.0;
    // Populated only when the hybrid runs.
    double h_score = 0.0;
    double h_struct = 0.0;
    double h_seconds = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<ExperimentRow> rows;
    std::vector<RunRecord> runs;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Tab-separated report, one row per setting; column order matches the
// comparison tables (setting, class-space score, dag-space score, score
// diff, structs, struct diff, times, time ratio), with hybrid columns
// appended when present.
std::string format_experiment_tsv(const ExperimentResult& result);
// Per-run log backing the report: one line per (setting, gold, db, space).
std::string format_runs_tsv(const ExperimentResult& result);

const char* space_name(SearchSpace space);

}  // namespace bnsl
