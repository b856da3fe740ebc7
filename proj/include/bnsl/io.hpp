#pragma once

#include <string>
#include <vector>

#include "bnsl/equivalence.hpp"
#include "bnsl/graph.hpp"
#include "bnsl/netgen.hpp"
#include "bnsl/scoring.hpp"

namespace bnsl {

// Graph text format, one record per line:
//   node <name>        declares a node, order defines the index
//   <a> -> <b>         directed edge
//   <a> -- <b>         undirected edge
// Lines starting with '#' and blank lines are ignored. A dag file must
// contain no '--' records.
struct ParsedGraph {
    std::vector<std::string> names;
    Pdag graph;
    bool has_undirected = false;
};

ParsedGraph parse_graph(const std::string& text);
ParsedGraph read_graph_file(const std::string& path);
// Rejects files containing '--' records.
Dag read_dag_file(const std::string& path, std::vector<std::string>* names_out = nullptr);

std::string format_dag(const std::vector<std::string>& names, const Dag& g);
std::string format_pdag(const std::vector<std::string>& names, const Pdag& p);
void write_dag_file(const std::string& path, const std::vector<std::string>& names,
                    const Dag& g);
void write_pdag_file(const std::string& path, const std::vector<std::string>& names,
                     const Pdag& p);

// Network text format:
//   nodes <n>
//   var <name> <arity>                          (n lines, order = index)
//   parents <name> [<parent> ...]               (one per node; order is the
//                                                configuration radix, first
//                                                listed most significant)
//   cpt <name> <config-index> <p0> ... <p(r-1)> (one per configuration)
// '#' starts a comment. Loading validates arities, parent lists, row sums
// and acyclicity of the declared structure.
BayesianNetwork parse_network(const std::string& text);
BayesianNetwork load_network(const std::string& path);
std::string format_network(const BayesianNetwork& bn);
void save_network(const std::string& path, const BayesianNetwork& bn);

// Dataset CSV: header row of variable names in table order, then one row
// of 0-based state indices per case. No quoting, no missing entries.
std::string format_dataset_csv(const Dataset& d);
void write_dataset_csv(const std::string& path, const Dataset& d);
// Arities are inferred as max(observed value + 1, 2) per column.
Dataset read_dataset_csv(const std::string& path);
// Validates names and values against the given table instead of inferring.
Dataset read_dataset_csv(const std::string& path, const VariableTable& vt);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace bnsl
