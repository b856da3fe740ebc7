#include "bnsl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bnsl {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

[[noreturn]] void parse_fail(size_t lineno, const std::string& message) {
    throw std::runtime_error("parse error at line " + std::to_string(lineno) + ": " +
                             message);
}

int parse_int(const std::string& tok, size_t lineno) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        parse_fail(lineno, "expected integer, got '" + tok + "'");
    }
}

double parse_double(const std::string& tok, size_t lineno) {
    try {
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        parse_fail(lineno, "expected number, got '" + tok + "'");
    }
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

ParsedGraph parse_graph(const std::string& text) {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    struct Rec {
        int a, b;
        bool directed;
    };
    std::vector<Rec> recs;
    bool any_undirected = false;

    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) parse_fail(lineno, "unknown node '" + name + "'");
        return it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "node") {
            if (tokens.size() != 2) parse_fail(lineno, "node takes one name");
            if (index.count(tokens[1])) parse_fail(lineno, "duplicate node " + tokens[1]);
            index.emplace(tokens[1], static_cast<int>(names.size()));
            names.push_back(tokens[1]);
        } else if (tokens.size() == 3 && (tokens[1] == "->" || tokens[1] == "--")) {
            int a = lookup(tokens[0]);
            int b = lookup(tokens[2]);
            bool directed = tokens[1] == "->";
            any_undirected |= !directed;
            recs.push_back({a, b, directed});
        } else {
            parse_fail(lineno, "unrecognized record '" + line + "'");
        }
    }

    std::vector<Edge> directed;
    std::vector<Edge> undirected;
    for (const Rec& r : recs) {
        if (r.directed) {
            directed.push_back({r.a, r.b});
        } else {
            undirected.push_back({r.a, r.b});
        }
    }
    Pdag p(static_cast<int>(names.size()), directed, undirected);
    return ParsedGraph{std::move(names), std::move(p), any_undirected};
}

ParsedGraph read_graph_file(const std::string& path) {
    return parse_graph(read_text_file(path));
}

Dag read_dag_file(const std::string& path, std::vector<std::string>* names_out) {
    ParsedGraph parsed = read_graph_file(path);
    if (parsed.has_undirected) {
        throw std::runtime_error(path + ": dag file contains undirected edges");
    }
    if (names_out) *names_out = parsed.names;
    return Dag(parsed.graph.node_count(), parsed.graph.directed_edges());
}

namespace {

std::string format_graph_common(const std::vector<std::string>& names,
                                const std::vector<Edge>& directed,
                                const std::vector<Edge>& undirected) {
    std::string out;
    for (const auto& name : names) out += "node " + name + "\n";
    for (const Edge& e : directed) {
        out += names.at(e.from) + " -> " + names.at(e.to) + "\n";
    }
    for (const Edge& e : undirected) {
        out += names.at(e.from) + " -- " + names.at(e.to) + "\n";
    }
    return out;
}

}  // namespace

std::string format_dag(const std::vector<std::string>& names, const Dag& g) {
    return format_graph_common(names, g.edges(), {});
}

std::string format_pdag(const std::vector<std::string>& names, const Pdag& p) {
    return format_graph_common(names, p.directed_edges(), p.undirected_edges());
}

void write_dag_file(const std::string& path, const std::vector<std::string>& names,
                    const Dag& g) {
    write_text_file(path, format_dag(names, g));
}

void write_pdag_file(const std::string& path, const std::vector<std::string>& names,
                     const Pdag& p) {
    write_text_file(path, format_pdag(names, p));
}

BayesianNetwork parse_network(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;

    int n = -1;
    std::vector<std::string> names;
    std::vector<int> arities;
    std::unordered_map<std::string, int> index;
    std::vector<std::vector<int>> parent_lists;
    std::vector<char> have_parents;
    std::vector<std::vector<std::vector<double>>> cpt_rows;

    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) parse_fail(lineno, "unknown variable '" + name + "'");
        return it->second;
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& kw = tokens[0];
        if (kw == "nodes") {
            if (n >= 0) parse_fail(lineno, "duplicate nodes line");
            if (tokens.size() != 2) parse_fail(lineno, "nodes takes one count");
            n = parse_int(tokens[1], lineno);
            if (n < 1) parse_fail(lineno, "node count must be >= 1");
        } else if (kw == "var") {
            if (n < 0) parse_fail(lineno, "var before nodes");
            if (tokens.size() != 3) parse_fail(lineno, "var takes name and arity");
            if (index.count(tokens[1])) parse_fail(lineno, "duplicate var " + tokens[1]);
            if (static_cast<int>(names.size()) >= n) parse_fail(lineno, "too many vars");
            int arity = parse_int(tokens[2], lineno);
            if (arity < 1) parse_fail(lineno, "arity must be >= 1");
            index.emplace(tokens[1], static_cast<int>(names.size()));
            names.push_back(tokens[1]);
            arities.push_back(arity);
        } else if (kw == "parents") {
            if (static_cast<int>(names.size()) != n) {
                parse_fail(lineno, "parents before all vars declared");
            }
            if (tokens.size() < 2) parse_fail(lineno, "parents takes a variable name");
            if (parent_lists.empty()) {
                parent_lists.assign(n, {});
                have_parents.assign(n, 0);
                cpt_rows.assign(n, {});
            }
            int v = lookup(tokens[1]);
            if (have_parents[v]) parse_fail(lineno, "duplicate parents for " + tokens[1]);
            have_parents[v] = 1;
            for (size_t i = 2; i < tokens.size(); ++i) {
                int p = lookup(tokens[i]);
                if (p == v) parse_fail(lineno, "variable cannot parent itself");
                parent_lists[v].push_back(p);
            }
        } else if (kw == "cpt") {
            if (parent_lists.empty()) parse_fail(lineno, "cpt before parents");
            if (tokens.size() < 3) parse_fail(lineno, "cpt takes name, index, entries");
            int v = lookup(tokens[1]);
            if (!have_parents[v]) parse_fail(lineno, "cpt before parents for " + tokens[1]);
            int j = parse_int(tokens[2], lineno);
            if (j != static_cast<int>(cpt_rows[v].size())) {
                parse_fail(lineno, "cpt rows for " + tokens[1] +
                                       " must appear in configuration order");
            }
            std::vector<double> row;
            for (size_t i = 3; i < tokens.size(); ++i) {
                row.push_back(parse_double(tokens[i], lineno));
            }
            cpt_rows[v].push_back(std::move(row));
        } else {
            parse_fail(lineno, "unrecognized keyword '" + kw + "'");
        }
    }

    if (n < 0) throw std::runtime_error("network file missing nodes line");
    if (static_cast<int>(names.size()) != n) {
        throw std::runtime_error("network file declares fewer vars than nodes");
    }
    if (parent_lists.empty()) parent_lists.assign(n, {});
    if (cpt_rows.empty()) cpt_rows.assign(n, {});

    VariableTable vt(names, arities);
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) {
        for (int p : parent_lists[v]) edges.push_back({p, v});
    }
    Dag dag = [&] {
        try {
            return Dag(n, edges);
        } catch (const std::invalid_argument& err) {
            throw std::runtime_error(std::string("network structure invalid: ") +
                                     err.what());
        }
    }();

    BayesianNetwork bn{std::move(vt), std::move(dag), {}};
    for (int v = 0; v < n; ++v) {
        bn.cpts.push_back(Cpt{v, parent_lists[v], cpt_rows[v]});
    }
    try {
        bn.validate();
    } catch (const std::invalid_argument& err) {
        throw std::runtime_error(err.what());
    }
    return bn;
}

BayesianNetwork load_network(const std::string& path) {
    return parse_network(read_text_file(path));
}

std::string format_network(const BayesianNetwork& bn) {
    const VariableTable& vt = bn.variables;
    std::string out = "nodes " + std::to_string(vt.size()) + "\n";
    for (int v = 0; v < vt.size(); ++v) {
        out += "var " + vt.name(v) + " " + std::to_string(vt.arity(v)) + "\n";
    }
    for (int v = 0; v < vt.size(); ++v) {
        out += "parents " + vt.name(v);
        for (int p : bn.cpts[v].parents) out += " " + vt.name(p);
        out += "\n";
    }
    char buf[48];
    for (int v = 0; v < vt.size(); ++v) {
        const Cpt& cpt = bn.cpts[v];
        for (size_t j = 0; j < cpt.rows.size(); ++j) {
            out += "cpt " + vt.name(v) + " " + std::to_string(j);
            for (double p : cpt.rows[j]) {
                std::snprintf(buf, sizeof buf, " %.17g", p);
                out += buf;
            }
            out += "\n";
        }
    }
    return out;
}

void save_network(const std::string& path, const BayesianNetwork& bn) {
    write_text_file(path, format_network(bn));
}

std::string format_dataset_csv(const Dataset& d) {
    const VariableTable& vt = d.variables();
    std::string out;
    for (int v = 0; v < vt.size(); ++v) {
        if (v) out += ",";
        out += vt.name(v);
    }
    out += "\n";
    for (int t = 0; t < d.case_count(); ++t) {
        for (int v = 0; v < vt.size(); ++v) {
            if (v) out += ",";
            out += std::to_string(d.value(v, t));
        }
        out += "\n";
    }
    return out;
}

void write_dataset_csv(const std::string& path, const Dataset& d) {
    write_text_file(path, format_dataset_csv(d));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

struct RawCsv {
    std::vector<std::string> names;
    std::vector<std::vector<int>> rows;
};

RawCsv read_raw_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    size_t lineno = 0;
    RawCsv out;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (lineno == 1) {
            out.names = fields;
            continue;
        }
        if (fields.size() != out.names.size()) {
            parse_fail(lineno, "row width does not match header");
        }
        std::vector<int> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_int(f, lineno));
        out.rows.push_back(std::move(row));
    }
    if (out.names.empty()) throw std::runtime_error(path + ": missing csv header");
    return out;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path) {
    RawCsv raw = read_raw_csv(path);
    std::vector<int> arities(raw.names.size(), 2);
    for (const auto& row : raw.rows) {
        for (size_t v = 0; v < row.size(); ++v) {
            if (row[v] < 0) throw std::runtime_error(path + ": negative state index");
            arities[v] = std::max(arities[v], row[v] + 1);
        }
    }
    return Dataset(VariableTable(raw.names, arities), raw.rows);
}

Dataset read_dataset_csv(const std::string& path, const VariableTable& vt) {
    RawCsv raw = read_raw_csv(path);
    if (raw.names != vt.names()) {
        throw std::runtime_error(path + ": csv header does not match variable table");
    }
    return Dataset(vt, raw.rows);
}

}  // namespace bnsl
