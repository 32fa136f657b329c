#include "eschercount/condgraph.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace esc {

void ConditionGraph::add_edge(int row, int src, int dst, EdgeType type) {
    const int width = SlotLayout::for_arity(arity).size();
    if (row < 0 || row >= n_rows) throw std::out_of_range("row out of range");
    if (src < 0 || src >= width || dst < 0 || dst >= width)
        throw std::out_of_range("slot index out of range");
    CondEdge e{row, src, dst, type};
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    edges.insert(it, e);
}

bool ConditionGraph::satisfies(const CoreSlots& core) const {
    if (static_cast<int>(core.size()) != SlotLayout::for_arity(arity).size())
        throw LayoutMismatch("core width does not match graph layout");
    // edges are sorted by row; scan rows in order.
    size_t pos = 0;
    for (int row = 0; row < n_rows; ++row) {
        bool ok = true;
        while (pos < edges.size() && edges[pos].row == row) {
            const CondEdge& e = edges[pos++];
            if (ok) {
                if (e.type == EdgeType::less)
                    ok = core[e.src] < core[e.dst];
                else
                    ok = core[e.src] >= core[e.dst];
            }
        }
        if (ok) return true;
    }
    return false;
}

bool ConditionGraph::has_trivial_row() const {
    std::vector<bool> active(n_rows, false);
    for (const CondEdge& e : edges) active[e.row] = true;
    for (int r = 0; r < n_rows; ++r)
        if (!active[r]) return true;
    return false;
}

std::string ConditionGraph::encode() const {
    std::ostringstream os;
    os << "a" << arity << ";r" << n_rows;
    for (const CondEdge& e : edges)
        os << ";" << e.row << "," << e.src << "," << e.dst << ","
           << (e.type == EdgeType::less ? "<" : ">=");
    return os.str();
}

void ConditionGraph::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "lambda=" << partition_to_string(lambda) << '\n';
    out << "rows=" << n_rows << '\n';
    out << "arity=" << arity << '\n';
    for (const CondEdge& e : edges)
        out << "edge=" << e.row << ',' << e.src << ',' << e.dst << ','
            << (e.type == EdgeType::less ? "less" : "geq") << '\n';
}

ConditionGraph ConditionGraph::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw MissingDataset("missing condition graph file " + file.string());
    ConditionGraph g;
    std::string line;
    std::vector<CondEdge> edges;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw InvalidConfig("bad graph line: " + line);
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "lambda") {
            g.lambda = partition_from_string(val);
        } else if (key == "rows") {
            g.n_rows = std::stoi(val);
        } else if (key == "arity") {
            g.arity = std::stoi(val);
        } else if (key == "edge") {
            std::istringstream is(val);
            std::string tok;
            CondEdge e;
            std::getline(is, tok, ',');
            e.row = std::stoi(tok);
            std::getline(is, tok, ',');
            e.src = std::stoi(tok);
            std::getline(is, tok, ',');
            e.dst = std::stoi(tok);
            std::getline(is, tok, ',');
            if (tok == "less")
                e.type = EdgeType::less;
            else if (tok == "geq")
                e.type = EdgeType::geq;
            else
                throw InvalidConfig("bad edge type: " + tok);
            edges.push_back(e);
        } else {
            throw InvalidConfig("unknown graph key: " + key);
        }
    }
    std::sort(edges.begin(), edges.end());
    g.edges = std::move(edges);
    return g;
}

std::vector<long long> predicted_vector(const ConditionGraph& g, const CoreTypeTable& table) {
    if (g.arity != static_cast<int>(table.lambda.size()))
        throw LayoutMismatch("graph arity does not match table lambda length");
    std::vector<long long> out(catalan(table.n), 0);
    for (const auto& [slots, counts] : table.entries) {
        if (!g.satisfies(slots)) continue;
        for (const auto& [uio, count] : counts) out[uio] += count;
    }
    return out;
}

Rational score(const ConditionGraph& g, std::span<const long long> predicted,
               std::span<const long long> truth, const ScoreConfig& cfg) {
    if (predicted.size() != truth.size())
        throw LengthMismatch("prediction and truth vectors differ in length");
    if (cfg.lower_bound_mode) {
        for (size_t i = 0; i < predicted.size(); ++i)
            if (predicted[i] > truth[i]) return Rational(-cfg.lower_bound_penalty);
    }
    long long l1 = 0;
    for (size_t i = 0; i < predicted.size(); ++i) l1 += std::llabs(predicted[i] - truth[i]);
    Rational s = -Rational(l1);
    if (g.has_trivial_row()) s -= cfg.trivial_row_penalty;
    s -= cfg.edge_penalty * g.num_edges();
    return s;
}

ConditionGraph canonical_model(const Partition& lambda, bool lower_bound) {
    const int r = static_cast<int>(lambda.size());
    if (r < 2 || r > 4) throw UnsupportedLength("canonical models exist for lengths 2..4");
    const SlotLayout& layout = SlotLayout::for_arity(r);
    ConditionGraph g;
    g.lambda = lambda;
    g.arity = r;
    g.n_rows = 1;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            const int base = layout.pair_block(i, j);
            g.add_edge(0, base + 1, base + 2, EdgeType::less);  // SEEnd < FirstIns
            if (lower_bound) g.add_edge(0, 0, base, EdgeType::geq);  // 0 >= SEStart
        }
    return g;
}

std::string CellStats::bound_name() const {
    switch (bound) {
        case Bound::exact: return "exact";
        case Bound::under: return "under";
        case Bound::over: return "over";
        default: return "mixed";
    }
}

CellStats evaluate_cell(std::span<const long long> predicted, std::span<const long long> truth) {
    if (predicted.size() != truth.size())
        throw LengthMismatch("prediction and truth vectors differ in length");
    CellStats stats;
    stats.total = static_cast<long long>(truth.size());
    bool any_over = false, any_under = false;
    for (size_t i = 0; i < truth.size(); ++i) {
        stats.truth_sum += truth[i];
        long long diff = predicted[i] - truth[i];
        stats.abs_error += std::llabs(diff);
        if (diff == 0) ++stats.correct;
        if (diff > 0) any_over = true;
        if (diff < 0) any_under = true;
    }
    if (!any_over && !any_under)
        stats.bound = CellStats::Bound::exact;
    else if (!any_over)
        stats.bound = CellStats::Bound::under;
    else if (!any_under)
        stats.bound = CellStats::Bound::over;
    else
        stats.bound = CellStats::Bound::mixed;
    return stats;
}

}  // namespace esc
