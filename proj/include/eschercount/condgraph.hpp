#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "eschercount/cores.hpp"
#include "eschercount/symfunc.hpp"

namespace esc {

enum class EdgeType : std::uint8_t { less, geq };

/// One comparison constraint between two core slots of one row.
struct CondEdge {
    int row = 0;
    int src = 0;
    int dst = 0;
    EdgeType type = EdgeType::less;

    auto operator<=>(const CondEdge&) const = default;
};

/// A disjunction of conjunction rows over core slots.  A core satisfies the
/// graph iff some row's constraints all hold; absent slot pairs are
/// irrelevant; a row with no constraints accepts everything.
struct ConditionGraph {
    Partition lambda;
    int arity = 0;
    int n_rows = 1;
    std::vector<CondEdge> edges;  // kept sorted by (row, src, dst)

    void add_edge(int row, int src, int dst, EdgeType type);
    bool satisfies(const CoreSlots& core) const;  // LayoutMismatch on wrong width
    int num_edges() const { return static_cast<int>(edges.size()); }
    bool has_trivial_row() const;  // some row has zero constraints

    /// Canonical text encoding; also the score-cache key and tie-break order.
    std::string encode() const;

    void save(const std::filesystem::path& file) const;
    static ConditionGraph load(const std::filesystem::path& file);
};

/// Per-UIO predicted coefficients: sum of counts of satisfying core-types.
std::vector<long long> predicted_vector(const ConditionGraph& g, const CoreTypeTable& table);

struct ScoreConfig {
    Rational edge_penalty = Rational(1, 5);  // useful range 0.1 .. 0.5
    long long trivial_row_penalty = 10000;
    bool lower_bound_mode = false;
    long long lower_bound_penalty = 5000;
};

/// score_1 = -|pred - truth|_1 - [has trivial row]*10000 - num_edges*penalty;
/// in lower-bound mode any overprediction short-circuits to -5000.
Rational score(const ConditionGraph& g, std::span<const long long> predicted,
               std::span<const long long> truth, const ScoreConfig& cfg);

/// The fixed models: one row with SEEnd(u_i,u_j) < FirstIns(u_i,u_j) for
/// every pair block; the lower-bound variant adds 0 >= SEStart(u_i,u_j).
ConditionGraph canonical_model(const Partition& lambda, bool lower_bound);

/// Mismatch summary of one (model, lambda, n) cell in both table conventions.
struct CellStats {
    long long abs_error = 0;
    long long truth_sum = 0;
    long long correct = 0;
    long long total = 0;
    enum class Bound { exact, under, over, mixed } bound = Bound::exact;

    std::string bound_name() const;
};

CellStats evaluate_cell(std::span<const long long> predicted, std::span<const long long> truth);

}  // namespace esc
