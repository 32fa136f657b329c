#pragma once

#include <cstdint>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "eschercount/condgraph.hpp"
#include "eschercount/cores.hpp"

namespace esc {

/// Portable uniform in [0,1) from the top 53 bits of a mt19937_64 draw.
/// std::uniform_real_distribution is implementation-defined; this is not.
inline double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Small dense feed-forward net: ReLU hidden layers, softmax output over the
/// K = 3 edge actions.  Trained by plain gradient descent on categorical
/// cross-entropy.  Everything is deterministic given the seed.
class PolicyNetwork {
public:
    static constexpr int kActions = 3;

    PolicyNetwork(int input_width, const std::vector<int>& hidden, std::mt19937_64& rng);

    int input_width() const { return dims_.front(); }

    /// Softmax action probabilities.
    std::vector<double> forward(std::span<const double> input) const;

    struct Sample {
        std::vector<double> input;
        int action = 0;
    };

    /// Mean categorical cross-entropy over the batch; fills analytic
    /// gradients (same shapes as the parameters) when grad != nullptr.
    double loss(std::span<const Sample> batch,
                std::vector<std::vector<double>>* weight_grad = nullptr,
                std::vector<std::vector<double>>* bias_grad = nullptr) const;

    /// One descent step; the learning rate is halved (up to a bound) until
    /// the batch loss decreases, and the step is skipped if it never does.
    void train_step(std::span<const Sample> batch, double learning_rate);

    // Parameter access for the finite-difference gradient check.
    std::vector<std::vector<double>>& weights() { return w_; }
    std::vector<std::vector<double>>& biases() { return b_; }
    const std::vector<int>& dims() const { return dims_; }

private:
    std::vector<int> dims_;               // input, hidden..., kActions
    std::vector<std::vector<double>> w_;  // per layer, row-major out x in
    std::vector<std::vector<double>> b_;
};

enum class ScoreMode { standard, lower_bound };

struct TrainerConfig {
    Partition lambda;
    int n = 0;
    int rows = 1;
    /// Ordered (src,dst) slot pairs the agent may constrain.  Empty means
    /// the default: (SEEnd, FirstIns) and (zero, SEStart) per pair block.
    std::vector<std::pair<int, int>> whitelist;
    int batch = 600;
    double elite_fraction = 0.10;
    double survivor_fraction = 0.03;
    double learning_rate = 0.01;
    Rational edge_penalty = Rational(1, 5);
    ScoreMode score_mode = ScoreMode::standard;
    int uio_subsample = 0;  // 0 = all UIOs
    std::uint64_t seed = 0;
    int generations = 100;
    std::vector<int> hidden = {128, 64};
};

std::vector<std::pair<int, int>> default_whitelist(int arity);

/// Decision slots in rollout order: whitelist pair-major, row-minor
/// ((p1,row1)..(p1,rowR),(p2,row1)..).  Throws EmptyWhitelist.
struct DecisionSlot {
    int pair_index = 0;
    int row = 0;
};
std::vector<DecisionSlot> slot_order(const std::vector<std::pair<int, int>>& whitelist, int rows);

/// Score memoization keyed by the canonical graph encoding.  Concurrent
/// insert-or-read of identical pairs is safe; scores are pure.
class ScoreCache {
public:
    bool lookup(const std::string& key, Rational* out) const;
    void insert(const std::string& key, const Rational& value);
    std::uint64_t hits() const { return hits_; }

private:
    mutable std::mutex mu_;
    mutable std::uint64_t hits_ = 0;
    std::unordered_map<std::string, Rational> map_;
};

struct HistoryRow {
    int generation = 0;
    Rational best_score;
    Rational mean_score;
    int num_edges_best = 0;
};

struct TrainResult {
    ConditionGraph best;
    Rational best_score;
    std::vector<HistoryRow> history;
    std::uint64_t cache_hits = 0;
};

/// Cross-entropy search: sample a batch of condition graphs from the policy,
/// score them against the truth vector, retrain on the elite fraction plus
/// the retained all-time best, repeat for the generation budget.
TrainResult train(const TrainerConfig& config, const CoreTypeTable& table,
                  std::span<const long long> truth);

std::string history_csv(const std::vector<HistoryRow>& history);

// Rollout internals exposed for tests.
std::vector<double> encode_state(int turn, std::span<const std::uint8_t> actions, int total_slots);
ConditionGraph graph_from_actions(const TrainerConfig& config,
                                  std::span<const std::uint8_t> actions);

}  // namespace esc
