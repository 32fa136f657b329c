#include "eschercount/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace esc {

PolicyNetwork::PolicyNetwork(int input_width, const std::vector<int>& hidden,
                             std::mt19937_64& rng) {
    dims_.push_back(input_width);
    for (int h : hidden) dims_.push_back(h);
    dims_.push_back(kActions);
    for (size_t l = 0; l + 1 < dims_.size(); ++l) {
        const int in = dims_[l], out = dims_[l + 1];
        const double bound = std::sqrt(6.0 / (in + out));
        std::vector<double> w(static_cast<size_t>(in) * out);
        for (double& x : w) x = (2.0 * next_uniform(rng) - 1.0) * bound;
        w_.push_back(std::move(w));
        b_.emplace_back(out, 0.0);
    }
}

std::vector<double> PolicyNetwork::forward(std::span<const double> input) const {
    std::vector<double> cur(input.begin(), input.end());
    for (size_t l = 0; l < w_.size(); ++l) {
        const int in = dims_[l], out = dims_[l + 1];
        std::vector<double> next(out);
        for (int o = 0; o < out; ++o) {
            double acc = b_[l][o];
            const double* row = &w_[l][static_cast<size_t>(o) * in];
            for (int i = 0; i < in; ++i) acc += row[i] * cur[i];
            next[o] = (l + 1 < w_.size()) ? std::max(0.0, acc) : acc;
        }
        cur = std::move(next);
    }
    // softmax with max subtraction
    double mx = *std::max_element(cur.begin(), cur.end());
    double sum = 0;
    for (double& x : cur) {
        x = std::exp(x - mx);
        sum += x;
    }
    for (double& x : cur) x /= sum;
    return cur;
}

double PolicyNetwork::loss(std::span<const Sample> batch,
                           std::vector<std::vector<double>>* weight_grad,
                           std::vector<std::vector<double>>* bias_grad) const {
    const size_t layers = w_.size();
    if (weight_grad) {
        weight_grad->assign(layers, {});
        bias_grad->assign(layers, {});
        for (size_t l = 0; l < layers; ++l) {
            (*weight_grad)[l].assign(w_[l].size(), 0.0);
            (*bias_grad)[l].assign(b_[l].size(), 0.0);
        }
    }
    double total = 0;
    std::vector<std::vector<double>> act(layers + 1);  // post-activation per layer
    for (const Sample& s : batch) {
        act[0].assign(s.input.begin(), s.input.end());
        for (size_t l = 0; l < layers; ++l) {
            const int in = dims_[l], out = dims_[l + 1];
            act[l + 1].assign(out, 0.0);
            for (int o = 0; o < out; ++o) {
                double acc = b_[l][o];
                const double* row = &w_[l][static_cast<size_t>(o) * in];
                for (int i = 0; i < in; ++i) acc += row[i] * act[l][i];
                act[l + 1][o] = (l + 1 < layers) ? std::max(0.0, acc) : acc;
            }
        }
        std::vector<double>& logits = act[layers];
        const double mx = *std::max_element(logits.begin(), logits.end());
        double sum = 0;
        std::vector<double> probs(logits.size());
        for (size_t i = 0; i < logits.size(); ++i) {
            probs[i] = std::exp(logits[i] - mx);
            sum += probs[i];
        }
        for (double& p : probs) p /= sum;
        total += -std::log(std::max(probs[s.action], 1e-300));

        if (!weight_grad) continue;
        // delta at output: probs - onehot
        std::vector<double> delta = probs;
        delta[s.action] -= 1.0;
        for (size_t l = layers; l-- > 0;) {
            const int in = dims_[l], out = dims_[l + 1];
            for (int o = 0; o < out; ++o) {
                (*bias_grad)[l][o] += delta[o];
                double* grow = &(*weight_grad)[l][static_cast<size_t>(o) * in];
                for (int i = 0; i < in; ++i) grow[i] += delta[o] * act[l][i];
            }
            if (l == 0) break;
            std::vector<double> prev(in, 0.0);
            for (int o = 0; o < out; ++o) {
                const double* row = &w_[l][static_cast<size_t>(o) * in];
                for (int i = 0; i < in; ++i) prev[i] += delta[o] * row[i];
            }
            // ReLU mask of the hidden layer
            for (int i = 0; i < in; ++i)
                if (act[l][i] <= 0.0) prev[i] = 0.0;
            delta = std::move(prev);
        }
    }
    const double inv = batch.empty() ? 0.0 : 1.0 / static_cast<double>(batch.size());
    if (weight_grad) {
        for (size_t l = 0; l < layers; ++l) {
            for (double& g : (*weight_grad)[l]) g *= inv;
            for (double& g : (*bias_grad)[l]) g *= inv;
        }
    }
    return total * inv;
}

void PolicyNetwork::train_step(std::span<const Sample> batch, double learning_rate) {
    if (batch.empty()) return;
    std::vector<std::vector<double>> wg, bg;
    const double loss0 = loss(batch, &wg, &bg);
    const std::vector<std::vector<double>> w_saved = w_, b_saved = b_;
    double lr = learning_rate;
    for (int attempt = 0; attempt < 30; ++attempt) {
        for (size_t l = 0; l < w_.size(); ++l) {
            for (size_t i = 0; i < w_[l].size(); ++i) w_[l][i] -= lr * wg[l][i];
            for (size_t i = 0; i < b_[l].size(); ++i) b_[l][i] -= lr * bg[l][i];
        }
        if (loss(batch) < loss0) return;
        w_ = w_saved;
        b_ = b_saved;
        lr /= 2;  // safeguard: halve until the loss decreases
    }
}

std::vector<std::pair<int, int>> default_whitelist(int arity) {
    const SlotLayout& layout = SlotLayout::for_arity(arity);
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < arity; ++i)
        for (int j = i + 1; j < arity; ++j) {
            const int base = layout.pair_block(i, j);
            out.emplace_back(base + 1, base + 2);  // SEEnd -> FirstIns
            out.emplace_back(0, base);             // zero -> SEStart
        }
    return out;
}

std::vector<DecisionSlot> slot_order(const std::vector<std::pair<int, int>>& whitelist, int rows) {
    if (whitelist.empty()) throw EmptyWhitelist("decision whitelist is empty");
    std::vector<DecisionSlot> order;
    order.reserve(whitelist.size() * rows);
    for (int p = 0; p < static_cast<int>(whitelist.size()); ++p)
        for (int r = 0; r < rows; ++r) order.push_back(DecisionSlot{p, r});
    return order;
}

bool ScoreCache::lookup(const std::string& key, Rational* out) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return false;
    ++hits_;
    *out = it->second;
    return true;
}

void ScoreCache::insert(const std::string& key, const Rational& value) {
    std::lock_guard<std::mutex> lk(mu_);
    map_.emplace(key, value);
}

std::vector<double> encode_state(int turn, std::span<const std::uint8_t> actions,
                                 int total_slots) {
    // Game turn one-hot, then one-hot action per already-decided slot.
    std::vector<double> x(total_slots + PolicyNetwork::kActions * total_slots, 0.0);
    if (turn < total_slots) x[turn] = 1.0;
    for (size_t t = 0; t < actions.size(); ++t)
        x[total_slots + PolicyNetwork::kActions * t + actions[t]] = 1.0;
    return x;
}

ConditionGraph graph_from_actions(const TrainerConfig& config,
                                  std::span<const std::uint8_t> actions) {
    const std::vector<std::pair<int, int>>& wl = config.whitelist;
    std::vector<DecisionSlot> order = slot_order(wl, config.rows);
    ConditionGraph g;
    g.lambda = config.lambda;
    g.arity = static_cast<int>(config.lambda.size());
    g.n_rows = config.rows;
    for (size_t t = 0; t < order.size(); ++t) {
        // action 0 = less, 1 = geq, 2 = irrelevant (no edge)
        if (actions[t] == 2) continue;
        const auto& [src, dst] = wl[order[t].pair_index];
        g.add_edge(order[t].row, src, dst, actions[t] == 0 ? EdgeType::less : EdgeType::geq);
    }
    return g;
}

namespace {

struct Agent {
    std::vector<std::uint8_t> actions;
    ConditionGraph graph;
    std::string key;
    Rational score;
};

std::vector<std::uint8_t> rollout(const PolicyNetwork& net, int total_slots,
                                  std::mt19937_64& rng) {
    std::vector<std::uint8_t> actions;
    actions.reserve(total_slots);
    for (int t = 0; t < total_slots; ++t) {
        std::vector<double> x = encode_state(t, actions, total_slots);
        std::vector<double> probs = net.forward(x);
        const double r = next_uniform(rng);
        double acc = 0;
        std::uint8_t pick = PolicyNetwork::kActions - 1;
        for (int a = 0; a < PolicyNetwork::kActions; ++a) {
            acc += probs[a];
            if (r < acc) {
                pick = static_cast<std::uint8_t>(a);
                break;
            }
        }
        actions.push_back(pick);
    }
    return actions;
}

std::vector<PolicyNetwork::Sample> to_samples(const std::vector<std::uint8_t>& actions,
                                              int total_slots) {
    std::vector<PolicyNetwork::Sample> out;
    out.reserve(actions.size());
    for (size_t t = 0; t < actions.size(); ++t) {
        std::span<const std::uint8_t> prefix(actions.data(), t);
        out.push_back(
            PolicyNetwork::Sample{encode_state(static_cast<int>(t), prefix, total_slots),
                                  static_cast<int>(actions[t])});
    }
    return out;
}

}  // namespace

TrainResult train(const TrainerConfig& config_in, const CoreTypeTable& table,
                  std::span<const long long> truth) {
    TrainerConfig config = config_in;
    if (config.lambda != table.lambda)
        throw InvalidConfig("config lambda does not match core table");
    if (config.batch < 10) throw InvalidConfig("batch must be at least 10");
    if (config.elite_fraction <= 0 || config.elite_fraction >= 1 ||
        config.survivor_fraction <= 0 || config.survivor_fraction >= 1)
        throw InvalidConfig("fractions must lie in (0,1)");
    if (config.whitelist.empty())
        config.whitelist = default_whitelist(static_cast<int>(config.lambda.size()));
    if (truth.size() != catalan(config.n))
        throw LengthMismatch("truth vector length is not the UIO count");

    std::mt19937_64 rng(config.seed);
    const std::vector<DecisionSlot> order = slot_order(config.whitelist, config.rows);
    const int total_slots = static_cast<int>(order.size());
    PolicyNetwork net(total_slots + PolicyNetwork::kActions * total_slots, config.hidden, rng);

    // Optional fixed UIO subsample, drawn once per run.
    std::vector<int> indices(truth.size());
    for (size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<int>(i);
    if (config.uio_subsample > 0 && config.uio_subsample < static_cast<int>(indices.size())) {
        for (int i = 0; i < config.uio_subsample; ++i) {
            int j = i + static_cast<int>(next_uniform(rng) * (indices.size() - i));
            std::swap(indices[i], indices[j]);
        }
        indices.resize(config.uio_subsample);
        std::sort(indices.begin(), indices.end());
    }
    std::vector<long long> sub_truth(indices.size());
    for (size_t i = 0; i < indices.size(); ++i) sub_truth[i] = truth[indices[i]];

    ScoreConfig score_cfg;
    score_cfg.edge_penalty = config.edge_penalty;
    score_cfg.lower_bound_mode = config.score_mode == ScoreMode::lower_bound;

    ScoreCache cache;
    auto evaluate = [&](Agent& agent) {
        if (cache.lookup(agent.key, &agent.score)) return;
        std::vector<long long> pred_full = predicted_vector(agent.graph, table);
        std::vector<long long> pred(indices.size());
        for (size_t i = 0; i < indices.size(); ++i) pred[i] = pred_full[indices[i]];
        agent.score = score(agent.graph, pred, sub_truth, score_cfg);
        cache.insert(agent.key, agent.score);
    };

    const int elite_count = std::max(1, static_cast<int>(config.batch * config.elite_fraction));
    const int survivor_count =
        std::max(1, static_cast<int>(config.batch * config.survivor_fraction));

    // All-time best agents, unique by encoding, ordered best-first.
    std::vector<Agent> pool;
    auto pool_insert = [&](const Agent& a) {
        for (const Agent& p : pool)
            if (p.key == a.key) return;
        pool.push_back(a);
        std::sort(pool.begin(), pool.end(), [](const Agent& x, const Agent& y) {
            if (x.score != y.score) return x.score > y.score;
            return x.key < y.key;
        });
        if (static_cast<int>(pool.size()) > survivor_count) pool.resize(survivor_count);
    };

    TrainResult result;
    std::vector<Agent> batch(config.batch);
    for (int gen = 1; gen <= config.generations; ++gen) {
        for (int b = 0; b < config.batch; ++b) {
            batch[b].actions = rollout(net, total_slots, rng);
            batch[b].graph = graph_from_actions(config, batch[b].actions);
            batch[b].key = batch[b].graph.encode();
        }
#pragma omp parallel for schedule(dynamic)
        for (int b = 0; b < config.batch; ++b) evaluate(batch[b]);

        std::vector<int> rank(config.batch);
        for (int b = 0; b < config.batch; ++b) rank[b] = b;
        std::sort(rank.begin(), rank.end(), [&](int x, int y) {
            if (batch[x].score != batch[y].score) return batch[x].score > batch[y].score;
            return batch[x].key < batch[y].key;
        });
        for (int e = 0; e < elite_count; ++e) pool_insert(batch[rank[e]]);

        // Train on this generation's elites plus the retained all-time best.
        std::vector<PolicyNetwork::Sample> samples;
        for (int e = 0; e < elite_count; ++e) {
            auto s = to_samples(batch[rank[e]].actions, total_slots);
            samples.insert(samples.end(), std::make_move_iterator(s.begin()),
                           std::make_move_iterator(s.end()));
        }
        for (const Agent& p : pool) {
            auto s = to_samples(p.actions, total_slots);
            samples.insert(samples.end(), std::make_move_iterator(s.begin()),
                           std::make_move_iterator(s.end()));
        }
        net.train_step(samples, config.learning_rate);

        Rational mean = 0;
        for (const Agent& a : batch) mean += a.score;
        mean /= config.batch;
        result.history.push_back(HistoryRow{gen, pool.front().score, mean,
                                            pool.front().graph.num_edges()});
    }
    result.best = pool.front().graph;
    result.best_score = pool.front().score;
    result.cache_hits = cache.hits();
    return result;
}

std::string history_csv(const std::vector<HistoryRow>& history) {
    std::ostringstream os;
    os << "generation,best_score,mean_score,num_edges_best\n";
    os.setf(std::ios::fixed);
    os.precision(6);
    for (const HistoryRow& row : history)
        os << row.generation << ',' << row.best_score.convert_to<double>() << ','
           << row.mean_score.convert_to<double>() << ',' << row.num_edges_best << '\n';
    return os.str();
}

}  // namespace esc
