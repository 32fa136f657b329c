// Command-line driver: dataset generation, model evaluation, table reports,
// and cross-entropy training over condition graphs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eschercount/coeffs.hpp"
#include "eschercount/condgraph.hpp"
#include "eschercount/cores.hpp"
#include "eschercount/trainer.hpp"
#include "eschercount/uio.hpp"

namespace fs = std::filesystem;
using namespace esc;

namespace {

std::string lambda_tag(const Partition& lambda) {
    std::string tag;
    for (size_t i = 0; i < lambda.size(); ++i) {
        if (i) tag += '-';
        tag += std::to_string(lambda[i]);
    }
    return tag;
}

fs::path uio_file(const fs::path& dir, int n) { return dir / ("uios_n" + std::to_string(n) + ".txt"); }
fs::path coeff_file(const fs::path& dir, int n) {
    return dir / ("coeffs_n" + std::to_string(n) + ".txt");
}
fs::path core_file(const fs::path& dir, const Partition& lambda, int n) {
    return dir / ("cores_" + lambda_tag(lambda) + "_n" + std::to_string(n) + ".txt");
}

void write_uio_file(const fs::path& file, int n) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    for (const Uio& u : all_uios(n)) out << u.to_string() << '\n';
}

int run_generate(int n, const std::vector<std::string>& lambda_args, const fs::path& dir,
                 bool literal_guard) {
    fs::create_directories(dir);
    write_uio_file(uio_file(dir, n), n);
    coefficient_dataset(n).save(coeff_file(dir, n));
    CoreOptions opts;
    opts.literal_branch_guard = literal_guard;
    for (const std::string& arg : lambda_args) {
        Partition lambda = partition_from_string(arg);
        if (!is_partition(lambda)) throw InvalidConfig("bad lambda: " + arg);
        if (weight(lambda) > n) throw InvalidConfig("lambda weight exceeds n: " + arg);
        build_core_table(lambda, n, opts).save(core_file(dir, lambda, n));
    }
    std::cout << "generated n=" << n << " (" << catalan(n) << " UIOs";
    if (!lambda_args.empty()) std::cout << ", " << lambda_args.size() << " core table(s)";
    std::cout << ") in " << dir.string() << "\n";
    return 0;
}

ConditionGraph model_graph(const std::string& model, const Partition& lambda) {
    if (model.rfind("file:", 0) == 0) {
        ConditionGraph g = ConditionGraph::load(model.substr(5));
        if (g.arity != static_cast<int>(lambda.size()))
            throw InvalidConfig("graph file arity does not match lambda");
        return g;
    }
    const size_t len = lambda.size();
    if (model == "pair-canonical") {
        if (len != 2) throw InvalidConfig("pair-canonical needs a length-2 lambda");
        return canonical_model(lambda, false);
    }
    if (model == "triple-canonical") {
        if (len != 3) throw InvalidConfig("triple-canonical needs a length-3 lambda");
        return canonical_model(lambda, false);
    }
    if (model == "triple-lower") {
        if (len != 3) throw InvalidConfig("triple-lower needs a length-3 lambda");
        return canonical_model(lambda, true);
    }
    if (model == "general") return canonical_model(lambda, false);
    if (model == "general-lower") return canonical_model(lambda, true);
    throw InvalidConfig("unknown model: " + model);
}

struct Cell {
    Partition lambda;
    int n = 0;
    CellStats stats;
};

std::string cell_csv_row(const Cell& c) {
    std::ostringstream os;
    os << '"' << partition_to_string(c.lambda) << '"' << ',' << c.n << ',' << c.stats.abs_error
       << ',' << c.stats.truth_sum << ',' << c.stats.correct << ',' << c.stats.total << ','
       << c.stats.bound_name();
    return os.str();
}

Cell evaluate_one(const std::string& model, const Partition& lambda, int n, const fs::path& dir) {
    CoefficientDataset ds = CoefficientDataset::load(coeff_file(dir, n));
    const std::vector<long long>* truth = ds.find(lambda);
    if (!truth)
        throw MissingDataset("coefficient dataset has no record for lambda=" +
                             partition_to_string(lambda));
    CoreTypeTable table = CoreTypeTable::load(core_file(dir, lambda, n));
    ConditionGraph g = model_graph(model, lambda);
    std::vector<long long> pred = predicted_vector(g, table);
    Cell cell;
    cell.lambda = lambda;
    cell.n = n;
    cell.stats = evaluate_cell(pred, *truth);
    return cell;
}

int check_expectations(const std::vector<Cell>& cells, const fs::path& expect_file) {
    // Golden file: same CSV format as the report output, header optional.
    std::ifstream in(expect_file);
    if (!in) throw MissingDataset("missing golden file " + expect_file.string());
    std::map<std::string, std::string> want;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("lambda", 0) == 0) continue;
        auto second_comma = line.find(',', line.find(',') + 1);
        want[line.substr(0, second_comma)] = line;
    }
    int mismatches = 0;
    for (const Cell& c : cells) {
        std::string row = cell_csv_row(c);
        auto second_comma = row.find(',', row.find(',') + 1);
        std::string key = row.substr(0, second_comma);
        auto it = want.find(key);
        if (it == want.end()) continue;
        if (it->second != row) {
            std::cerr << "mismatch: expected [" << it->second << "] got [" << row << "]\n";
            ++mismatches;
        }
    }
    return mismatches;
}

int run_evaluate(const std::string& model, const Partition& lambda, int n, const fs::path& dir,
                 const std::string& expect) {
    Cell cell = evaluate_one(model, lambda, n, dir);
    std::cout << "lambda=(" << partition_to_string(lambda) << ") n=" << n << " model=" << model
              << "\n";
    std::cout << "abs_error/sum   = " << cell.stats.abs_error << "/" << cell.stats.truth_sum
              << "\n";
    std::cout << "correct/total   = " << cell.stats.correct << "/" << cell.stats.total << "\n";
    std::cout << "bound           = " << cell.stats.bound_name() << "\n";
    if (!expect.empty() && check_expectations({cell}, expect) != 0) return 1;
    return 0;
}

int run_report(const std::string& model, int n_max, const fs::path& dir, const std::string& csv_out,
               const std::string& expect) {
    int len = 4;
    if (model == "pair-canonical") len = 2;
    if (model == "triple-canonical" || model == "triple-lower") len = 3;

    std::vector<Cell> cells;
    for (int n = 4; n <= n_max; ++n) {
        for (int w = 4; w <= n; ++w)
            for (const Partition& lambda : partitions_of(w)) {
                if (static_cast<int>(lambda.size()) != len) continue;
                cells.push_back(evaluate_one(model, lambda, n, dir));
            }
    }

    std::ostringstream csv;
    csv << "lambda,n,abs_error,truth_sum,correct,total,bound\n";
    for (const Cell& c : cells) csv << cell_csv_row(c) << "\n";
    if (!csv_out.empty()) {
        std::ofstream out(csv_out);
        out << csv.str();
    }

    std::cout << "model=" << model << " (cells: lambda rows, n columns)\n";
    std::cout << csv.str();
    std::cout << "\naligned (abs_error/truth_sum [bound]):\n";
    std::map<std::string, std::map<int, std::string>> grid;
    for (const Cell& c : cells)
        grid["(" + partition_to_string(c.lambda) + ")"][c.n] =
            std::to_string(c.stats.abs_error) + "/" + std::to_string(c.stats.truth_sum) + " " +
            c.stats.bound_name();
    for (const auto& [row, cols] : grid) {
        std::cout << row;
        for (int pad = static_cast<int>(row.size()); pad < 14; ++pad) std::cout << ' ';
        for (int n = 4; n <= n_max; ++n) {
            std::ostringstream celltxt;
            auto it = cols.find(n);
            celltxt << (it == cols.end() ? "-" : it->second);
            std::cout << "  " << celltxt.str();
            for (int pad = static_cast<int>(celltxt.str().size()); pad < 22; ++pad)
                std::cout << ' ';
        }
        std::cout << "\n";
    }
    if (!expect.empty() && check_expectations(cells, expect) != 0) return 1;
    return 0;
}

std::map<std::string, std::string> parse_config_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw InvalidConfig("cannot read config file " + file.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw InvalidConfig("bad config line: " + line);
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t");
            size_t b = s.find_last_not_of(" \t");
            return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

int run_train(const fs::path& config_file, const fs::path& dir, long seed_override,
              const std::string& score_mode_override, const std::string& edge_penalty_override) {
    auto kv = parse_config_file(config_file);
    auto need = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw InvalidConfig("config missing key: " + key);
        return it->second;
    };
    auto get = [&](const std::string& key, const std::string& fallback) {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };

    TrainerConfig config;
    config.lambda = partition_from_string(need("lambda"));
    config.n = std::stoi(need("n"));
    config.rows = std::stoi(get("rows", "1"));
    config.batch = std::stoi(get("batch", "600"));
    config.elite_fraction = std::stod(get("elite_fraction", "0.10"));
    config.survivor_fraction = std::stod(get("survivor_fraction", "0.03"));
    config.learning_rate = std::stod(get("learning_rate", "0.01"));
    config.edge_penalty = parse_rational(get("edge_penalty", "0.2"));
    config.uio_subsample = std::stoi(get("uio_subsample", "0"));
    config.seed = std::stoull(get("seed", "0"));
    config.generations = std::stoi(get("generations", "100"));
    {
        std::string mode = get("score_mode", "score_1");
        if (mode == "score_1")
            config.score_mode = ScoreMode::standard;
        else if (mode == "score_2" || mode == "lower-bound")
            config.score_mode = ScoreMode::lower_bound;
        else
            throw InvalidConfig("bad score_mode: " + mode);
    }
    {
        std::string hidden = get("hidden", "128,64");
        config.hidden.clear();
        std::istringstream is(hidden);
        std::string tok;
        while (std::getline(is, tok, ',')) config.hidden.push_back(std::stoi(tok));
    }
    {
        std::string wl = get("whitelist", "default");
        if (wl != "default") {
            // "src:dst,src:dst,..."
            std::istringstream is(wl);
            std::string tok;
            while (std::getline(is, tok, ',')) {
                auto colon = tok.find(':');
                if (colon == std::string::npos) throw InvalidConfig("bad whitelist entry: " + tok);
                config.whitelist.emplace_back(std::stoi(tok.substr(0, colon)),
                                              std::stoi(tok.substr(colon + 1)));
            }
        }
    }
    if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);
    if (!score_mode_override.empty()) {
        if (score_mode_override == "score_1" || score_mode_override == "standard")
            config.score_mode = ScoreMode::standard;
        else if (score_mode_override == "score_2" || score_mode_override == "lower-bound")
            config.score_mode = ScoreMode::lower_bound;
        else
            throw InvalidConfig("bad --score-mode: " + score_mode_override);
    }
    if (!edge_penalty_override.empty()) config.edge_penalty = parse_rational(edge_penalty_override);

    CoefficientDataset ds = CoefficientDataset::load(coeff_file(dir, config.n));
    const std::vector<long long>* truth = ds.find(config.lambda);
    if (!truth)
        throw MissingDataset("coefficient dataset has no record for lambda=" +
                             partition_to_string(config.lambda));
    CoreTypeTable table = CoreTypeTable::load(core_file(dir, config.lambda, config.n));

    TrainResult result = train(config, table, *truth);

    fs::create_directories(dir);
    const std::string tag = lambda_tag(config.lambda) + "_n" + std::to_string(config.n) + "_seed" +
                            std::to_string(config.seed);
    const fs::path history_path = dir / ("history_" + tag + ".csv");
    const fs::path graph_path = dir / ("best_graph_" + tag + ".txt");
    {
        std::ofstream out(history_path);
        out << history_csv(result.history);
    }
    result.best.save(graph_path);
    std::cout << "best_score=" << result.best_score.convert_to<double>() << " edges="
              << result.best.num_edges() << " cache_hits=" << result.cache_hits << "\n";
    std::cout << "history: " << history_path.string() << "\n";
    std::cout << "graph:   " << graph_path.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Escher-tuple counting engine for chromatic symmetric function coefficients"};
    app.require_subcommand(1);

    std::string out_dir = "data";
    app.add_option("--out", out_dir, "dataset directory (written by generate, read elsewhere)");

    auto* gen = app.add_subcommand("generate", "write UIO, coefficient and core-table datasets");
    int gen_n = 0;
    std::vector<std::string> gen_lambdas;
    bool literal_guard = false;
    gen->add_option("--n", gen_n, "UIO length")->required();
    gen->add_option("--lambda", gen_lambdas, "partition(s) to build core tables for, e.g. 3,2,1");
    gen->add_flag("--literal-branch-guard", literal_guard,
                  "use the literal SEStart=0 branch guard in pair cores (falsification aid)");

    auto* eval = app.add_subcommand("evaluate", "evaluate one model on one (lambda, n) cell");
    std::string eval_model, eval_lambda, eval_expect;
    int eval_n = 0;
    eval->add_option("--model", eval_model,
                     "pair-canonical|triple-canonical|triple-lower|general|general-lower|file:<path>")
        ->required();
    eval->add_option("--lambda", eval_lambda, "partition, e.g. 5,3")->required();
    eval->add_option("--n", eval_n, "UIO length")->required();
    eval->add_option("--expect", eval_expect, "golden CSV to compare against");

    auto* rep = app.add_subcommand("report", "emit every table cell for a model up to n-max");
    std::string rep_model, rep_csv, rep_expect;
    int rep_nmax = 0;
    rep->add_option("--model", rep_model, "model name (as in evaluate)")->required();
    rep->add_option("--n-max", rep_nmax, "largest UIO length")->required();
    rep->add_option("--csv", rep_csv, "also write the CSV here");
    rep->add_option("--expect", rep_expect, "golden CSV to compare against");

    auto* tr = app.add_subcommand("train", "cross-entropy search for a condition graph");
    std::string tr_config, tr_score_mode, tr_edge_penalty;
    long tr_seed = -1;
    tr->add_option("--config", tr_config, "key = value config file")->required();
    tr->add_option("--seed", tr_seed, "override the config seed");
    tr->add_option("--score-mode", tr_score_mode, "score_1|lower-bound override");
    tr->add_option("--edge-penalty", tr_edge_penalty, "override, e.g. 0.2 or 1/5");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_generate(gen_n, gen_lambdas, out_dir, literal_guard);
        if (eval->parsed())
            return run_evaluate(eval_model, partition_from_string(eval_lambda), eval_n, out_dir,
                                eval_expect);
        if (rep->parsed()) return run_report(rep_model, rep_nmax, out_dir, rep_csv, rep_expect);
        if (tr->parsed())
            return run_train(tr_config, out_dir, tr_seed, tr_score_mode, tr_edge_penalty);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
