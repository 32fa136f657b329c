#include "eschercount/coeffs.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace esc {

namespace {

long long apply_expansion(const PowerSumExpansion& expansion, const EscherSet& es) {
    Rational total = 0;
    for (const auto& [tau, d] : expansion.coeffs) total += d * es.count_tuples(tau);
    if (denominator(total) != 1)
        throw NonIntegralResult("stanley coefficient did not come out integral for lambda=" +
                                partition_to_string(expansion.target));
    return numerator(total).convert_to<long long>();
}

std::vector<Partition> dataset_lambdas(int n) {
    std::vector<Partition> out;
    for (int w = 1; w <= n; ++w)
        for (const Partition& p : partitions_of(w))
            if (p.size() <= 4) out.push_back(p);
    return out;
}

}  // namespace

long long stanley_coefficient(const Uio& u, const Partition& lambda) {
    if (!is_partition(lambda)) throw std::invalid_argument("not a partition");
    if (weight(lambda) > 12) throw TooLarge("stanley coefficient supports weight <= 12");
    PowerSumExpansion expansion = monomial_to_powersum(lambda);
    EscherSet es(u);
    return apply_expansion(expansion, es);
}

long long pair_coefficient(const Uio& u, int k, int l) {
    if (k < 1 || l < 1) throw std::invalid_argument("parts must be positive");
    EscherSet es(u);
    Partition shape{std::max(k, l), std::min(k, l)};
    long long ordered = es.count_tuples(shape);
    long long merged = es.count_tuples(Partition{k + l});
    if (k != l) return ordered - merged;
    long long diff = ordered - merged;
    if (diff % 2 != 0) throw NonIntegralResult("odd ordered-pair difference for (k,k)");
    return diff / 2;
}

long long triple_coefficient(const Uio& u, int a, int b, int c) {
    Partition sorted{a, b, c};
    std::sort(sorted.rbegin(), sorted.rend());
    if (a == b || b == c || a == c) return stanley_coefficient(u, sorted);
    EscherSet es(u);
    auto count = [&](std::initializer_list<int> parts) {
        Partition shape(parts);
        std::sort(shape.rbegin(), shape.rend());
        return es.count_tuples(shape);
    };
    return count({a, b, c}) + 2 * count({a + b + c}) - count({a + b, c}) - count({a + c, b}) -
           count({b + c, a});
}

namespace {

std::vector<long long> coefficient_vector_impl(const Partition& lambda, int n, bool parallel) {
    PowerSumExpansion expansion = monomial_to_powersum(lambda);
    std::vector<Uio> uios = all_uios(n);
    std::vector<long long> out(uios.size(), 0);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(uios.size()); ++i) {
            EscherSet es(uios[i]);
            out[i] = apply_expansion(expansion, es);
        }
    } else {
        for (size_t i = 0; i < uios.size(); ++i) {
            EscherSet es(uios[i]);
            out[i] = apply_expansion(expansion, es);
        }
    }
    return out;
}

CoefficientDataset dataset_impl(int n, bool parallel) {
    CoefficientDataset ds;
    ds.n = n;
    std::vector<Partition> lambdas = dataset_lambdas(n);
    std::vector<PowerSumExpansion> expansions;
    expansions.reserve(lambdas.size());
    for (const Partition& l : lambdas) expansions.push_back(monomial_to_powersum(l));

    std::vector<Uio> uios = all_uios(n);
    std::vector<std::vector<long long>> columns(uios.size());
    auto work = [&](long i) {
        EscherSet es(uios[i]);
        std::vector<long long> col(lambdas.size());
        for (size_t t = 0; t < lambdas.size(); ++t) col[t] = apply_expansion(expansions[t], es);
        columns[i] = std::move(col);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(uios.size()); ++i) work(i);
    } else {
        for (long i = 0; i < static_cast<long>(uios.size()); ++i) work(i);
    }

    ds.records.reserve(lambdas.size());
    for (size_t t = 0; t < lambdas.size(); ++t) {
        std::vector<long long> row(uios.size());
        for (size_t i = 0; i < uios.size(); ++i) row[i] = columns[i][t];
        ds.records.emplace_back(lambdas[t], std::move(row));
    }
    return ds;
}

}  // namespace

std::vector<long long> coefficient_vector(const Partition& lambda, int n) {
    return coefficient_vector_impl(lambda, n, true);
}

std::vector<long long> coefficient_vector_serial(const Partition& lambda, int n) {
    return coefficient_vector_impl(lambda, n, false);
}

CoefficientDataset coefficient_dataset(int n) { return dataset_impl(n, true); }
CoefficientDataset coefficient_dataset_serial(int n) { return dataset_impl(n, false); }

const std::vector<long long>* CoefficientDataset::find(const Partition& lambda) const {
    for (const auto& [l, row] : records)
        if (l == lambda) return &row;
    return nullptr;
}

void CoefficientDataset::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    for (const auto& [lambda, row] : records) {
        out << partition_to_string(lambda) << ';';
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ' ';
            out << row[i];
        }
        out << '\n';
    }
}

CoefficientDataset CoefficientDataset::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw MissingDataset("missing coefficient dataset " + file.string());
    CoefficientDataset ds;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto semi = line.find(';');
        Partition lambda = partition_from_string(line.substr(0, semi));
        std::vector<long long> row;
        std::istringstream is(line.substr(semi + 1));
        long long v;
        while (is >> v) row.push_back(v);
        ds.records.emplace_back(std::move(lambda), std::move(row));
    }
    if (!ds.records.empty()) {
        // Recover n from the Catalan count of columns.
        size_t cols = ds.records.front().second.size();
        for (int n = 1; n <= 12; ++n)
            if (catalan(n) == cols) {
                ds.n = n;
                break;
            }
    }
    return ds;
}

}  // namespace esc
