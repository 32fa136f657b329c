#include "eschercount/cores.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace esc {

namespace {

SlotLayout build_layout(int r) {
    SlotLayout layout;
    layout.arity = r;
    layout.names.push_back("zero");
    auto pair_name = [](const std::string& what, int i, int j) {
        return what + "(u" + std::to_string(i + 1) + ",u" + std::to_string(j + 1) + ")";
    };
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            layout.names.push_back(pair_name("SEStart", i, j));
            layout.names.push_back(pair_name("SEEnd", i, j));
            layout.names.push_back(pair_name("FirstIns", i, j));
        }
    auto reduced_name = [](const std::string& what, int i, int j, int k) {
        return what + "(u" + std::to_string(i + 1) + "u" + std::to_string(j + 1) + ",u" +
               std::to_string(k + 1) + ")";
    };
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int k = j + 1; k < r; ++k) {
                const int blocks[3][3] = {{i, j, k}, {i, k, j}, {j, k, i}};
                for (const auto& blk : blocks) {
                    layout.names.push_back(reduced_name("SEStart", blk[0], blk[1], blk[2]));
                    layout.names.push_back(reduced_name("SEEnd", blk[0], blk[1], blk[2]));
                    layout.names.push_back(reduced_name("FirstIns", blk[0], blk[1], blk[2]));
                }
            }
    return layout;
}

}  // namespace

const SlotLayout& SlotLayout::for_arity(int r) {
    if (r < 2 || r > 4) throw UnsupportedArity("core layout defined for arity 2..4");
    static std::mutex mu;
    static std::map<int, SlotLayout> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(r);
    if (it == cache.end()) it = cache.emplace(r, build_layout(r)).first;
    return it->second;
}

int SlotLayout::pair_block(int i, int j) const {
    // Pairs (0,1),(0,2),...,(0,r-1),(1,2),... in lexicographic order.
    int idx = 0;
    for (int a = 0; a < arity; ++a)
        for (int b = a + 1; b < arity; ++b) {
            if (a == i && b == j) return 1 + 3 * idx;
            ++idx;
        }
    throw LayoutMismatch("no such pair block");
}

int SlotLayout::reduced_block(int i, int j, int k) const {
    const int pairs = arity * (arity - 1) / 2;
    int idx = 0;
    for (int a = 0; a < arity; ++a)
        for (int b = a + 1; b < arity; ++b)
            for (int c = b + 1; c < arity; ++c) {
                const int blocks[3][3] = {{a, b, c}, {a, c, b}, {b, c, a}};
                for (const auto& blk : blocks) {
                    if (blk[0] == i && blk[1] == j && blk[2] == k) return 1 + 3 * pairs + 3 * idx;
                    ++idx;
                }
            }
    throw LayoutMismatch("no such reduced block");
}

std::array<std::int16_t, 3> pair_core_block(const Uio& u, const Escher& a, const Escher& b,
                                            const CoreOptions& opts) {
    std::vector<int> ins = insertion_points(u, a, b);
    if (ins.empty()) return {-2, -2, -1};  // (-1, -1, -0.5)
    const int fi = ins.front();
    std::vector<int> splits = splitting_points(u, a, b.length());
    const bool concatenating_case =
        opts.literal_branch_guard ? (!splits.empty() && splits.front() > 0) : !splits.empty();
    if (concatenating_case) {
        const int start = splits.front();
        return {static_cast<std::int16_t>(2 * start),
                static_cast<std::int16_t>(2 * (start + b.length())),
                static_cast<std::int16_t>(2 * fi + 1)};  // FirstIns + 0.5
    }
    return {-2, -2, static_cast<std::int16_t>(2 * fi + 3)};  // FirstIns + 1.5
}

std::array<std::int16_t, 3> reduced_core_block(const Uio& u, const Escher& a, const Escher& b,
                                               const Escher& w, const CoreOptions& opts) {
    if ((a.support | b.support) & w.support) throw NotDisjoint("reduced block needs disjoint eschers");
    std::vector<int> ins = insertion_points(u, a, b);
    if (ins.empty()) return {-2, -2, -1};
    Escher merged = concat(u, a, b, ins.front());
    return pair_core_block(u, merged, w, opts);
}

CoreSlots core_pair(const Uio& u, const Escher& a, const Escher& b, const CoreOptions& opts) {
    auto block = pair_core_block(u, a, b, opts);
    return CoreSlots{0, block[0], block[1], block[2]};
}

CoreSlots core_tuple(const Uio& u, std::span<const Escher* const> tuple, const CoreOptions& opts) {
    const int r = static_cast<int>(tuple.size());
    const SlotLayout& layout = SlotLayout::for_arity(r);
    CoreSlots slots(layout.size(), 0);
    int pos = 1;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            auto blk = pair_core_block(u, *tuple[i], *tuple[j], opts);
            slots[pos++] = blk[0];
            slots[pos++] = blk[1];
            slots[pos++] = blk[2];
        }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int k = j + 1; k < r; ++k) {
                const int blocks[3][3] = {{i, j, k}, {i, k, j}, {j, k, i}};
                for (const auto& blk : blocks) {
                    auto red =
                        reduced_core_block(u, *tuple[blk[0]], *tuple[blk[1]], *tuple[blk[2]], opts);
                    slots[pos++] = red[0];
                    slots[pos++] = red[1];
                    slots[pos++] = red[2];
                }
            }
    return slots;
}

namespace {

using PerUioCores = std::map<CoreSlots, long long>;

PerUioCores cores_for_uio(const Uio& u, const Partition& lambda, const CoreOptions& opts) {
    PerUioCores local;
    EscherSet es(u);
    es.for_each_tuple(lambda, [&](std::span<const Escher* const> tuple) {
        ++local[core_tuple(u, tuple, opts)];
    });
    return local;
}

CoreTypeTable merge_tables(const Partition& lambda, int n, std::vector<PerUioCores> per_uio) {
    std::map<CoreSlots, std::vector<std::pair<int, long long>>> merged;
    for (int idx = 0; idx < static_cast<int>(per_uio.size()); ++idx)
        for (auto& [slots, count] : per_uio[idx]) merged[slots].emplace_back(idx, count);
    CoreTypeTable table;
    table.lambda = lambda;
    table.n = n;
    table.entries.reserve(merged.size());
    for (auto& [slots, counts] : merged) table.entries.emplace_back(slots, std::move(counts));
    return table;
}

}  // namespace

CoreTypeTable build_core_table_serial(const Partition& lambda, int n, const CoreOptions& opts) {
    std::vector<Uio> uios = all_uios(n);
    std::vector<PerUioCores> per_uio(uios.size());
    for (size_t i = 0; i < uios.size(); ++i) per_uio[i] = cores_for_uio(uios[i], lambda, opts);
    return merge_tables(lambda, n, std::move(per_uio));
}

CoreTypeTable build_core_table(const Partition& lambda, int n, const CoreOptions& opts) {
    std::vector<Uio> uios = all_uios(n);
    std::vector<PerUioCores> per_uio(uios.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(uios.size()); ++i)
        per_uio[i] = cores_for_uio(uios[i], lambda, opts);
    return merge_tables(lambda, n, std::move(per_uio));
}

void CoreTypeTable::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    const std::string prefix = partition_to_string(lambda) + ";" + std::to_string(n) + ";";
    for (const auto& [slots, counts] : entries) {
        out << prefix;
        for (size_t i = 0; i < slots.size(); ++i) {
            if (i) out << ',';
            out << slots[i];
        }
        out << ';';
        for (size_t i = 0; i < counts.size(); ++i) {
            if (i) out << ',';
            out << counts[i].first << ':' << counts[i].second;
        }
        out << '\n';
    }
}

CoreTypeTable CoreTypeTable::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw MissingDataset("missing core table file " + file.string());
    CoreTypeTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string lambda_s, n_s, slots_s, counts_s;
        std::getline(is, lambda_s, ';');
        std::getline(is, n_s, ';');
        std::getline(is, slots_s, ';');
        std::getline(is, counts_s);
        if (first) {
            table.lambda = partition_from_string(lambda_s);
            table.n = std::stoi(n_s);
            first = false;
        }
        CoreSlots slots;
        {
            std::istringstream ss(slots_s);
            std::string tok;
            while (std::getline(ss, tok, ','))
                slots.push_back(static_cast<std::int16_t>(std::stoi(tok)));
        }
        std::vector<std::pair<int, long long>> counts;
        {
            std::istringstream cs(counts_s);
            std::string tok;
            while (std::getline(cs, tok, ',')) {
                auto colon = tok.find(':');
                counts.emplace_back(std::stoi(tok.substr(0, colon)),
                                    std::stoll(tok.substr(colon + 1)));
            }
        }
        table.entries.emplace_back(std::move(slots), std::move(counts));
    }
    return table;
}

}  // namespace esc
