#include "eschercount/escher.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

namespace esc {

bool is_escher(const Uio& u, std::span<const int> seq) {
    const int k = static_cast<int>(seq.size());
    if (k == 0) return false;
    std::uint32_t seen = 0;
    for (int x : seq) {
        if (x < 0 || x >= u.size()) return false;
        if (seen & (1u << x)) return false;
        seen |= 1u << x;
    }
    for (int i = 0; i < k; ++i)
        if (!u.arrow_fast(seq[i], seq[(i + 1) % k])) return false;
    return true;
}

Escher make_escher(const Uio& u, std::vector<int> seq) {
    if (!is_escher(u, seq)) throw std::invalid_argument("sequence is not an escher");
    std::uint32_t support = 0;
    for (int x : seq) support |= 1u << x;
    return Escher{std::move(seq), support};
}

std::vector<Escher> enumerate_eschers(const Uio& u, int k) {
    const int n = u.size();
    std::vector<Escher> out;
    if (k < 1 || k > n) return out;
    std::vector<int> seq(k);
    auto rec = [&](auto&& self, int depth, std::uint32_t used) -> void {
        if (depth == k) {
            if (u.arrow_fast(seq[k - 1], seq[0])) out.push_back(Escher{seq, used});
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used & (1u << v)) continue;
            if (depth > 0 && !u.arrow_fast(seq[depth - 1], v)) continue;
            seq[depth] = v;
            self(self, depth + 1, used | (1u << v));
        }
    };
    rec(rec, 0, 0);
    return out;
}

bool is_correct_sequence(const Uio& u, std::span<const int> seq) {
    const int k = static_cast<int>(seq.size());
    if (k == 0) return false;
    std::uint32_t seen = 0;
    for (int x : seq) {
        if (x < 0 || x >= u.size()) return false;
        if (seen & (1u << x)) return false;
        seen |= 1u << x;
    }
    for (int i = 0; i + 1 < k; ++i)
        if (u.relation_fast(seq[i], seq[i + 1]) == Rel::greater) return false;
    for (int j = 1; j < k; ++j) {
        bool meets_earlier = false;
        for (int i = 0; i < j && !meets_earlier; ++i)
            if (u.relation_fast(seq[i], seq[j]) == Rel::intersect) meets_earlier = true;
        if (!meets_earlier) return false;
    }
    return true;
}

namespace {

template <class Fn>
void walk_correct_sequences(const Uio& u, int k, Fn&& fn) {
    const int n = u.size();
    if (k < 1 || k > n) return;
    std::vector<int> seq(k);
    auto rec = [&](auto&& self, int depth, std::uint32_t used) -> void {
        if (depth == k) {
            fn(seq);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used & (1u << v)) continue;
            if (depth > 0 && u.relation_fast(seq[depth - 1], v) == Rel::greater) continue;
            if (depth > 0) {
                bool meets_earlier = false;
                for (int i = 0; i < depth && !meets_earlier; ++i)
                    if (u.relation_fast(seq[i], v) == Rel::intersect) meets_earlier = true;
                if (!meets_earlier) continue;
            }
            seq[depth] = v;
            self(self, depth + 1, used | (1u << v));
        }
    };
    rec(rec, 0, 0);
}

}  // namespace

std::vector<std::vector<int>> enumerate_correct_sequences(const Uio& u, int k) {
    std::vector<std::vector<int>> out;
    walk_correct_sequences(u, k, [&](const std::vector<int>& s) { out.push_back(s); });
    return out;
}

std::uint64_t count_correct_sequences(const Uio& u, int k) {
    std::uint64_t count = 0;
    walk_correct_sequences(u, k, [&](const std::vector<int>&) { ++count; });
    return count;
}

namespace {

// Cyclic window [seq[(start)%k], ..., seq[(start+len-1)%k]] closed as a cycle.
bool cyclic_window_is_escher(const Uio& u, const std::vector<int>& seq, int start, int len) {
    const int k = static_cast<int>(seq.size());
    if (len == 0) return true;
    for (int i = 0; i < len; ++i) {
        int a = seq[(start + i) % k];
        int b = seq[(start + (i + 1) % len) % k];
        if (!u.arrow_fast(a, b)) return false;
    }
    return true;
}

}  // namespace

std::vector<int> splitting_points(const Uio& u, const Escher& v, int l) {
    std::vector<int> out;
    const int k = v.length();
    if (l < 1 || l > k) return out;
    for (int m = 0; m < k; ++m) {
        if (!cyclic_window_is_escher(u, v.seq, m + 1, l)) continue;
        if (!cyclic_window_is_escher(u, v.seq, m + l + 1, k - l)) continue;
        out.push_back(m);
    }
    return out;
}

std::vector<int> insertion_points(const Uio& u, const Escher& a, const Escher& b) {
    if (a.support & b.support) throw NotDisjoint("escher pair shares vertices");
    const int k = a.length(), l = b.length();
    const int period = std::lcm(k, l);
    std::vector<int> out;
    for (int i = 0; i < period; ++i) {
        if (u.arrow_fast(a.seq[i % k], b.seq[(i + 1) % l]) &&
            u.arrow_fast(b.seq[i % l], a.seq[(i + 1) % k]))
            out.push_back(i);
    }
    return out;
}

namespace {

Escher concat_unchecked(const Escher& a, const Escher& b, int i) {
    const int k = a.length(), l = b.length();
    const int q = (i / k) * k;  // largest multiple of k in (i-k, i]
    std::vector<int> seq;
    seq.reserve(k + l);
    for (int t = q; t <= i; ++t) seq.push_back(a.seq[t % k]);
    for (int t = i + 1; t <= i + l; ++t) seq.push_back(b.seq[t % l]);
    for (int t = i + 1; t <= q + k - 1; ++t) seq.push_back(a.seq[t % k]);
    return Escher{std::move(seq), a.support | b.support};
}

}  // namespace

Escher concat(const Uio& u, const Escher& a, const Escher& b, int i) {
    if (i < 0) throw InvalidInsertionPoint("insertion index must be nonnegative");
    if (a.support & b.support) throw NotDisjoint("escher pair shares vertices");
    const int k = a.length(), l = b.length();
    if (!(u.arrow_fast(a.seq[i % k], b.seq[(i + 1) % l]) &&
          u.arrow_fast(b.seq[i % l], a.seq[(i + 1) % k])))
        throw InvalidInsertionPoint("not an insertion point of the pair");
    return concat_unchecked(a, b, i);
}

std::pair<Escher, Escher> phi_split(const Uio& u, const Escher& w, int k) {
    const int total = w.length();
    const int n = total - k;
    std::vector<int> s = splitting_points(u, w, k);
    if (s.empty()) throw NoSplittingPoint("escher has no valid subescher of that length");
    const int big_l = s.front();

    std::vector<int> vbase(k), ubase(n);
    for (int i = 0; i < k; ++i) vbase[i] = w.seq[(big_l + 1 + i) % total];
    for (int i = 0; i < n; ++i) ubase[i] = w.seq[(big_l + k + 1 + i) % total];

    std::vector<int> useq(n), vseq(k);
    for (int i = 0; i < n; ++i) useq[i] = ubase[((i + n - 1 - big_l) % n + n) % n];
    for (int i = 0; i < k; ++i) vseq[i] = vbase[((i + k - 1 - big_l) % k + k) % k];
    return {make_escher(u, std::move(useq)), make_escher(u, std::move(vseq))};
}

Escher psi_merge(const Uio& u, const Escher& a, const Escher& b, const Escher& dummy) {
    const int n = a.length(), k = b.length();
    std::vector<int> pts = insertion_points(u, a, b);
    if (pts.empty()) return dummy;
    const int fi = pts.front();
    Escher merged = concat_unchecked(a, b, fi);
    if (fi < n) return merged;
    // Restart the cycle at b_{n mod k}.
    const int anchor = b.seq[n % k];
    const int total = n + k;
    int pos = 0;
    while (merged.seq[pos] != anchor) ++pos;
    std::vector<int> rotated(total);
    for (int i = 0; i < total; ++i) rotated[i] = merged.seq[(pos + i) % total];
    return Escher{std::move(rotated), merged.support};
}

const std::vector<Escher>& EscherSet::of_length(int k) const {
    if (eschers_.size() < static_cast<size_t>(k + 1)) eschers_.resize(k + 1);
    if (!eschers_[k]) eschers_[k] = enumerate_eschers(*uio_, k);
    return *eschers_[k];
}

const std::vector<std::pair<std::uint32_t, long long>>& EscherSet::mask_counts(int k) const {
    const int n = uio_->size();
    if (masks_.size() < static_cast<size_t>(n + 1)) masks_.resize(n + 1);
    if (k < 1 || k > n) {
        static const std::vector<std::pair<std::uint32_t, long long>> empty;
        return empty;
    }
    if (masks_[k]) return *masks_[k];

    // One DP pass fills every length at once.  Count closed walks on distinct
    // vertices per support mask, anchored at the smallest vertex; a cycle of
    // length m yields m Escher sequences (all rotations are distinct).
    std::unordered_map<std::uint32_t, long long> cycles;
    std::vector<long long> f(static_cast<size_t>(1u << n) * n, 0);
    for (int s = 0; s < n; ++s) {
        const std::uint32_t high = ((1u << n) - 1u) & ~((1u << (s + 1)) - 1u);
        // Masks containing s with all other vertices > s, increasing order.
        f[(1u << s) * n + s] = 1;
        for (std::uint32_t sub = 0;; sub = (sub - high) & high) {
            const std::uint32_t mask = sub | (1u << s);
            for (int last = s; last < n; ++last) {
                long long ways = f[mask * n + last];
                if (ways == 0) continue;
                if (uio_->arrow_fast(last, s)) cycles[mask] += ways;
                for (int nxt = s + 1; nxt < n; ++nxt) {
                    if (mask & (1u << nxt)) continue;
                    if (!uio_->arrow_fast(last, nxt)) continue;
                    f[(mask | (1u << nxt)) * n + nxt] += ways;
                }
            }
            if (sub == high) break;
        }
        // Reset touched states for the next start.
        for (std::uint32_t sub = 0;; sub = (sub - high) & high) {
            const std::uint32_t mask = sub | (1u << s);
            for (int last = s; last < n; ++last) f[mask * n + last] = 0;
            if (sub == high) break;
        }
    }
    std::vector<std::vector<std::pair<std::uint32_t, long long>>> per_len(n + 1);
    for (const auto& [mask, c] : cycles) {
        const int m = std::popcount(mask);
        per_len[m].emplace_back(mask, c * m);
    }
    for (int m = 1; m <= n; ++m) {
        std::sort(per_len[m].begin(), per_len[m].end());
        masks_[m] = std::move(per_len[m]);
    }
    return *masks_[k];
}

long long EscherSet::count_tuples(const Partition& shape) const {
    if (shape.empty()) return 0;
    for (size_t i = 0; i < shape.size(); ++i) mask_counts(shape[i]);  // force caches
    std::unordered_map<std::uint64_t, long long> memo;
    auto rec = [&](auto&& self, size_t idx, std::uint32_t used) -> long long {
        if (idx == shape.size()) return 1;
        const std::uint64_t key = (std::uint64_t{idx} << 32) | used;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        long long total = 0;
        for (const auto& [mask, cnt] : mask_counts(shape[idx])) {
            if (mask & used) continue;
            total += cnt * self(self, idx + 1, used | mask);
        }
        memo.emplace(key, total);
        return total;
    };
    return rec(rec, 0, 0);
}

void EscherSet::for_each_tuple(
    const Partition& shape,
    const std::function<void(std::span<const Escher* const>)>& fn) const {
    if (shape.empty()) return;
    std::vector<const Escher*> picked(shape.size());
    auto rec = [&](auto&& self, size_t idx, std::uint32_t used) -> void {
        if (idx == shape.size()) {
            fn(std::span<const Escher* const>(picked.data(), picked.size()));
            return;
        }
        for (const Escher& e : of_length(shape[idx])) {
            if (e.support & used) continue;
            picked[idx] = &e;
            self(self, idx + 1, used | e.support);
        }
    };
    rec(rec, 0, 0);
}

}  // namespace esc
