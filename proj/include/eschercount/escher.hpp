#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eschercount/symfunc.hpp"
#include "eschercount/uio.hpp"

namespace esc {

/// A k-Escher: a sequence of distinct vertices whose consecutive pairs,
/// wraparound included, all satisfy the arrow relation.  Rotations are
/// distinct Eschers.  Any singleton is a 1-Escher.
struct Escher {
    std::vector<int> seq;
    std::uint32_t support = 0;

    int length() const { return static_cast<int>(seq.size()); }
    bool operator==(const Escher& o) const { return seq == o.seq; }
};

bool is_escher(const Uio& u, std::span<const int> seq);
Escher make_escher(const Uio& u, std::vector<int> seq);  // validates

/// All k-Eschers of U in lexicographic sequence order.
std::vector<Escher> enumerate_eschers(const Uio& u, int k);

/// Correct sequences: no strict right-to-left step, and every element after
/// the first intersects some earlier one.
bool is_correct_sequence(const Uio& u, std::span<const int> seq);
std::vector<std::vector<int>> enumerate_correct_sequences(const Uio& u, int k);
std::uint64_t count_correct_sequences(const Uio& u, int k);

/// Splitting points of v for window length l, fully cyclic: m is listed iff
/// the cyclic window [v_{m+1},...,v_{m+l}] is an l-Escher and the cyclic
/// remainder is a (k-l)-Escher (empty remainder valid).  l > k gives the
/// empty list.
std::vector<int> splitting_points(const Uio& u, const Escher& v, int l);

/// Insertion points of the disjoint pair (u,v) over one period lcm(k,l):
/// i is listed iff arrow(u_i, v_{i+1}) and arrow(v_i, u_{i+1}) with indices
/// mod the respective lengths.  Throws NotDisjoint.
std::vector<int> insertion_points(const Uio& u, const Escher& a, const Escher& b);

/// Concatenation a +_i b at insertion point i; throws InvalidInsertionPoint
/// when i is not one.
Escher concat(const Uio& u, const Escher& a, const Escher& b, int i);

/// Split a (n+k)-Escher w at its first splitting point L = SEStart(w,k) into
/// the rotated pair (u',v') with u'_i = u_{i+n-L-1}, v'_i = v_{i+k-L-1}.
/// Throws NoSplittingPoint.
std::pair<Escher, Escher> phi_split(const Uio& u, const Escher& w, int k);

/// Merge a disjoint pair back into an (n+k)-Escher: the dummy if there is no
/// insertion point, the concatenation at FirstIns if FirstIns < n, and the
/// same concatenation restarted at v_{n mod k} otherwise.
Escher psi_merge(const Uio& u, const Escher& a, const Escher& b, const Escher& dummy);

/// Per-UIO enumeration context: Escher lists and support-mask counts per
/// length, computed lazily and cached.  Tuple counting never materializes
/// sequences (closed-walk DP grouped by support); tuple iteration does.
/// Instances are not thread-safe; use one per worker.
class EscherSet {
public:
    explicit EscherSet(const Uio& u) : uio_(&u) {}

    const Uio& uio() const { return *uio_; }

    const std::vector<Escher>& of_length(int k) const;

    /// (support mask, number of k-Eschers with that support), mask ascending.
    const std::vector<std::pair<std::uint32_t, long long>>& mask_counts(int k) const;

    /// Ordered pairwise-disjoint tuples with the given shape (count only).
    long long count_tuples(const Partition& shape) const;

    /// Visit every ordered disjoint tuple of the given shape.  The callback
    /// receives one pointer per part, in shape order.
    void for_each_tuple(const Partition& shape,
                        const std::function<void(std::span<const Escher* const>)>& fn) const;

private:
    const Uio* uio_;
    mutable std::vector<std::optional<std::vector<Escher>>> eschers_;
    mutable std::vector<std::optional<std::vector<std::pair<std::uint32_t, long long>>>> masks_;
};

}  // namespace esc
