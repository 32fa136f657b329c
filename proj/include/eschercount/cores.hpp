#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eschercount/escher.hpp"
#include "eschercount/symfunc.hpp"
#include "eschercount/uio.hpp"

namespace esc {

/// Core-vector slots are half-integers stored exactly as doubled integers:
/// 0 -> 0, -1 -> -2, -0.5 -> -1, 1.5 -> 3.
using CoreSlots = std::vector<std::int16_t>;

/// Fixed slot layout for arity r: slot 0 encodes 0; one 3-slot block
/// (SEStart, SEEnd, FirstIns) per vertex pair i<j in lexicographic order;
/// then, per triple i<j<k, the three reduced blocks ((ij),k), ((ik),j),
/// ((jk),i) in that order.  xi(2)=4, xi(3)=19, xi(4)=55.
struct SlotLayout {
    int arity = 0;
    std::vector<std::string> names;

    static const SlotLayout& for_arity(int r);  // r in {2,3,4}, else UnsupportedArity
    int size() const { return static_cast<int>(names.size()); }

    /// Slot index of SEStart(u_i,u_j); SEEnd/FirstIns follow at +1/+2.
    int pair_block(int i, int j) const;
    /// Slot index of SEStart(u_iu_j, u_k) for the triple {i,j,k}, i<j, k not in {i,j}.
    int reduced_block(int i, int j, int k) const;
};

struct CoreOptions {
    /// Default branch guard distinguishes cases (2)/(3) of the pair core by
    /// S(u,l) nonempty/empty.  The literal reading (SEStart > 0 vs = 0) is
    /// retained for falsification experiments.
    bool literal_branch_guard = false;
};

/// The last three slots of the pair core (SEStart, SEEnd, FirstIns), doubled:
///   I(u,v) empty          -> (-1, -1, -0.5)
///   S(u,|v|) nonempty     -> (SEStart, SEStart+|v|, FirstIns+0.5)
///   S(u,|v|) empty        -> (-1, -1, FirstIns+1.5)
std::array<std::int16_t, 3> pair_core_block(const Uio& u, const Escher& a, const Escher& b,
                                            const CoreOptions& opts = {});

/// Reduced block for ((ab), w): the sentinel block when I(a,b) is empty,
/// otherwise the pair block of (a +_FirstIns b, w).
std::array<std::int16_t, 3> reduced_core_block(const Uio& u, const Escher& a, const Escher& b,
                                               const Escher& w, const CoreOptions& opts = {});

/// Full core vector of a disjoint pair (4 slots).
CoreSlots core_pair(const Uio& u, const Escher& a, const Escher& b,
                    const CoreOptions& opts = {});

/// Full core vector of an ordered tuple laid out per SlotLayout; arity 2..4.
CoreSlots core_tuple(const Uio& u, std::span<const Escher* const> tuple,
                     const CoreOptions& opts = {});

/// Deduplicated core-type counts for one (lambda, n): per distinct core
/// vector, sparse (uio index, count) pairs.  Entries sorted by slots; count
/// lists sorted by uio index.
struct CoreTypeTable {
    Partition lambda;
    int n = 0;
    std::vector<std::pair<CoreSlots, std::vector<std::pair<int, long long>>>> entries;

    void save(const std::filesystem::path& file) const;
    static CoreTypeTable load(const std::filesystem::path& file);
};

/// Build the table over all UIOs of length n (canonical order).  OpenMP
/// parallel over UIOs; build_core_table_serial is the plain loop kept as the
/// reference implementation.
CoreTypeTable build_core_table(const Partition& lambda, int n, const CoreOptions& opts = {});
CoreTypeTable build_core_table_serial(const Partition& lambda, int n,
                                      const CoreOptions& opts = {});

}  // namespace esc
