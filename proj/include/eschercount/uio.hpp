#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eschercount/errors.hpp"

namespace esc {

enum class Rel : uint8_t { less, greater, intersect };

/// A unit interval order given by its area sequence a_0 <= ... <= a_{n-1},
/// 0 <= a_i <= i.  Intervals i < j intersect iff i >= a_j, otherwise i lies
/// strictly left of j.  The full pairwise relation table is precomputed at
/// construction (it is read in the innermost enumeration loops) and the
/// object is immutable afterwards, so instances can be shared across threads.
class Uio {
public:
    explicit Uio(std::vector<int> area);

    int size() const { return n_; }
    const std::vector<int>& area() const { return area_; }

    Rel relation(int i, int j) const;

    /// arrow(x,y): x intersects y or x lies strictly left of y.
    bool arrow(int x, int y) const;

    /// Unchecked variant for hot loops; indices must be in range.
    bool arrow_fast(int x, int y) const { return rel_[x * n_ + y] != Rel::greater; }
    Rel relation_fast(int i, int j) const { return rel_[i * n_ + j]; }

    /// Comma-separated area entries, e.g. "0,0,1".
    std::string to_string() const;

    bool operator==(const Uio& o) const { return area_ == o.area_; }

private:
    int n_ = 0;
    std::vector<int> area_;
    std::vector<Rel> rel_;  // dense n*n
};

/// All UIOs of length n in lexicographic area-sequence order.  The position
/// in this list is the canonical UIO index used by every persisted dataset.
std::vector<Uio> all_uios(int n);

/// C_n = binom(2n,n)/(n+1); number of UIOs of length n.
std::uint64_t catalan(int n);

}  // namespace esc
