#include "eschercount/uio.hpp"

#include <sstream>

namespace esc {

Uio::Uio(std::vector<int> area) : n_(static_cast<int>(area.size())), area_(std::move(area)) {
    if (n_ == 0) throw InvalidAreaSequence("area sequence must be nonempty");
    for (int i = 0; i < n_; ++i) {
        if (area_[i] < 0 || area_[i] > i)
            throw InvalidAreaSequence("area entry out of range at index " + std::to_string(i));
        if (i > 0 && area_[i] < area_[i - 1])
            throw InvalidAreaSequence("area sequence must be nondecreasing");
    }
    rel_.assign(static_cast<size_t>(n_) * n_, Rel::intersect);
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            if (i >= area_[j]) {
                rel_[i * n_ + j] = Rel::intersect;
                rel_[j * n_ + i] = Rel::intersect;
            } else {
                rel_[i * n_ + j] = Rel::less;
                rel_[j * n_ + i] = Rel::greater;
            }
        }
    }
}

Rel Uio::relation(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw std::out_of_range("vertex index out of range");
    return rel_[i * n_ + j];
}

bool Uio::arrow(int x, int y) const { return relation(x, y) != Rel::greater; }

std::string Uio::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < n_; ++i) {
        if (i) os << ',';
        os << area_[i];
    }
    return os.str();
}

std::vector<Uio> all_uios(int n) {
    std::vector<Uio> out;
    std::vector<int> area(n);
    // Lexicographic DFS over valid area sequences: a_0 = 0, a_{i-1} <= a_i <= i.
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            out.emplace_back(area);
            return;
        }
        int lo = (i == 0) ? 0 : area[i - 1];
        for (int a = lo; a <= i; ++a) {
            area[i] = a;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

std::uint64_t catalan(int n) {
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

}  // namespace esc
