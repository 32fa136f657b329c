#include "eschercount/symfunc.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace esc {

int weight(const Partition& p) {
    int w = 0;
    for (int x : p) w += x;
    return w;
}

bool is_partition(const Partition& p) {
    if (p.empty()) return false;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 1) return false;
        if (i > 0 && p[i] > p[i - 1]) return false;
    }
    return true;
}

std::string partition_to_string(const Partition& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) os << ',';
        os << p[i];
    }
    return os.str();
}

Partition partition_from_string(const std::string& s) {
    Partition p;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        p.push_back(std::stoi(tok));
    }
    return p;
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        using boost::multiprecision::cpp_int;
        return Rational(cpp_int(s.substr(0, slash)), cpp_int(s.substr(slash + 1)));
    }
    bool negative = s[0] == '-';
    std::string body = (s[0] == '-' || s[0] == '+') ? s.substr(1) : s;
    auto dot = body.find('.');
    std::string digits = (dot == std::string::npos) ? body : body.substr(0, dot) + body.substr(dot + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad rational literal: " + s);
    using boost::multiprecision::cpp_int;
    cpp_int num = 0;  // digit by digit; cpp_int("0...") would read octal
    for (char c : digits) num = num * 10 + (c - '0');
    cpp_int den = 1;
    if (dot != std::string::npos)
        for (size_t i = dot + 1; i < body.size(); ++i) den *= 10;
    Rational r(num, den);
    return negative ? -r : r;
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int rem, int maxpart) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

namespace {

// Dense-exponent polynomials in v <= 12 variables, degree <= 12: an exponent
// vector packs into one uint64 at 4 bits per variable.
using Poly = std::unordered_map<std::uint64_t, long long>;

std::uint64_t pack_exponent(const std::vector<int>& e) {
    std::uint64_t key = 0;
    for (size_t j = 0; j < e.size(); ++j) key |= static_cast<std::uint64_t>(e[j]) << (4 * j);
    return key;
}

// Multiply poly by p_k = x_1^k + ... + x_v^k.
Poly multiply_by_powersum(const Poly& poly, int k, int v) {
    Poly out;
    out.reserve(poly.size() * v);
    for (const auto& [key, c] : poly)
        for (int j = 0; j < v; ++j) out[key + (static_cast<std::uint64_t>(k) << (4 * j))] += c;
    return out;
}

// Representative monomial of partition mu in v variables: x_1^{mu_1} x_2^{mu_2}...
std::uint64_t representative_key(const Partition& mu) {
    std::uint64_t key = 0;
    for (size_t j = 0; j < mu.size(); ++j) key |= static_cast<std::uint64_t>(mu[j]) << (4 * j);
    return key;
}

// Solve A x = rhs by exact Gaussian elimination; A is invertible by
// construction ({p_tau} restricted to n >= weight variables stays a basis).
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a,
                                     std::vector<Rational> rhs) {
    const size_t m = a.size();
    for (size_t col = 0; col < m; ++col) {
        size_t piv = col;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) throw std::logic_error("singular basis-change system");
        std::swap(a[piv], a[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t r = 0; r < m; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(m);
    for (size_t i = 0; i < m; ++i) x[i] = rhs[i] / a[i][i];
    return x;
}

struct PowersumBasis {
    std::vector<Partition> taus;
    // A[mu][tau] = coefficient of the representative monomial of mu in p_tau.
    std::vector<std::vector<Rational>> matrix;
};

const PowersumBasis& powersum_basis(int n) {
    static std::mutex mu;
    static std::map<int, PowersumBasis> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    PowersumBasis b;
    b.taus = partitions_of(n);
    const size_t m = b.taus.size();
    b.matrix.assign(m, std::vector<Rational>(m, Rational(0)));
    for (size_t t = 0; t < m; ++t) {
        Poly poly;
        poly[0] = 1;
        for (int part : b.taus[t]) poly = multiply_by_powersum(poly, part, n);
        for (size_t r = 0; r < m; ++r) {
            auto pit = poly.find(representative_key(b.taus[r]));
            if (pit != poly.end()) b.matrix[r][t] = pit->second;
        }
    }
    return cache.emplace(n, std::move(b)).first->second;
}

}  // namespace

PowerSumExpansion monomial_to_powersum(const Partition& lambda) {
    if (!is_partition(lambda)) throw std::invalid_argument("not a partition");
    const int n = weight(lambda);
    if (n > 12) throw WeightTooLarge("monomial_to_powersum supports weight <= 12");
    const PowersumBasis& basis = powersum_basis(n);
    const size_t m = basis.taus.size();
    std::vector<Rational> rhs(m, Rational(0));
    for (size_t r = 0; r < m; ++r)
        if (basis.taus[r] == lambda) rhs[r] = 1;
    std::vector<Rational> d = solve_rational(basis.matrix, rhs);
    PowerSumExpansion out;
    out.target = lambda;
    for (size_t t = 0; t < m; ++t)
        if (d[t] != 0) out.coeffs.emplace_back(basis.taus[t], d[t]);
    return out;
}

namespace {

struct ColoringTally {
    std::map<Partition, long long> by_type;  // colorings whose exponent vector is its own
                                             // descending representative
    std::uint64_t total = 0;
};

ColoringTally enumerate_colorings(const Uio& u) {
    const int n = u.size();
    // Earlier-neighbor lists in the incomparability graph.
    std::vector<std::vector<int>> earlier(n);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (u.relation_fast(i, j) == Rel::intersect) earlier[j].push_back(i);

    ColoringTally tally;
    std::vector<int> color(n, 0);
    std::vector<int> count(n + 1, 0);  // colors are 1..n
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            ++tally.total;
            for (int c = 2; c <= n; ++c)
                if (count[c] > count[c - 1]) return;
            Partition type;
            for (int c = 1; c <= n && count[c] > 0; ++c) type.push_back(count[c]);
            ++tally.by_type[type];
            return;
        }
        unsigned forbidden = 0;
        for (int w : earlier[v]) forbidden |= 1u << color[w];
        for (int c = 1; c <= n; ++c) {
            if (forbidden & (1u << c)) continue;
            color[v] = c;
            ++count[c];
            self(self, v + 1);
            --count[c];
        }
        color[v] = 0;
    };
    rec(rec, 0);
    return tally;
}

}  // namespace

std::map<Partition, long long> chromatic_e_coefficients(const Uio& u) {
    const int n = u.size();
    if (n > 8) throw TooLarge("coloring oracle supports n <= 8");
    ColoringTally tally = enumerate_colorings(u);

    // B[mu][lambda] = coefficient of the representative monomial of mu in
    // e_lambda expanded over n variables.
    std::vector<Partition> lambdas = partitions_of(n);
    const size_t m = lambdas.size();

    // Elementary e_k over n variables as a packed polynomial.
    std::vector<Poly> elementary(n + 1);
    for (int k = 1; k <= n; ++k) {
        Poly p;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (std::popcount(mask) != k) continue;
            std::uint64_t key = 0;
            for (int j = 0; j < n; ++j)
                if (mask & (1u << j)) key |= std::uint64_t{1} << (4 * j);
            p[key] = 1;
        }
        elementary[k] = std::move(p);
    }

    std::vector<std::vector<Rational>> b(m, std::vector<Rational>(m, Rational(0)));
    for (size_t t = 0; t < m; ++t) {
        Poly poly;
        poly[0] = 1;
        for (int part : lambdas[t]) {
            Poly next;
            next.reserve(poly.size() * elementary[part].size());
            for (const auto& [k1, c1] : poly)
                for (const auto& [k2, c2] : elementary[part]) next[k1 + k2] += c1 * c2;
            poly = std::move(next);
        }
        for (size_t r = 0; r < m; ++r) {
            auto pit = poly.find(representative_key(lambdas[r]));
            if (pit != poly.end()) b[r][t] = pit->second;
        }
    }

    std::vector<Rational> rhs(m, Rational(0));
    for (size_t r = 0; r < m; ++r) {
        auto it = tally.by_type.find(lambdas[r]);
        if (it != tally.by_type.end()) rhs[r] = it->second;
    }
    std::vector<Rational> c = solve_rational(std::move(b), std::move(rhs));

    std::map<Partition, long long> out;
    for (size_t t = 0; t < m; ++t) {
        if (c[t] == 0) continue;
        if (denominator(c[t]) != 1)
            throw NonIntegralResult("e-basis coefficient is not an integer");
        out[lambdas[t]] = numerator(c[t]).convert_to<long long>();
    }
    return out;
}

std::uint64_t count_proper_colorings(const Uio& u) {
    if (u.size() > 8) throw TooLarge("coloring count supports n <= 8");
    return enumerate_colorings(u).total;
}

}  // namespace esc
