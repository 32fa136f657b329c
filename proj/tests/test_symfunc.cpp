#include <doctest.h>

#include <random>

#include "eschercount/symfunc.hpp"
#include "eschercount/uio.hpp"

using namespace esc;
using boost::multiprecision::cpp_int;

namespace {

Rational find_coeff(const PowerSumExpansion& e, const Partition& tau) {
    for (const auto& [t, d] : e.coeffs)
        if (t == tau) return d;
    return Rational(0);
}

// Test-side evaluators, independent of the packed-polynomial code path.
cpp_int eval_powersum(const Partition& tau, const std::vector<int>& x) {
    cpp_int prod = 1;
    for (int part : tau) {
        cpp_int s = 0;
        for (int xi : x) {
            cpp_int p = 1;
            for (int e = 0; e < part; ++e) p *= xi;
            s += p;
        }
        prod *= s;
    }
    return prod;
}

cpp_int eval_monomial_sym(const Partition& lambda, const std::vector<int>& x) {
    // Sum over distinct permutations of lambda padded with zeros.
    std::vector<int> exps(x.size(), 0);
    std::copy(lambda.begin(), lambda.end(), exps.begin());
    std::sort(exps.begin(), exps.end());
    cpp_int total = 0;
    do {
        cpp_int term = 1;
        for (size_t i = 0; i < x.size(); ++i) {
            cpp_int p = 1;
            for (int e = 0; e < exps[i]; ++e) p *= x[i];
            term *= p;
        }
        total += term;
    } while (std::next_permutation(exps.begin(), exps.end()));
    return total;
}

}  // namespace

TEST_CASE("partitions_of counts and order") {
    CHECK(partitions_of(1) == std::vector<Partition>{{1}});
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_of(9).size() == 30);
    auto p4 = partitions_of(4);
    CHECK(p4[0] == Partition{4});
    CHECK(p4[1] == Partition{3, 1});
    CHECK(p4[2] == Partition{2, 2});
    CHECK(p4[3] == Partition{2, 1, 1});
    CHECK(p4[4] == Partition{1, 1, 1, 1});
}

TEST_CASE("monomial_to_powersum pinned expansions") {
    SUBCASE("single row is a power sum") {
        for (int n = 1; n <= 6; ++n) {
            auto e = monomial_to_powersum({n});
            REQUIRE(e.coeffs.size() == 1);
            CHECK(e.coeffs[0].first == Partition{n});
            CHECK(e.coeffs[0].second == 1);
        }
    }
    SUBCASE("distinct pair") {
        auto e = monomial_to_powersum({3, 1});
        CHECK(find_coeff(e, {3, 1}) == 1);
        CHECK(find_coeff(e, {4}) == -1);
        CHECK(e.coeffs.size() == 2);
    }
    SUBCASE("repeated pair needs rationals") {
        auto e = monomial_to_powersum({1, 1});
        CHECK(find_coeff(e, {1, 1}) == Rational(1, 2));
        CHECK(find_coeff(e, {2}) == Rational(-1, 2));
    }
    SUBCASE("distinct triple") {
        auto e = monomial_to_powersum({3, 2, 1});
        CHECK(find_coeff(e, {3, 2, 1}) == 1);
        CHECK(find_coeff(e, {5, 1}) == -1);
        CHECK(find_coeff(e, {4, 2}) == -1);
        CHECK(find_coeff(e, {3, 3}) == -1);
        CHECK(find_coeff(e, {6}) == 2);
    }
    SUBCASE("generic pair identity") {
        for (auto [k, l] : {std::pair{2, 1}, {4, 2}, {5, 3}}) {
            auto e = monomial_to_powersum({k, l});
            CHECK(find_coeff(e, {k, l}) == 1);
            CHECK(find_coeff(e, {k + l}) == -1);
        }
    }
    CHECK_THROWS_AS(monomial_to_powersum(Partition(13, 1)), WeightTooLarge);
}

TEST_CASE("expansion identity holds at random integer points") {
    std::mt19937_64 rng(12345);
    for (int w = 2; w <= 8; ++w) {
        for (const Partition& lambda : partitions_of(w)) {
            auto expansion = monomial_to_powersum(lambda);
            for (int trial = 0; trial < 6; ++trial) {
                std::vector<int> x(w);
                for (int& xi : x) xi = static_cast<int>(rng() % 7) - 3;
                Rational rhs = 0;
                for (const auto& [tau, d] : expansion.coeffs)
                    rhs += d * Rational(eval_powersum(tau, x));
                CHECK(rhs == Rational(eval_monomial_sym(lambda, x)));
            }
        }
    }
}

TEST_CASE("coloring oracle on pinned graphs") {
    SUBCASE("complete incomparability") {
        auto c = chromatic_e_coefficients(Uio({0, 0, 0, 0}));
        REQUIRE(c.count({4}) == 1);
        CHECK(c.at({4}) == 24);
        CHECK(c.size() == 1);
    }
    SUBCASE("edgeless incomparability") {
        auto c = chromatic_e_coefficients(Uio({0, 1, 2, 3}));
        REQUIRE(c.count({1, 1, 1, 1}) == 1);
        CHECK(c.at({1, 1, 1, 1}) == 1);
        CHECK(c.size() == 1);
    }
    SUBCASE("near-complete graph has zero (2,2) coefficient") {
        auto c = chromatic_e_coefficients(Uio({0, 0, 0, 1}));
        CHECK(c.count({2, 2}) == 0);
    }
    CHECK_THROWS_AS(chromatic_e_coefficients(Uio(std::vector<int>(9, 0))), TooLarge);
}

TEST_CASE("oracle sums match direct proper-coloring counts") {
    // sum_lambda c_lambda * e_lambda(1,...,1) = number of proper n-colorings;
    // e_lambda at all-ones is a product of binomials.
    auto binom = [](int n, int k) {
        long long b = 1;
        for (int i = 1; i <= k; ++i) b = b * (n - i + 1) / i;
        return b;
    };
    for (int n = 2; n <= 5; ++n) {
        for (const Uio& u : all_uios(n)) {
            auto coeffs = chromatic_e_coefficients(u);
            long long total = 0;
            for (const auto& [lambda, c] : coeffs) {
                long long e_at_ones = 1;
                for (int part : lambda) e_at_ones *= binom(n, part);
                total += c * e_at_ones;
            }
            CHECK(total == static_cast<long long>(count_proper_colorings(u)));
        }
    }
}

TEST_CASE("parse_rational literals") {
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("1/4") == Rational(1, 4));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));
    CHECK_THROWS(parse_rational("abc"));
}
