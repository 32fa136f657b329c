#include <doctest.h>

#include "eschercount/uio.hpp"

using namespace esc;

TEST_CASE("area sequence validation") {
    CHECK_NOTHROW(Uio({0, 0, 1, 1, 2, 3, 3, 4, 6, 7, 9}));
    CHECK_NOTHROW(Uio({0, 1, 2}));
    CHECK_THROWS_AS(Uio({0, 2}), InvalidAreaSequence);
    CHECK_THROWS_AS(Uio({1}), InvalidAreaSequence);
    CHECK_THROWS_AS(Uio({0, 1, 0}), InvalidAreaSequence);
    CHECK_THROWS_AS(Uio({}), InvalidAreaSequence);
}

TEST_CASE("relations on the 11-interval example") {
    Uio u({0, 0, 1, 1, 2, 3, 3, 4, 6, 7, 9});
    CHECK(u.size() == 11);
    CHECK(u.relation(2, 3) == Rel::intersect);  // 2 >= a_3 = 1
    CHECK(u.relation(5, 8) == Rel::less);       // 5 < a_8 = 6
    CHECK(u.arrow(5, 8));
    CHECK(u.arrow(2, 3));
    CHECK_FALSE(u.arrow(8, 5));
    CHECK_THROWS_AS(u.relation(0, 11), std::out_of_range);
}

TEST_CASE("chain and self relations") {
    Uio chain({0, 1});
    CHECK(chain.relation(0, 1) == Rel::less);
    CHECK(chain.relation(1, 0) == Rel::greater);
    CHECK_FALSE(chain.arrow(1, 0));
    CHECK(chain.relation(0, 0) == Rel::intersect);
    CHECK(chain.arrow(1, 1));
}

TEST_CASE("generate_all_uios counts and order") {
    auto two = all_uios(2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].area() == std::vector<int>{0, 0});
    CHECK(two[1].area() == std::vector<int>{0, 1});
    CHECK(all_uios(4).size() == 14);
    CHECK(all_uios(9).size() == 4862);
    for (int n = 1; n <= 9; ++n) CHECK(all_uios(n).size() == catalan(n));
}

TEST_CASE("generated tables satisfy the relation invariants") {
    for (int n = 1; n <= 6; ++n) {
        for (const Uio& u : all_uios(n)) {
            for (int i = 0; i < n; ++i) {
                CHECK(u.relation(i, i) == Rel::intersect);
                for (int j = i + 1; j < n; ++j) {
                    // smaller index is never greater than a larger one
                    CHECK(u.relation(i, j) != Rel::greater);
                    CHECK(u.arrow(i, j));
                    bool anti = (u.relation(i, j) == Rel::less) ==
                                (u.relation(j, i) == Rel::greater);
                    CHECK(anti);
                    bool rule = (u.relation(i, j) == Rel::intersect) == (i >= u.area()[j]);
                    CHECK(rule);
                }
            }
            // round trip through the area sequence
            Uio rebuilt(u.area());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) CHECK(rebuilt.relation(i, j) == u.relation(i, j));
        }
    }
}

TEST_CASE("lexicographic order is strict") {
    auto uios = all_uios(5);
    for (size_t i = 0; i + 1 < uios.size(); ++i) CHECK(uios[i].area() < uios[i + 1].area());
}
