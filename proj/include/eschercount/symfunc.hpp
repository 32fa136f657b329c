#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "eschercount/errors.hpp"
#include "eschercount/uio.hpp"

namespace esc {

using Rational = boost::multiprecision::cpp_rational;

/// A partition is a nonincreasing vector of positive parts.
using Partition = std::vector<int>;

int weight(const Partition& p);
bool is_partition(const Partition& p);
std::string partition_to_string(const Partition& p);   // "3,2,1"
Partition partition_from_string(const std::string& s);

/// Parse "0.25", "3", or "1/4" into an exact rational.
Rational parse_rational(const std::string& s);

/// All partitions of n in descending lexicographic order:
/// (n), (n-1,1), ..., (1,...,1).
std::vector<Partition> partitions_of(int n);

/// Exact expansion m_lambda = sum_tau d_tau p_tau over partitions tau of
/// |lambda|.  Coefficients are rationals; for repeated parts they are not
/// integral (m_{(1,1)} = p_{(1,1)}/2 - p_{(2)}/2).
struct PowerSumExpansion {
    Partition target;
    std::vector<std::pair<Partition, Rational>> coeffs;  // nonzero entries, tau descending-lex
};

/// Method: expand every p_tau (tau of weight |lambda|) as a polynomial in
/// |lambda| variables, collect monomial-basis coordinates, and solve the
/// resulting square linear system by exact rational elimination.
/// Throws WeightTooLarge for |lambda| > 12.
PowerSumExpansion monomial_to_powersum(const Partition& lambda);

/// Independent chromatic-symmetric-function oracle: expands X_{inc(U)} in the
/// elementary basis by enumerating all proper colorings of the
/// incomparability graph with n colors and converting the tallied monomial
/// coordinates to the e-basis by exact linear solve.  Throws TooLarge for
/// n > 8.
std::map<Partition, long long> chromatic_e_coefficients(const Uio& u);

/// Number of proper colorings of inc(U) with colors {1..n} (direct count).
std::uint64_t count_proper_colorings(const Uio& u);

}  // namespace esc
