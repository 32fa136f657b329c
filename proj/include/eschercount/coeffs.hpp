#pragma once

#include <filesystem>
#include <vector>

#include "eschercount/escher.hpp"
#include "eschercount/symfunc.hpp"
#include "eschercount/uio.hpp"

namespace esc {

/// Stanley coefficient via the basis-change engine:
/// c_lambda = sum over tau of d_tau * (ordered disjoint tuple count of shape
/// tau).  The rational total must come out integral (NonIntegralResult
/// signals a convention bug).  Works for any partition length; |lambda| <= 12.
long long stanley_coefficient(const Uio& u, const Partition& lambda);

/// Pair specialization #E_{(k,l)} - #E_{(k+l)}, with the k = l case halved
/// (the d coefficients are 1/2, -1/2 there; ordered pair counts double).
long long pair_coefficient(const Uio& u, int k, int l);

/// Triple specialization for pairwise distinct parts; repeated parts route
/// through the general engine.
long long triple_coefficient(const Uio& u, int a, int b, int c);

/// Engine values for one lambda over all UIOs of length n, canonical order.
/// OpenMP parallel over UIOs; the _serial variant is the reference loop.
std::vector<long long> coefficient_vector(const Partition& lambda, int n);
std::vector<long long> coefficient_vector_serial(const Partition& lambda, int n);

/// Persisted per-(lambda, UIO) coefficients for all lambda with
/// |lambda| <= n and at most 4 parts, ordered by weight then descending-lex.
struct CoefficientDataset {
    int n = 0;
    std::vector<std::pair<Partition, std::vector<long long>>> records;

    const std::vector<long long>* find(const Partition& lambda) const;
    void save(const std::filesystem::path& file) const;
    static CoefficientDataset load(const std::filesystem::path& file);
};

CoefficientDataset coefficient_dataset(int n);
CoefficientDataset coefficient_dataset_serial(int n);

}  // namespace esc
