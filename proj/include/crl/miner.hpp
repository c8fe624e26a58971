#ifndef CRL_MINER_HPP
#define CRL_MINER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "crl/rules.hpp"
#include "crl/tabular.hpp"

namespace crl {

/// Candidate rules Γ mined from both class subsets.
struct CandidatePool {
    RuleList rules;                          // canonical order: (cardinality, features, z)
    std::vector<double> class_support;       // fraction of the rule's class subset covered
    std::vector<std::size_t> support_count;  // same, as a row count within the mined rows
    double gamma = 0.05;
    std::size_t max_cardinality = 2;

    std::size_t size() const { return rules.size(); }
};

/// Rows used for mining. Covers of mined rules are always cached against
/// the full dataset.
struct MiningSample {
    BitVector rows;
};

/// Seeded uniform subsample of floor(fraction * N) rows; fraction = 1 keeps all rows.
MiningSample subsample_for_mining(const BinaryDataset& data, double fraction, std::uint64_t seed);

/// Frequent itemsets of size 1..max_cardinality, mined separately within
/// the positive rows (rules with z = 1) and the negative rows (z = 0).
/// An itemset is frequent when it covers at least `gamma` of its class subset.
///
/// Depth-first over vertical bit sets, which enumerates the same itemsets as
/// FP-Growth. Throws SearchError when nothing is frequent.
CandidatePool mine_rules(const BinaryDataset& data, double gamma = 0.05, std::size_t max_cardinality = 2,
                         const std::optional<MiningSample>& sample = std::nullopt);

}  // namespace crl

#endif  // CRL_MINER_HPP
