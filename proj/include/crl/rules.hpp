#ifndef CRL_RULES_HPP
#define CRL_RULES_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crl/bitvector.hpp"
#include "crl/tabular.hpp"

namespace crl {

/// A conjunction of "feature j is set" conditions with an output class.
///
/// The raw cover is shared between copies, so rule lists can be copied and
/// rearranged cheaply during search.
struct Rule {
    std::vector<std::uint32_t> antecedent;  // sorted, no duplicates
    int z = 0;                              // predicted class, 0 or 1
    std::shared_ptr<const BitVector> cover; // rows where every condition holds

    const BitVector& raw_cover() const { return *cover; }
    /// True iff every condition holds on the instance's feature bits.
    bool matches(const BitVector& instance) const;
    bool same_key(const Rule& other) const { return z == other.z && antecedent == other.antecedent; }
    std::string describe(const std::vector<std::string>& feature_names) const;
};

using RuleList = std::vector<Rule>;

/// AND of the antecedent's feature columns; all-ones for an empty antecedent.
BitVector rule_raw_cover(const std::vector<std::uint32_t>& antecedent, const BinaryDataset& data);

/// Builds a rule with its cover cached against `data`. Sorts the antecedent
/// and rejects duplicate or out-of-range conditions and z outside {0,1}.
Rule make_rule(std::vector<std::uint32_t> antecedent, int z, const BinaryDataset& data);

/// Same antecedent and z, cover recomputed on another dataset.
Rule rebind(const Rule& rule, const BinaryDataset& data);
RuleList rebind(const RuleList& list, const BinaryDataset& data);

bool has_duplicate_rules(const RuleList& list);

/// Rows each rule actually answers under first-match semantics: entry m is
/// raw_cover(r_m) minus the union of the earlier raw covers.
std::vector<BitVector> exclusive_covers(const RuleList& list);

/// Index of the first rule matching the instance, if any.
std::optional<std::size_t> first_match(const RuleList& list, const BitVector& instance);

/// z of the first matching rule; nullopt means the instance is uncovered.
std::optional<int> predict_rule_list(const RuleList& list, const BitVector& instance);

}  // namespace crl

#endif  // CRL_RULES_HPP
