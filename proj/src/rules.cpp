#include "crl/rules.hpp"

#include <algorithm>

#include "crl/error.hpp"

namespace crl {

bool Rule::matches(const BitVector& instance) const {
    return std::all_of(antecedent.begin(), antecedent.end(),
                       [&](std::uint32_t j) { return j < instance.size() && instance.test(j); });
}

std::string Rule::describe(const std::vector<std::string>& feature_names) const {
    std::string out;
    for (std::size_t i = 0; i < antecedent.size(); ++i) {
        if (i > 0) out += " AND ";
        out += antecedent[i] < feature_names.size() ? feature_names[antecedent[i]]
                                                    : "#" + std::to_string(antecedent[i]);
    }
    return out + " => " + std::to_string(z);
}

BitVector rule_raw_cover(const std::vector<std::uint32_t>& antecedent, const BinaryDataset& data) {
    BitVector cover(data.n_rows(), true);
    for (std::uint32_t j : antecedent) cover &= data.feature(j);
    return cover;
}

Rule make_rule(std::vector<std::uint32_t> antecedent, int z, const BinaryDataset& data) {
    if (z != 0 && z != 1) throw DataError("rule output must be 0 or 1");
    std::sort(antecedent.begin(), antecedent.end());
    if (std::adjacent_find(antecedent.begin(), antecedent.end()) != antecedent.end()) {
        throw DataError("rule antecedent repeats a condition");
    }
    for (std::uint32_t j : antecedent) {
        if (j >= data.n_features()) throw DataError("condition index " + std::to_string(j) + " out of range");
    }
    auto cover = std::make_shared<const BitVector>(rule_raw_cover(antecedent, data));
    return Rule{std::move(antecedent), z, std::move(cover)};
}

Rule rebind(const Rule& rule, const BinaryDataset& data) { return make_rule(rule.antecedent, rule.z, data); }

RuleList rebind(const RuleList& list, const BinaryDataset& data) {
    RuleList out;
    out.reserve(list.size());
    for (const Rule& r : list) out.push_back(rebind(r, data));
    return out;
}

bool has_duplicate_rules(const RuleList& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
            if (list[i].same_key(list[j])) return true;
        }
    }
    return false;
}

std::vector<BitVector> exclusive_covers(const RuleList& list) {
    std::vector<BitVector> out;
    if (list.empty()) return out;
    out.reserve(list.size());
    BitVector covered(list.front().raw_cover().size());
    for (const Rule& r : list) {
        BitVector excl = r.raw_cover();
        excl.and_not(covered);
        covered |= r.raw_cover();
        out.push_back(std::move(excl));
    }
    return out;
}

std::optional<std::size_t> first_match(const RuleList& list, const BitVector& instance) {
    for (std::size_t m = 0; m < list.size(); ++m) {
        if (list[m].matches(instance)) return m;
    }
    return std::nullopt;
}

std::optional<int> predict_rule_list(const RuleList& list, const BitVector& instance) {
    if (auto m = first_match(list, instance)) return list[*m].z;
    return std::nullopt;
}

}  // namespace crl
