#include "crl/miner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crl/error.hpp"
#include "crl/format.hpp"
#include "crl/random.hpp"

namespace crl {

namespace {

struct Itemset {
    std::vector<std::uint32_t> items;
    int z = 0;
    std::size_t count = 0;
    std::size_t class_size = 0;
};

class ClassMiner {
 public:
    ClassMiner(const BinaryDataset& data, BitVector class_rows, int z, double gamma, std::size_t max_card)
        : data_(data), class_rows_(std::move(class_rows)), z_(z), gamma_(gamma), max_card_(max_card) {
        class_size_ = class_rows_.count();
    }

    void mine(std::vector<Itemset>& out) {
        std::vector<std::uint32_t> frequent;
        std::vector<BitVector> tids;
        for (std::uint32_t j = 0; j < data_.n_features(); ++j) {
            BitVector tid = data_.feature(j) & class_rows_;
            const std::size_t count = tid.count();
            if (!is_frequent(count)) continue;
            frequent.push_back(j);
            tids.push_back(std::move(tid));
        }
        std::vector<std::uint32_t> prefix;
        extend(prefix, frequent, tids, out);
    }

 private:
    bool is_frequent(std::size_t count) const {
        return count > 0 && static_cast<double>(count) / static_cast<double>(class_size_) >= gamma_;
    }

    // `items` are frequent extensions of `prefix`, `tids` their row sets within the class
    void extend(std::vector<std::uint32_t>& prefix, const std::vector<std::uint32_t>& items,
                const std::vector<BitVector>& tids, std::vector<Itemset>& out) {
        for (std::size_t a = 0; a < items.size(); ++a) {
            prefix.push_back(items[a]);
            out.push_back(Itemset{prefix, z_, tids[a].count(), class_size_});
            if (prefix.size() < max_card_) {
                std::vector<std::uint32_t> next_items;
                std::vector<BitVector> next_tids;
                for (std::size_t b = a + 1; b < items.size(); ++b) {
                    BitVector tid = tids[a] & tids[b];
                    if (!is_frequent(tid.count())) continue;
                    next_items.push_back(items[b]);
                    next_tids.push_back(std::move(tid));
                }
                if (!next_items.empty()) extend(prefix, next_items, next_tids, out);
            }
            prefix.pop_back();
        }
    }

    const BinaryDataset& data_;
    BitVector class_rows_;
    int z_;
    double gamma_;
    std::size_t max_card_;
    std::size_t class_size_ = 0;
};

}  // namespace

MiningSample subsample_for_mining(const BinaryDataset& data, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw UsageError("mining fraction must lie in (0, 1]");
    const std::size_t n = data.n_rows();
    const auto keep = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
    if (keep == 0) throw UsageError("mining fraction selects no rows");
    MiningSample sample{BitVector(n)};
    if (keep == n) {
        sample.rows.flip();
        return sample;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < keep; ++i) {
        std::swap(order[i], order[i + rng.below(n - i)]);
        sample.rows.set(order[i]);
    }
    return sample;
}

CandidatePool mine_rules(const BinaryDataset& data, double gamma, std::size_t max_cardinality,
                         const std::optional<MiningSample>& sample) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw UsageError("gamma must lie in (0, 1]");
    if (max_cardinality < 1) throw UsageError("max cardinality must be at least 1");
    BitVector rows = sample ? sample->rows : BitVector(data.n_rows(), true);
    if (rows.size() != data.n_rows()) throw DataError("mining sample does not match dataset size");

    const BitVector positives = rows & data.labels();
    BitVector negatives = rows;
    negatives.and_not(data.labels());
    if (positives.none() || negatives.none()) throw DataError("mining requires both classes in the mined rows");

    std::vector<Itemset> found;
    ClassMiner(data, positives, 1, gamma, max_cardinality).mine(found);
    ClassMiner(data, negatives, 0, gamma, max_cardinality).mine(found);
    if (found.empty()) {
        throw SearchError("empty candidate pool: no itemset reaches minimum support " + format_double(gamma) +
                          "; retry with a lower gamma");
    }
    std::sort(found.begin(), found.end(), [](const Itemset& a, const Itemset& b) {
        if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
        if (a.items != b.items) return a.items < b.items;
        return a.z < b.z;
    });

    CandidatePool pool;
    pool.gamma = gamma;
    pool.max_cardinality = max_cardinality;
    for (Itemset& s : found) {
        pool.class_support.push_back(static_cast<double>(s.count) / static_cast<double>(s.class_size));
        pool.support_count.push_back(s.count);
        pool.rules.push_back(make_rule(std::move(s.items), s.z, data));
    }
    return pool;
}

}  // namespace crl
