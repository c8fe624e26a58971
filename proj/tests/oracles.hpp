// Test-only reference implementations. Everything here works row by row
// with plain loops so it stays independent of the bit-vector code paths
// under test.
#ifndef CRL_TESTS_ORACLES_HPP
#define CRL_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "crl/miner.hpp"
#include "crl/objective.hpp"
#include "crl/random.hpp"
#include "crl/rules.hpp"
#include "crl/tabular.hpp"

namespace crl::testing {

/// Rows f = (1,0,1),(1,1,0),(0,1,1),(0,0,0); y = (1,0,1,0); black box (1,0,0,1).
inline BinaryDataset d4_data() {
    const std::vector<std::vector<int>> rows = {{1, 0, 1}, {1, 1, 0}, {0, 1, 1}, {0, 0, 0}};
    std::vector<BitVector> cols(3, BitVector(4));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 3; ++j) cols[j].set(i, rows[i][j] == 1);
    }
    BitVector y(4);
    y.set(0);
    y.set(2);
    return BinaryDataset(cols, {"f0", "f1", "f2"}, y);
}

inline PredictionVector d4_blackbox() {
    PredictionVector p{BitVector(4), "d4"};
    p.preds.set(0);
    p.preds.set(3);
    return p;
}

/// r1 = ({f0}, 1), r2 = ({f1}, 1)
inline RuleList d4_list(const BinaryDataset& data) { return {make_rule({0}, 1, data), make_rule({1}, 1, data)}; }

inline BinaryDataset random_dataset(Rng& rng, std::size_t n, std::size_t d, double density = 0.4) {
    std::vector<BitVector> cols(d, BitVector(n));
    std::vector<std::string> names;
    for (std::size_t j = 0; j < d; ++j) {
        names.push_back("f" + std::to_string(j));
        for (std::size_t i = 0; i < n; ++i) cols[j].set(i, rng.uniform() < density);
    }
    BitVector y(n);
    for (std::size_t i = 0; i < n; ++i) y.set(i, rng.uniform() < 0.5);
    return BinaryDataset(std::move(cols), std::move(names), std::move(y));
}

inline PredictionVector random_preds(Rng& rng, std::size_t n) {
    PredictionVector p{BitVector(n), "random"};
    for (std::size_t i = 0; i < n; ++i) p.preds.set(i, rng.uniform() < 0.5);
    return p;
}

inline RuleList random_list(Rng& rng, const BinaryDataset& data, std::size_t m, std::size_t max_card = 2) {
    RuleList list;
    while (list.size() < m) {
        const std::size_t card = 1 + rng.below(std::min(max_card, data.n_features()));
        std::set<std::uint32_t> ante;
        while (ante.size() < card) ante.insert(static_cast<std::uint32_t>(rng.below(data.n_features())));
        Rule r = make_rule({ante.begin(), ante.end()}, static_cast<int>(rng.below(2)), data);
        if (std::none_of(list.begin(), list.end(), [&](const Rule& o) { return o.same_key(r); })) list.push_back(r);
    }
    return list;
}

inline bool row_satisfies(const BinaryDataset& data, std::size_t row, const std::vector<std::uint32_t>& ante) {
    for (std::uint32_t j : ante) {
        if (!data.feature(j).test(row)) return false;
    }
    return true;
}

/// Per-level integer counts from a first-match simulation.
struct SimulatedLevel {
    std::size_t covered = 0;
    std::size_t correct = 0;
};

inline std::vector<SimulatedLevel> simulate_levels(const RuleList& list, const BinaryDataset& data,
                                                   const PredictionVector& preds) {
    std::vector<SimulatedLevel> levels(list.size() + 1);
    for (std::size_t m = 0; m <= list.size(); ++m) {
        for (std::size_t i = 0; i < data.n_rows(); ++i) {
            const int y = data.labels().test(i) ? 1 : 0;
            int answer = preds.preds.test(i) ? 1 : 0;
            for (std::size_t k = 0; k < m; ++k) {
                if (row_satisfies(data, i, list[k].antecedent)) {
                    answer = list[k].z;
                    ++levels[m].covered;
                    break;
                }
            }
            if (answer == y) ++levels[m].correct;
        }
    }
    return levels;
}

inline double simulated_autac(const std::vector<SimulatedLevel>& levels, std::size_t n) {
    const double dn = static_cast<double>(n);
    double area = 0.0;
    for (std::size_t m = 1; m < levels.size(); ++m) {
        const double t0 = static_cast<double>(levels[m - 1].covered) / dn;
        const double t1 = static_cast<double>(levels[m].covered) / dn;
        const double a0 = static_cast<double>(levels[m - 1].correct) / dn;
        const double a1 = static_cast<double>(levels[m].correct) / dn;
        area += 0.5 * (a1 + a0) * (t1 - t0);
    }
    return area;
}

/// Exhaustive class-conditional enumeration of itemsets up to `max_card`.
/// Key: (antecedent, z) -> support count within the class.
inline std::map<std::pair<std::vector<std::uint32_t>, int>, std::size_t> brute_force_mine(const BinaryDataset& data,
                                                                                         double gamma,
                                                                                         std::size_t max_card) {
    std::map<std::pair<std::vector<std::uint32_t>, int>, std::size_t> out;
    const std::size_t d = data.n_features();
    std::vector<std::vector<std::uint32_t>> itemsets;
    for (std::uint32_t a = 0; a < d; ++a) {
        itemsets.push_back({a});
        if (max_card >= 2) {
            for (std::uint32_t b = a + 1; b < d; ++b) itemsets.push_back({a, b});
        }
    }
    for (int z = 0; z <= 1; ++z) {
        std::size_t class_size = 0;
        for (std::size_t i = 0; i < data.n_rows(); ++i) class_size += (data.labels().test(i) ? 1 : 0) == z;
        for (const auto& items : itemsets) {
            std::size_t count = 0;
            for (std::size_t i = 0; i < data.n_rows(); ++i) {
                if ((data.labels().test(i) ? 1 : 0) == z && row_satisfies(data, i, items)) ++count;
            }
            if (count > 0 && static_cast<double>(count) / static_cast<double>(class_size) >= gamma) {
                out[{items, z}] = count;
            }
        }
    }
    return out;
}

/// Best ordered list of at most `max_len` distinct pool rules by the
/// training objective AUTAC - alpha * M.
inline RuleList exhaustive_best_list(const CandidatePool& pool, const CurveEvaluator& eval, double alpha,
                                     std::size_t max_len = 3) {
    RuleList best;
    double best_obj = 0.0;  // empty list
    RuleList current;
    std::vector<bool> used(pool.size(), false);
    auto recurse = [&](auto&& self) -> void {
        if (!current.empty()) {
            const double obj = autac_hat(eval.curve(current)) - alpha * static_cast<double>(current.size());
            if (obj > best_obj) {
                best_obj = obj;
                best = current;
            }
        }
        if (current.size() == max_len) return;
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            current.push_back(pool.rules[j]);
            self(self);
            current.pop_back();
            used[j] = false;
        }
    };
    recurse(recurse);
    return best;
}

}  // namespace crl::testing

#endif  // CRL_TESTS_ORACLES_HPP
