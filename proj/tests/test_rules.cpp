#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crl/companion.hpp"
#include "crl/error.hpp"
#include "crl/rules.hpp"
#include "oracles.hpp"

using namespace crl;
using namespace crl::testing;

namespace {

// 4 rows; f0 on rows {0,1}, f1 on rows {1,2}, f2 on row {3}
BinaryDataset small_data() {
    std::vector<BitVector> cols(3, BitVector(4));
    cols[0].set(0);
    cols[0].set(1);
    cols[1].set(1);
    cols[1].set(2);
    cols[2].set(3);
    return BinaryDataset(cols, {"f0", "f1", "f2"}, BitVector(4));
}

BitVector bits(std::size_t n, std::initializer_list<std::size_t> on) {
    BitVector b(n);
    for (std::size_t i : on) b.set(i);
    return b;
}

}  // namespace

TEST_CASE("raw cover examples") {
    const BinaryDataset d = small_data();
    CHECK(rule_raw_cover({0, 1}, d) == bits(4, {1}));
    CHECK(rule_raw_cover({0, 2}, d).none());
    CHECK(rule_raw_cover({1}, d) == d.feature(1));
}

TEST_CASE("make_rule validates its input") {
    const BinaryDataset d = small_data();
    CHECK_THROWS_AS(make_rule({5}, 1, d), DataError);
    CHECK_THROWS_AS(make_rule({1, 1}, 1, d), DataError);
    CHECK_THROWS_AS(make_rule({1}, 2, d), DataError);
    CHECK(make_rule({2, 0}, 1, d).antecedent == std::vector<std::uint32_t>{0, 2});
}

TEST_CASE("exclusive cover examples") {
    const BinaryDataset d = small_data();
    const RuleList list = {make_rule({0}, 1, d), make_rule({1}, 0, d)};
    const auto excl = exclusive_covers(list);
    CHECK(excl[0] == bits(4, {0, 1}));
    CHECK(excl[1] == bits(4, {2}));

    const RuleList shadowed = {make_rule({0}, 1, d), make_rule({0}, 0, d)};
    const auto ex2 = exclusive_covers(shadowed);
    CHECK(ex2[0] == shadowed[0].raw_cover());
    CHECK(ex2[1].none());
}

TEST_CASE("predict_rule_list examples") {
    const BinaryDataset d = small_data();
    const RuleList list = {make_rule({0}, 1, d), make_rule({1}, 0, d)};
    CHECK(predict_rule_list(list, d.row(1)) == 1);  // satisfies both
    CHECK(predict_rule_list(list, d.row(2)) == 0);  // only r2
    CHECK_FALSE(predict_rule_list(list, d.row(3)).has_value());
}

TEST_CASE("exclusive covers match per-row first-match on random lists") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const BinaryDataset d = random_dataset(rng, 1 + rng.below(70), 2 + rng.below(7));
        const RuleList list = random_list(rng, d, rng.below(5));
        const auto excl = exclusive_covers(list);
        BitVector any(d.n_rows());
        for (const Rule& r : list) any |= r.raw_cover();
        BitVector union_excl(d.n_rows());
        for (std::size_t m = 0; m < excl.size(); ++m) {
            CHECK(count_and(union_excl, excl[m]) == 0);
            union_excl |= excl[m];
        }
        CHECK(union_excl == any);
        for (std::size_t i = 0; i < d.n_rows(); ++i) {
            const auto first = first_match(list, d.row(i));
            for (std::size_t m = 0; m < excl.size(); ++m) CHECK(excl[m].test(i) == (first == m));
            if (first) CHECK(predict_rule_list(list, d.row(i)) == list[*first].z);
        }
        if (d.n_features() >= 2) {
            CHECK(rule_raw_cover({0, 1}, d) == (rule_raw_cover({0}, d) & rule_raw_cover({1}, d)));
        }
    }
}

TEST_CASE("companion level and full-list modes") {
    const BinaryDataset d = d4_data();
    const PredictionVector bb = d4_blackbox();
    const CompanionModel model = CompanionModel::fit(d4_list(d), d, bb);
    for (std::size_t i = 0; i < 4; ++i) {
        const int b = bb.preds.test(i) ? 1 : 0;
        const auto p0 = predict_companion(model, d.row(i), b, LevelMode{0});
        CHECK(p0.label == b);
        CHECK_FALSE(p0.rule.has_value());
        CHECK(predict_companion(model, d.row(i), b, AllBlackbox{}).label == b);

        const auto full = predict_companion(model, d.row(i), b, LevelMode{2});
        const auto rules = predict_rule_list(model.rules, d.row(i));
        CHECK(full.label == rules.value_or(b));
        CHECK(predict_companion(model, d.row(i), b, AllRules{}).label == full.label);
    }
    CHECK_THROWS_AS(predict_companion(model, d.row(0), 1, LevelMode{3}), UsageError);
}

TEST_CASE("level(m) over all rows reproduces the accuracy estimator") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const BinaryDataset d = random_dataset(rng, 40, 6);
        const PredictionVector bb = random_preds(rng, 40);
        const RuleList list = random_list(rng, d, 1 + rng.below(4));
        const CompanionModel model = CompanionModel::fit(list, d, bb);
        const TradeoffCurve curve = tradeoff_curve(list, d, bb);
        for (std::size_t m = 0; m <= list.size(); ++m) {
            std::size_t hits = 0;
            const auto preds = predict_dataset(model, d, bb, LevelMode{m});
            for (std::size_t i = 0; i < 40; ++i) hits += preds[i].label == (d.labels().test(i) ? 1 : 0);
            CHECK(hits == curve.points[m].correct);
        }
    }
}

TEST_CASE("stochastic mode at t = T_m agrees with level(m) for every epsilon") {
    const BinaryDataset d = d4_data();
    const PredictionVector bb = d4_blackbox();
    const CompanionModel model = CompanionModel::fit(d4_list(d), d, bb);
    for (std::size_t m = 0; m < model.transparency.size(); ++m) {
        for (double eps : {0.0, 0.1, 0.5, 0.999}) {
            for (std::size_t i = 0; i < 4; ++i) {
                const int b = bb.preds.test(i) ? 1 : 0;
                const auto s = predict_companion(model, d.row(i), b, StochasticMode{model.transparency[m]}, eps);
                const auto l = predict_companion(model, d.row(i), b, LevelMode{m});
                CHECK(s.label == l.label);
                CHECK(s.rule == l.rule);
            }
        }
    }
}

TEST_CASE("stochastic mode answers the band with the covering rule") {
    const BinaryDataset d = d4_data();
    const PredictionVector bb = d4_blackbox();
    const CompanionModel model = CompanionModel::fit(d4_list(d), d, bb);  // T = 0, 0.5, 0.75
    // row 2 is answered by r2 only; at t = 0.625, q = 0.5
    const auto yes = predict_companion(model, d.row(2), 0, StochasticMode{0.625}, 0.2);
    CHECK(yes.rule == std::optional<std::size_t>(1));
    CHECK(yes.label == 1);
    const auto no = predict_companion(model, d.row(2), 0, StochasticMode{0.625}, 0.7);
    CHECK_FALSE(no.rule.has_value());
    CHECK(no.label == 0);
    CHECK_THROWS_WITH_AS(predict_companion(model, d.row(0), 1, StochasticMode{0.8}),
                         doctest::Contains("transparency exceeds list coverage"), UsageError);
}

TEST_CASE("stochastic expected transparency converges to t") {
    Rng data_rng(4);
    const BinaryDataset d = random_dataset(data_rng, 60, 6);
    const PredictionVector bb = random_preds(data_rng, 60);
    const CompanionModel model = CompanionModel::fit(random_list(data_rng, d, 4), d, bb);
    const double top = model.transparency.back();
    std::vector<BitVector> rows;
    for (std::size_t i = 0; i < d.n_rows(); ++i) rows.push_back(d.row(i));
    Rng rng(77);
    for (double frac : {0.1, 0.35, 0.6, 0.9}) {
        const double t = frac * top;
        std::size_t by_rules = 0;
        const std::size_t draws = 100000;
        for (std::size_t k = 0; k < draws; ++k) {
            const std::size_t i = rng.below(d.n_rows());
            by_rules += predict_companion(model, rows[i], 0, StochasticMode{t}, rng.uniform()).rule.has_value();
        }
        CHECK(std::abs(static_cast<double>(by_rules) / draws - t) <= 0.01);
    }
}
