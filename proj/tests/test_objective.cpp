#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "crl/companion.hpp"
#include "crl/error.hpp"
#include "crl/objective.hpp"
#include "oracles.hpp"

using namespace crl;
using namespace crl::testing;

namespace {

const std::vector<std::pair<double, double>> kReferenceCurve = {{0, 0.92}, {0.4, 0.90}, {0.7, 0.84}, {1.0, 0.75}};

}  // namespace

TEST_CASE("transparency estimator on the 4-row fixture") {
    const BinaryDataset d = d4_data();
    const RuleList list = d4_list(d);
    CHECK(transparency_hat(list, d, 0) == 0.0);
    CHECK(transparency_hat(list, d, 1) == 0.5);
    CHECK(transparency_hat(list, d, 2) == 0.75);
}

TEST_CASE("accuracy estimator on the 4-row fixture") {
    const BinaryDataset d = d4_data();
    const PredictionVector bb = d4_blackbox();
    const RuleList list = d4_list(d);
    CHECK(accuracy_hat(list, d, bb, 0) == 0.5);
    CHECK(accuracy_hat(list, d, bb, 1) == 0.25);
    CHECK(accuracy_hat(list, d, bb, 2) == 0.5);
    PredictionVector wrong{BitVector(3), "short"};
    CHECK_THROWS_AS(accuracy_hat(list, d, wrong, 1), DataError);
}

TEST_CASE("curve, AUTAC and objective on the 4-row fixture") {
    const BinaryDataset d = d4_data();
    const PredictionVector bb = d4_blackbox();
    const TradeoffCurve c = tradeoff_curve(d4_list(d), d, bb);
    REQUIRE(c.points.size() == 3);
    const std::vector<std::pair<double, double>> expected = {{0, 0.5}, {0.5, 0.25}, {0.75, 0.5}};
    for (std::size_t m = 0; m < 3; ++m) {
        CHECK(c.points[m].transparency == expected[m].first);
        CHECK(c.points[m].accuracy == expected[m].second);
    }
    CHECK(c.points[1].exclusive_support == 2);
    CHECK(c.points[2].exclusive_support == 1);
    CHECK(c.points[1].rule_part_accuracy() == 0.5);
    CHECK(autac_hat(c) == 0.28125);

    const ObjectiveValue o = objective(d4_list(d), d, bb, 0.01);
    CHECK(o.objective == doctest::Approx(0.26125).epsilon(1e-15));
    CHECK(o.penalty == 0.02);
    CHECK(objective(d4_list(d), d, bb, 0.0).objective == o.autac);
}

TEST_CASE("empty list and a four-point reference curve") {
    const BinaryDataset d = d4_data();
    const TradeoffCurve empty = tradeoff_curve({}, d, d4_blackbox());
    REQUIRE(empty.points.size() == 1);
    CHECK(empty.points[0].accuracy == 0.5);
    CHECK(autac_hat(empty) == 0.0);

    const TradeoffCurve fig = TradeoffCurve::from_coordinates(kReferenceCurve);
    CHECK(std::abs(autac_hat(fig) - 0.8635) <= 1e-12);
}

TEST_CASE("appending a rule that answers nothing costs exactly alpha") {
    const BinaryDataset d = d4_data();
    const PredictionVector bb = d4_blackbox();
    RuleList list = d4_list(d);
    const ObjectiveValue before = objective(list, d, bb, 0.01);
    list.push_back(make_rule({0, 1}, 0, d));  // raw cover {1}, already covered
    const ObjectiveValue after = objective(list, d, bb, 0.01);
    CHECK(after.autac == before.autac);
    CHECK(after.penalty - before.penalty == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(std::abs((before.objective - after.objective) - 0.01) <= 1e-15);
}

TEST_CASE("level_for_t") {
    const std::vector<double> fig = {0.0, 0.4, 0.7, 1.0};
    const LevelChoice mid = level_for_t(fig, 0.55);
    CHECK(mid.level == 1);
    CHECK(mid.q == doctest::Approx(0.5).epsilon(1e-12));
    const LevelChoice edge = level_for_t(fig, 0.7);
    CHECK(edge.level == 2);
    CHECK(edge.q == 0.0);
    const LevelChoice zero = level_for_t(fig, 0.0);
    CHECK(zero.level == 0);
    CHECK(zero.q == 0.0);
    CHECK_THROWS_WITH_AS(level_for_t(std::vector<double>{0.0, 0.4, 0.7}, 0.8),
                         doctest::Contains("transparency exceeds list coverage"), UsageError);

    // zero-width levels are absorbed into m^t
    const LevelChoice flat = level_for_t(std::vector<double>{0.0, 0.4, 0.4, 0.7}, 0.55);
    CHECK(flat.level == 2);
    CHECK(flat.next == 3);
    CHECK(flat.q == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("estimators match a per-row simulation and the naive recomputation") {
    Rng rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.below(64);
        const BinaryDataset d = random_dataset(rng, n, 1 + rng.below(8));
        const PredictionVector bb = random_preds(rng, n);
        const RuleList list = random_list(rng, d, rng.below(std::min<std::size_t>(4, 2 * d.n_features())), 2);
        const TradeoffCurve c = tradeoff_curve(list, d, bb);
        const auto sim = simulate_levels(list, d, bb);
        REQUIRE(c.points.size() == sim.size());
        for (std::size_t m = 0; m < sim.size(); ++m) {
            CHECK(c.points[m].covered == sim[m].covered);
            CHECK(c.points[m].correct == sim[m].correct);
            CHECK(c.points[m].transparency == transparency_hat(list, d, m));
            CHECK(c.points[m].accuracy == accuracy_hat(list, d, bb, m));
        }
        const double autac = autac_hat(c);
        CHECK(autac == simulated_autac(sim, n));
        CHECK(autac >= 0.0);
        CHECK(autac <= c.points.back().transparency + 1e-15);
        for (std::size_t m = 1; m < c.points.size(); ++m) {
            CHECK(c.points[m].transparency >= c.points[m - 1].transparency);
        }
    }
}

TEST_CASE("row permutation leaves every estimate bit-identical") {
    Rng rng(30);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 10 + rng.below(80);
        const BinaryDataset d = random_dataset(rng, n, 6);
        const PredictionVector bb = random_preds(rng, n);
        const RuleList list = random_list(rng, d, 1 + rng.below(4));
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        const BinaryDataset pd = d.subset(perm);
        const PredictionVector pbb = bb.subset(perm);
        const TradeoffCurve a = tradeoff_curve(list, d, bb);
        const TradeoffCurve b = tradeoff_curve(rebind(list, pd), pd, pbb);
        for (std::size_t m = 0; m < a.points.size(); ++m) {
            CHECK(a.points[m].transparency == b.points[m].transparency);
            CHECK(a.points[m].accuracy == b.points[m].accuracy);
        }
        CHECK(autac_hat(a) == autac_hat(b));
        CHECK(objective(list, d, bb, 0.003).objective == objective(rebind(list, pd), pd, pbb, 0.003).objective);
    }
}

TEST_CASE("standalone accuracy uses the majority label of uncovered rows") {
    const BinaryDataset d = d4_data();
    const CurveEvaluator eval(d, d4_blackbox());
    // r1 covers {0,1}: 1 hit; uncovered {2,3} has one positive -> default scores 1
    CHECK(eval.standalone_accuracy({make_rule({0}, 1, d)}) == 0.5);
    // empty list: majority of all labels (2 of 4)
    CHECK(eval.standalone_accuracy({}) == 0.5);
    // r = ({f2}, 1) covers {0,2} perfectly; uncovered {1,3} are negatives
    CHECK(eval.standalone_accuracy({make_rule({2}, 1, d)}) == 1.0);
}

TEST_CASE("Monte Carlo accuracy at T_m converges to A_m") {
    Rng data_rng(40);
    const BinaryDataset d = random_dataset(data_rng, 50, 6);
    const PredictionVector bb = random_preds(data_rng, 50);
    const RuleList list = random_list(data_rng, d, 3);
    const CompanionModel model = CompanionModel::fit(list, d, bb);
    const TradeoffCurve c = tradeoff_curve(list, d, bb);
    std::vector<BitVector> rows;
    for (std::size_t i = 0; i < 50; ++i) rows.push_back(d.row(i));
    Rng rng(41);
    for (std::size_t m = 0; m < c.points.size(); ++m) {
        std::size_t hits = 0;
        const std::size_t draws = 100000;
        for (std::size_t k = 0; k < draws; ++k) {
            const std::size_t i = rng.below(50);
            const int b = bb.preds.test(i) ? 1 : 0;
            const auto p = predict_companion(model, rows[i], b, StochasticMode{c.points[m].transparency}, rng.uniform());
            hits += p.label == (d.labels().test(i) ? 1 : 0);
        }
        CHECK(std::abs(static_cast<double>(hits) / draws - c.points[m].accuracy) <= 0.01);
    }
}
