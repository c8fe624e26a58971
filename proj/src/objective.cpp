#include "crl/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crl/error.hpp"

namespace crl {

namespace {

// tolerance for user-supplied t against T values computed as count / N
constexpr double kLevelTolerance = 1e-12;

void check_aligned(const BinaryDataset& data, const PredictionVector& preds) {
    if (preds.size() != data.n_rows()) {
        throw DataError("black-box predictions (" + std::to_string(preds.size()) + ") not aligned with dataset (" +
                        std::to_string(data.n_rows()) + " rows)");
    }
}

}  // namespace

double CurvePoint::rule_part_accuracy() const {
    if (exclusive_support == 0) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(exclusive_correct) / static_cast<double>(exclusive_support);
}

std::vector<double> TradeoffCurve::transparencies() const {
    std::vector<double> t;
    t.reserve(points.size());
    for (const CurvePoint& p : points) t.push_back(p.transparency);
    return t;
}

TradeoffCurve TradeoffCurve::from_coordinates(std::span<const std::pair<double, double>> coords) {
    TradeoffCurve curve;
    for (const auto& [t, a] : coords) {
        CurvePoint p;
        p.transparency = t;
        p.accuracy = a;
        curve.points.push_back(p);
    }
    return curve;
}

CurveEvaluator::CurveEvaluator(BitVector labels, const BitVector& blackbox) : labels_(std::move(labels)) {
    if (blackbox.size() != labels_.size()) throw DataError("black-box predictions not aligned with labels");
    blackbox_correct_ = ~(labels_ ^ blackbox);
    positives_ = labels_.count();
    blackbox_correct_total_ = blackbox_correct_.count();
}

CurveEvaluator::CurveEvaluator(const BinaryDataset& data, const PredictionVector& preds)
    : CurveEvaluator(data.labels(), preds.preds) {
    check_aligned(data, preds);
}

TradeoffCurve CurveEvaluator::curve(const RuleList& list) const {
    const std::size_t n = labels_.size();
    const double denom = static_cast<double>(n);
    TradeoffCurve out;
    out.n_rows = n;
    out.points.reserve(list.size() + 1);

    CurvePoint level0;
    level0.correct = blackbox_correct_total_;
    level0.accuracy = n == 0 ? 0.0 : static_cast<double>(level0.correct) / denom;
    out.points.push_back(level0);

    BitVector covered(n);
    std::size_t rule_hits = 0;      // rule-part correct in S_m
    std::size_t blackbox_lost = 0;  // black-box hits inside S_m
    for (const Rule& rule : list) {
        BitVector excl = rule.raw_cover();
        excl.and_not(covered);
        covered |= rule.raw_cover();

        CurvePoint p;
        p.exclusive_support = excl.count();
        const std::size_t pos = count_and(excl, labels_);
        p.exclusive_correct = rule.z == 1 ? pos : p.exclusive_support - pos;
        rule_hits += p.exclusive_correct;
        blackbox_lost += count_and(excl, blackbox_correct_);

        p.covered = out.points.back().covered + p.exclusive_support;
        p.correct = rule_hits + (blackbox_correct_total_ - blackbox_lost);
        p.transparency = static_cast<double>(p.covered) / denom;
        p.accuracy = static_cast<double>(p.correct) / denom;
        out.points.push_back(p);
    }
    return out;
}

double CurveEvaluator::standalone_accuracy(const RuleList& list) const {
    const std::size_t n = labels_.size();
    if (n == 0) return 0.0;
    const TradeoffCurve c = curve(list);
    std::size_t hits = 0;
    BitVector covered(n);
    for (std::size_t m = 0; m < list.size(); ++m) {
        hits += c.points[m + 1].exclusive_correct;
        covered |= list[m].raw_cover();
    }
    const std::size_t uncovered = n - covered.count();
    const std::size_t uncovered_pos = positives_ - count_and(covered, labels_);
    hits += std::max(uncovered_pos, uncovered - uncovered_pos);
    return static_cast<double>(hits) / static_cast<double>(n);
}

TradeoffCurve tradeoff_curve(const RuleList& list, const BinaryDataset& data, const PredictionVector& preds) {
    return CurveEvaluator(data, preds).curve(list);
}

double transparency_hat(const RuleList& list, const BinaryDataset& data, std::size_t m) {
    if (m > list.size()) throw UsageError("level exceeds rule count");
    BitVector covered(data.n_rows());
    for (std::size_t k = 0; k < m; ++k) covered |= list[k].raw_cover();
    return static_cast<double>(covered.count()) / static_cast<double>(data.n_rows());
}

double accuracy_hat(const RuleList& list, const BinaryDataset& data, const PredictionVector& preds, std::size_t m) {
    check_aligned(data, preds);
    if (m > list.size()) throw UsageError("level exceeds rule count");
    const BitVector& y = data.labels();
    BitVector covered(data.n_rows());
    std::size_t hits = 0;
    for (std::size_t k = 0; k < m; ++k) {
        BitVector excl = list[k].raw_cover();
        excl.and_not(covered);
        covered |= list[k].raw_cover();
        hits += list[k].z == 1 ? count_and(excl, y) : count_and_not(excl, y);
    }
    const BitVector agree = ~(y ^ preds.preds);
    hits += count_and_not(agree, covered);
    return static_cast<double>(hits) / static_cast<double>(data.n_rows());
}

double autac_hat(const TradeoffCurve& curve) {
    double area = 0.0;
    for (std::size_t m = 1; m < curve.points.size(); ++m) {
        const CurvePoint& a = curve.points[m - 1];
        const CurvePoint& b = curve.points[m];
        area += 0.5 * (b.accuracy + a.accuracy) * (b.transparency - a.transparency);
    }
    return area;
}

ObjectiveValue make_objective(double autac, double alpha, std::size_t rules) {
    const double penalty = alpha * static_cast<double>(rules);
    return ObjectiveValue{autac, penalty, autac - penalty, alpha, rules};
}

ObjectiveValue objective(const RuleList& list, const BinaryDataset& data, const PredictionVector& preds, double alpha) {
    if (alpha < 0.0) throw UsageError("alpha must be non-negative");
    return make_objective(autac_hat(tradeoff_curve(list, data, preds)), alpha, list.size());
}

LevelChoice level_for_t(std::span<const double> transparency, double t) {
    if (transparency.empty()) throw UsageError("empty transparency sequence");
    const double top = transparency.back();
    if (t < -kLevelTolerance) throw UsageError("transparency must be non-negative");
    if (t > top + kLevelTolerance) {
        throw UsageError("transparency exceeds list coverage (t = " + std::to_string(t) +
                         ", maximum " + std::to_string(top) + ")");
    }
    LevelChoice choice;
    for (std::size_t m = 0; m < transparency.size(); ++m) {
        if (transparency[m] <= t + kLevelTolerance) choice.level = m;
    }
    choice.next = choice.level;
    if (choice.level + 1 < transparency.size()) {
        choice.next = choice.level + 1;
        const double lo = transparency[choice.level];
        const double hi = transparency[choice.next];
        choice.q = std::clamp((t - lo) / (hi - lo), 0.0, 1.0);
    }
    return choice;
}

LevelChoice level_for_t(const TradeoffCurve& curve, double t) {
    const std::vector<double> ts = curve.transparencies();
    return level_for_t(ts, t);
}

}  // namespace crl
