#ifndef CRL_OBJECTIVE_HPP
#define CRL_OBJECTIVE_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "crl/bitvector.hpp"
#include "crl/rules.hpp"
#include "crl/tabular.hpp"

namespace crl {

/// One point (T_m, A_m) of the transparency-accuracy curve, with the integer
/// counts it was derived from.
struct CurvePoint {
    std::size_t covered = 0;            // |S_m|
    std::size_t correct = 0;            // rule-part hits in S_m + black-box hits outside
    std::size_t exclusive_support = 0;  // |S_m \ S_{m-1}|
    std::size_t exclusive_correct = 0;  // hits of rule m on its exclusive cover
    double transparency = 0.0;
    double accuracy = 0.0;

    /// Accuracy of rule m on the rows it answers; NaN when it answers none.
    double rule_part_accuracy() const;
};

struct TradeoffCurve {
    std::vector<CurvePoint> points;  // levels 0..M
    std::size_t n_rows = 0;          // 0 for curves built from bare coordinates

    std::size_t rules() const { return points.empty() ? 0 : points.size() - 1; }
    std::vector<double> transparencies() const;

    static TradeoffCurve from_coordinates(std::span<const std::pair<double, double>> coords);
};

/// Scores rule lists against fixed labels and black-box predictions.
///
/// Everything is a popcount over cached covers: one prefix sweep per list.
class CurveEvaluator {
 public:
    CurveEvaluator(BitVector labels, const BitVector& blackbox);
    CurveEvaluator(const BinaryDataset& data, const PredictionVector& preds);

    std::size_t n_rows() const { return labels_.size(); }
    std::size_t blackbox_correct() const { return blackbox_correct_total_; }

    TradeoffCurve curve(const RuleList& list) const;
    /// Accuracy of the list on its own, with the majority label of the
    /// uncovered rows as default prediction. Ignores the black box.
    double standalone_accuracy(const RuleList& list) const;

 private:
    BitVector labels_;
    BitVector blackbox_correct_;
    std::size_t positives_ = 0;
    std::size_t blackbox_correct_total_ = 0;
};

TradeoffCurve tradeoff_curve(const RuleList& list, const BinaryDataset& data, const PredictionVector& preds);

/// T_m recomputed from scratch: |union of first m raw covers| / N.
double transparency_hat(const RuleList& list, const BinaryDataset& data, std::size_t m);
/// A_m recomputed from scratch by first-match over rules 1..m, black box elsewhere.
double accuracy_hat(const RuleList& list, const BinaryDataset& data, const PredictionVector& preds, std::size_t m);

/// Trapezoid area over consecutive curve points; 0 for a single point.
double autac_hat(const TradeoffCurve& curve);

struct ObjectiveValue {
    double autac = 0.0;
    double penalty = 0.0;
    double objective = 0.0;
    double alpha = 0.0;
    std::size_t rules = 0;
};

ObjectiveValue make_objective(double autac, double alpha, std::size_t rules);
ObjectiveValue objective(const RuleList& list, const BinaryDataset& data, const PredictionVector& preds, double alpha);

/// Transparency level for a Stochastic CRL at transparency t.
struct LevelChoice {
    std::size_t level = 0;  // m^t: largest m with T_m <= t
    double q = 0.0;         // probability of also answering with the next distinct level
    std::size_t next = 0;   // first level with T strictly above T_{m^t}; == level when none
};

/// `transparency` is T_0..T_M (non-decreasing). Throws UsageError when t is
/// negative or exceeds T_M. Levels of zero width are absorbed into m^t.
LevelChoice level_for_t(std::span<const double> transparency, double t);
LevelChoice level_for_t(const TradeoffCurve& curve, double t);

}  // namespace crl

#endif  // CRL_OBJECTIVE_HPP
