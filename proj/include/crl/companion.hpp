#ifndef CRL_COMPANION_HPP
#define CRL_COMPANION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "crl/objective.hpp"
#include "crl/rules.hpp"
#include "crl/tabular.hpp"

namespace crl {

/// A rule list deployed next to a black box. `transparency` holds T_0..T_M
/// as measured on the training data; the stochastic mode reads its levels
/// from there.
struct CompanionModel {
    RuleList rules;
    std::vector<double> transparency;

    static CompanionModel fit(RuleList rules, const BinaryDataset& data, const PredictionVector& preds);
};

/// Rules 1..m answer what they cover; the black box answers the rest.
struct LevelMode {
    std::size_t m = 0;
};
/// Stochastic CRL at expected transparency t.
struct StochasticMode {
    double t = 0.0;
};
struct AllBlackbox {};
/// The whole list, black box only for uncovered instances.
struct AllRules {};

using PredictMode = std::variant<LevelMode, StochasticMode, AllBlackbox, AllRules>;

struct CompanionPrediction {
    int label = 0;
    std::optional<std::size_t> rule;  // answering rule (0-based); nullopt = black box
};

/// Prediction for one instance. `epsilon` is the uniform draw consumed by
/// StochasticMode and ignored otherwise.
///
/// In the stochastic band (covered by rules up to the next distinct level but
/// not by the first m^t) the covering rule answers when q_t > epsilon.
CompanionPrediction predict_companion(const CompanionModel& model, const BitVector& instance, int blackbox,
                                      const PredictMode& mode, double epsilon = 0.0);

/// predict_companion over every row; stochastic draws come from Rng(seed),
/// one per row in row order.
std::vector<CompanionPrediction> predict_dataset(const CompanionModel& model, const BinaryDataset& data,
                                                 const PredictionVector& preds, const PredictMode& mode,
                                                 std::uint64_t seed = 0);

}  // namespace crl

#endif  // CRL_COMPANION_HPP
