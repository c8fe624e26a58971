#include "crl/companion.hpp"

#include "crl/error.hpp"
#include "crl/random.hpp"

namespace crl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

CompanionPrediction answer_with(const CompanionModel& model, const BitVector& instance, int blackbox,
                                std::size_t levels) {
    for (std::size_t m = 0; m < levels && m < model.rules.size(); ++m) {
        if (model.rules[m].matches(instance)) return {model.rules[m].z, m};
    }
    return {blackbox, std::nullopt};
}

}  // namespace

CompanionModel CompanionModel::fit(RuleList rules, const BinaryDataset& data, const PredictionVector& preds) {
    CompanionModel model;
    model.transparency = tradeoff_curve(rules, data, preds).transparencies();
    model.rules = std::move(rules);
    return model;
}

CompanionPrediction predict_companion(const CompanionModel& model, const BitVector& instance, int blackbox,
                                      const PredictMode& mode, double epsilon) {
    return std::visit(
        Overloaded{
            [&](const LevelMode& lv) {
                if (lv.m > model.rules.size()) throw UsageError("level exceeds rule count");
                return answer_with(model, instance, blackbox, lv.m);
            },
            [&](const StochasticMode& st) {
                if (model.transparency.size() != model.rules.size() + 1) {
                    throw UsageError("model lacks transparency levels for stochastic prediction");
                }
                const LevelChoice choice = level_for_t(model.transparency, st.t);
                CompanionPrediction inner = answer_with(model, instance, blackbox, choice.next);
                if (!inner.rule || *inner.rule < choice.level) return inner;
                // covered only beyond m^t: answered by the rule with probability q_t
                if (choice.q > epsilon) return inner;
                return CompanionPrediction{blackbox, std::nullopt};
            },
            [&](const AllBlackbox&) { return CompanionPrediction{blackbox, std::nullopt}; },
            [&](const AllRules&) { return answer_with(model, instance, blackbox, model.rules.size()); },
        },
        mode);
}

std::vector<CompanionPrediction> predict_dataset(const CompanionModel& model, const BinaryDataset& data,
                                                 const PredictionVector& preds, const PredictMode& mode,
                                                 std::uint64_t seed) {
    if (preds.size() != data.n_rows()) throw DataError("black-box predictions not aligned with dataset");
    Rng rng(seed);
    std::vector<CompanionPrediction> out;
    out.reserve(data.n_rows());
    for (std::size_t i = 0; i < data.n_rows(); ++i) {
        const double eps = rng.uniform();
        out.push_back(predict_companion(model, data.row(i), preds.preds.test(i) ? 1 : 0, mode, eps));
    }
    return out;
}

}  // namespace crl
