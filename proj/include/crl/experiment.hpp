#ifndef CRL_EXPERIMENT_HPP
#define CRL_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crl/miner.hpp"
#include "crl/search.hpp"
#include "crl/serialize.hpp"
#include "crl/tabular.hpp"

namespace crl {

struct TrainOptions {
    int quantiles = 7;
    double gamma = 0.05;
    std::size_t max_cardinality = 2;
    double mining_fraction = 1.0;
    SearchConfig search;
    bool tune_alpha = false;
    std::vector<double> alpha_candidates = kDefaultAlphaCandidates;
    std::size_t max_rules = 20;  // admissibility limit used when tuning

    Json to_json() const;
};

struct TrainOutcome {
    Binarization manifest;
    BinaryDataset data;
    CandidatePool pool;
    SearchResult search;
    std::vector<AlphaCandidate> tuning;  // empty unless alpha was tuned
    double alpha = 0.0;                  // alpha of the returned model
    ModelFile model;
};

/// Fit the binarization on `table`, mine, then search (or tune alpha).
TrainOutcome train_model(const RawTable& table, const PredictionVector& preds, const TrainOptions& options);

struct Evaluation {
    BinaryDataset data;
    RuleList rules;
    TradeoffCurve curve;
    double autac = 0.0;
};

/// Scores a stored model on new rows. The binarization used is, in order:
/// `manifest`, the model's embedded one, or a fresh fit on `table`.
Evaluation evaluate_model(const ModelFile& model, const RawTable& table, const PredictionVector& preds,
                          const std::optional<Binarization>& manifest = std::nullopt);

struct Summary {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (n - 1); 0 for a single value
};

Summary summarize(std::span<const double> values);

struct FoldResult {
    std::size_t fold = 0;
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
    double alpha = 0.0;
    double train_autac = 0.0;
    double test_autac = 0.0;
    TradeoffCurve train_curve;
    TradeoffCurve test_curve;
    ModelFile model;
};

struct CvOptions {
    std::size_t folds = 5;
    std::uint64_t seed = 0;  // fold assignment; searches use derived seeds
    TrainOptions train;
};

struct ExperimentReport {
    std::vector<FoldResult> folds;
    bool stratified = true;
    Summary test_autac;
    Summary train_autac;
    Json config;
};

/// k-fold protocol: per fold, train on the other folds (binarization fitted
/// there) and evaluate on the held-out fold.
ExperimentReport run_cv(const RawTable& table, const PredictionVector& preds, const CvOptions& options);

/// fold,train_rows,test_rows,alpha,rules,train_autac,test_autac
void write_report_csv(std::ostream& out, const ExperimentReport& report);
/// Human-readable table, "value (std)" summary row.
void write_report_text(std::ostream& out, const ExperimentReport& report);

}  // namespace crl

#endif  // CRL_EXPERIMENT_HPP
