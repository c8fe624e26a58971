#ifndef CRL_SERIALIZE_HPP
#define CRL_SERIALIZE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crl/companion.hpp"
#include "crl/miner.hpp"
#include "crl/objective.hpp"
#include "crl/rules.hpp"
#include "crl/search.hpp"
#include "crl/tabular.hpp"

namespace crl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kModelFormat = "companion-rule-list";
inline constexpr int kModelVersion = 1;

/// Training-time statistics stored next to each rule.
struct RuleStats {
    std::size_t exclusive_support = 0;
    double rule_accuracy = 0.0;  // NaN (JSON null) when the rule answers no row
    double transparency = 0.0;   // T_m
    double accuracy = 0.0;       // A_m
};

/// A rule as stored on disk: conditions by feature name, not index.
struct RuleRecord {
    std::vector<std::string> conditions;
    int z = 0;
    std::optional<RuleStats> stats;
};

/// Serialized companion model. Field order on disk is fixed, so
/// dump -> parse -> dump is byte-identical.
struct ModelFile {
    std::vector<RuleRecord> rules;
    std::optional<double> blackbox_accuracy;  // A_0 on the training data
    Json training = Json::object();           // config echo, free-form
    std::optional<Binarization> binarization;
};

ModelFile make_model_file(const RuleList& list, const TradeoffCurve& curve,
                          const std::vector<std::string>& feature_names,
                          std::optional<Binarization> binarization = std::nullopt, Json training = Json::object());

Json to_json(const ModelFile& model);
/// Validates the schema; throws DataError on violations.
ModelFile model_from_json(const Json& j);

std::string dump_model(const ModelFile& model);
ModelFile parse_model(const std::string& text);
void write_model(const std::string& path, const ModelFile& model);
ModelFile read_model(const std::string& path);

/// Maps condition names to dataset columns; DataError names the first
/// condition that does not resolve.
RuleList resolve_rules(const ModelFile& model, const BinaryDataset& data);

/// Rules bound to `data`. Stochastic levels come from the stored training
/// transparencies when every rule carries stats, else from (data, preds).
CompanionModel companion_from_file(const ModelFile& model, const BinaryDataset& data, const PredictionVector& preds);

Json to_json(const Binarization& manifest);
Binarization binarization_from_json(const Json& j);

Json to_json(const CandidatePool& pool, const std::vector<std::string>& feature_names);

/// level,transparency,accuracy,exclusive_support,rule_part_accuracy
void write_curve_csv(std::ostream& out, const TradeoffCurve& curve);
/// iteration,op,proposed_objective,accepted,best_objective
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace crl

#endif  // CRL_SERIALIZE_HPP
