#include "crl/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "crl/error.hpp"
#include "crl/format.hpp"

namespace crl {

namespace {

Json number_or_null(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

double number_or_nan(const Json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!j.is_number()) throw DataError("model schema: expected a number");
    return j.get<double>();
}

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DataError(std::string("model schema: missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

ModelFile make_model_file(const RuleList& list, const TradeoffCurve& curve,
                          const std::vector<std::string>& feature_names, std::optional<Binarization> binarization,
                          Json training) {
    if (curve.points.size() != list.size() + 1) throw UsageError("curve does not belong to this rule list");
    ModelFile model;
    model.blackbox_accuracy = curve.points.front().accuracy;
    for (std::size_t m = 0; m < list.size(); ++m) {
        RuleRecord rec;
        for (std::uint32_t j : list[m].antecedent) rec.conditions.push_back(feature_names.at(j));
        rec.z = list[m].z;
        const CurvePoint& p = curve.points[m + 1];
        rec.stats = RuleStats{p.exclusive_support, p.rule_part_accuracy(), p.transparency, p.accuracy};
        model.rules.push_back(std::move(rec));
    }
    model.training = std::move(training);
    model.binarization = std::move(binarization);
    return model;
}

Json to_json(const ModelFile& model) {
    Json j;
    j["format"] = kModelFormat;
    j["version"] = kModelVersion;
    if (model.blackbox_accuracy) j["blackbox_accuracy"] = *model.blackbox_accuracy;
    Json rules = Json::array();
    for (const RuleRecord& rec : model.rules) {
        Json r;
        r["conditions"] = rec.conditions;
        r["z"] = rec.z;
        if (rec.stats) {
            r["exclusive_support"] = rec.stats->exclusive_support;
            r["rule_accuracy"] = number_or_null(rec.stats->rule_accuracy);
            r["transparency"] = rec.stats->transparency;
            r["accuracy"] = rec.stats->accuracy;
        }
        rules.push_back(std::move(r));
    }
    j["rules"] = std::move(rules);
    j["training"] = model.training;
    if (model.binarization) j["binarization"] = to_json(*model.binarization);
    return j;
}

ModelFile model_from_json(const Json& j) {
    if (!j.is_object()) throw DataError("model schema: top level must be an object");
    if (require(j, "format") != kModelFormat) throw DataError("model schema: unknown format");
    const Json& version = require(j, "version");
    if (!version.is_number_integer() || version.get<int>() != kModelVersion) {
        throw DataError("model schema: unsupported version");
    }
    ModelFile model;
    if (j.contains("blackbox_accuracy")) model.blackbox_accuracy = number_or_nan(j.at("blackbox_accuracy"));
    const Json& rules = require(j, "rules");
    if (!rules.is_array()) throw DataError("model schema: 'rules' must be an array");
    for (const Json& r : rules) {
        RuleRecord rec;
        const Json& conds = require(r, "conditions");
        if (!conds.is_array() || conds.empty()) throw DataError("model schema: rule needs a non-empty 'conditions' array");
        for (const Json& c : conds) {
            if (!c.is_string()) throw DataError("model schema: conditions must be feature names");
            rec.conditions.push_back(c.get<std::string>());
        }
        const Json& z = require(r, "z");
        if (!z.is_number_integer() || (z.get<int>() != 0 && z.get<int>() != 1)) {
            throw DataError("model schema: 'z' must be 0 or 1");
        }
        rec.z = z.get<int>();
        if (r.contains("exclusive_support")) {
            RuleStats st;
            const Json& sup = r.at("exclusive_support");
            if (!sup.is_number_unsigned() && !sup.is_number_integer()) throw DataError("model schema: bad exclusive_support");
            st.exclusive_support = sup.get<std::size_t>();
            st.rule_accuracy = number_or_nan(require(r, "rule_accuracy"));
            st.transparency = number_or_nan(require(r, "transparency"));
            st.accuracy = number_or_nan(require(r, "accuracy"));
            rec.stats = st;
        }
        model.rules.push_back(std::move(rec));
    }
    if (j.contains("training")) model.training = j.at("training");
    if (j.contains("binarization")) model.binarization = binarization_from_json(j.at("binarization"));
    return model;
}

std::string dump_model(const ModelFile& model) { return to_json(model).dump(2) + "\n"; }

ModelFile parse_model(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DataError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        return model_from_json(j);
    } catch (const Json::exception& e) {
        throw DataError(std::string("model schema: ") + e.what());
    }
}

void write_model(const std::string& path, const ModelFile& model) { write_text_file(path, dump_model(model)); }

ModelFile read_model(const std::string& path) { return parse_model(read_text_file(path)); }

RuleList resolve_rules(const ModelFile& model, const BinaryDataset& data) {
    RuleList list;
    for (const RuleRecord& rec : model.rules) {
        std::vector<std::uint32_t> antecedent;
        for (const std::string& name : rec.conditions) {
            const auto idx = data.find_feature(name);
            if (!idx) throw DataError("unresolvable feature '" + name + "' in model rule");
            antecedent.push_back(static_cast<std::uint32_t>(*idx));
        }
        list.push_back(make_rule(std::move(antecedent), rec.z, data));
    }
    if (has_duplicate_rules(list)) throw DataError("model schema: duplicate rule in list");
    return list;
}

CompanionModel companion_from_file(const ModelFile& model, const BinaryDataset& data, const PredictionVector& preds) {
    RuleList list = resolve_rules(model, data);
    const bool stored = std::all_of(model.rules.begin(), model.rules.end(),
                                    [](const RuleRecord& r) { return r.stats.has_value(); });
    if (!stored) return CompanionModel::fit(std::move(list), data, preds);
    CompanionModel out;
    out.rules = std::move(list);
    out.transparency.push_back(0.0);
    for (const RuleRecord& r : model.rules) out.transparency.push_back(r.stats->transparency);
    return out;
}

Json to_json(const Binarization& manifest) {
    Json j;
    j["label_column"] = manifest.label_column;
    j["positive_value"] = manifest.positive_value;
    j["quantiles"] = manifest.quantiles;
    Json cols = Json::array();
    for (const ColumnEncoding& enc : manifest.columns) {
        Json c;
        c["name"] = enc.name;
        c["kind"] = enc.kind == ColumnKind::numeric ? "numeric" : "categorical";
        if (enc.kind == ColumnKind::numeric) {
            c["edges"] = enc.edges;
            c["codes"] = enc.codes;
        } else {
            c["categories"] = enc.categories;
        }
        c["has_missing"] = enc.has_missing;
        cols.push_back(std::move(c));
    }
    j["columns"] = std::move(cols);
    j["feature_names"] = manifest.feature_names();
    return j;
}

Binarization binarization_from_json(const Json& j) {
    try {
        Binarization m;
        m.label_column = require(j, "label_column").get<std::string>();
        m.positive_value = require(j, "positive_value").get<std::string>();
        m.quantiles = require(j, "quantiles").get<int>();
        for (const Json& c : require(j, "columns")) {
            ColumnEncoding enc;
            enc.name = require(c, "name").get<std::string>();
            const std::string kind = require(c, "kind").get<std::string>();
            if (kind == "numeric") {
                enc.kind = ColumnKind::numeric;
                enc.edges = require(c, "edges").get<std::vector<double>>();
                enc.codes = require(c, "codes").get<std::vector<int>>();
            } else if (kind == "categorical") {
                enc.kind = ColumnKind::categorical;
                enc.categories = require(c, "categories").get<std::vector<std::string>>();
            } else {
                throw DataError("manifest: unknown column kind '" + kind + "'");
            }
            enc.has_missing = require(c, "has_missing").get<bool>();
            m.columns.push_back(std::move(enc));
        }
        return m;
    } catch (const Json::exception& e) {
        throw DataError(std::string("manifest schema: ") + e.what());
    }
}

Json to_json(const CandidatePool& pool, const std::vector<std::string>& feature_names) {
    Json j;
    j["gamma"] = pool.gamma;
    j["max_cardinality"] = pool.max_cardinality;
    Json rules = Json::array();
    for (std::size_t i = 0; i < pool.size(); ++i) {
        Json r;
        Json conds = Json::array();
        for (std::uint32_t f : pool.rules[i].antecedent) conds.push_back(feature_names.at(f));
        r["conditions"] = std::move(conds);
        r["z"] = pool.rules[i].z;
        r["class_support"] = pool.class_support[i];
        r["support_count"] = pool.support_count[i];
        rules.push_back(std::move(r));
    }
    j["rules"] = std::move(rules);
    return j;
}

void write_curve_csv(std::ostream& out, const TradeoffCurve& curve) {
    out << "level,transparency,accuracy,exclusive_support,rule_part_accuracy\n";
    for (std::size_t m = 0; m < curve.points.size(); ++m) {
        const CurvePoint& p = curve.points[m];
        out << m << ',' << format_double(p.transparency) << ',' << format_double(p.accuracy) << ','
            << p.exclusive_support << ',' << (m == 0 ? std::string() : format_double(p.rule_part_accuracy())) << '\n';
    }
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
    out << "iteration,op,proposed_objective,accepted,best_objective\n";
    for (const TraceRecord& r : trace) {
        out << r.iteration << ',' << to_string(r.move) << ',' << format_double(r.proposed) << ','
            << (r.accepted ? 1 : 0) << ',' << format_double(r.best) << '\n';
    }
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << contents;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace crl
