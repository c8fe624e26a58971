#include "crl/tabular.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "crl/error.hpp"
#include "crl/format.hpp"
#include "crl/random.hpp"

namespace crl {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// Splits one line on `delim`, honouring double-quoted fields.
std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            out.push_back(trim(field));
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(trim(field));
    return out;
}

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    if (*begin == '+') ++begin;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string bin_label(std::span<const double> edges, int code) {
    const std::string lo = code == 0 ? "-inf" : format_double(edges[code - 1]);
    const bool last = static_cast<std::size_t>(code) == edges.size();
    const std::string hi = last ? "inf" : format_double(edges[code]);
    return "(" + lo + "," + hi + (last ? ")" : "]");
}

}  // namespace

bool is_missing_token(const std::string& cell) {
    return cell.empty() || cell == "?" || cell == "NA" || cell == "NaN" || cell == "nan";
}

bool RawColumn::is_missing(std::size_t row) const { return is_missing_token(cells[row]); }

RawTable RawTable::subset(std::span<const std::size_t> rows) const {
    RawTable out;
    out.label_column = label_column;
    out.positive_value = positive_value;
    out.labels = BitVector(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out.labels.set(i, labels.test(rows[i]));
    out.columns.reserve(columns.size());
    for (const RawColumn& col : columns) {
        RawColumn c{col.name, col.kind, {}, {}};
        c.cells.reserve(rows.size());
        for (std::size_t r : rows) c.cells.push_back(col.cells[r]);
        if (col.kind == ColumnKind::numeric) {
            c.values.reserve(rows.size());
            for (std::size_t r : rows) c.values.push_back(col.values[r]);
        }
        out.columns.push_back(std::move(c));
    }
    return out;
}

RawTable parse_table(std::istream& in, const TableOptions& options) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty table: missing header row");
    const std::vector<std::string> header = split_line(line, options.delimiter);

    const auto label_it = std::find(header.begin(), header.end(), options.label_column);
    if (label_it == header.end()) throw DataError("missing label column '" + options.label_column + "'");
    const std::size_t label_idx = static_cast<std::size_t>(label_it - header.begin());

    std::vector<std::vector<std::string>> cells(header.size());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_line(line, options.delimiter);
        if (fields.size() != header.size()) {
            throw DataError("ragged row at line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) cells[c].push_back(std::move(fields[c]));
    }
    const std::size_t n = cells[label_idx].size();
    if (n == 0) throw DataError("table has no data rows");

    // label mapping
    std::set<std::string> label_values;
    for (const std::string& v : cells[label_idx]) {
        if (is_missing_token(v)) throw DataError("missing label value in column '" + options.label_column + "'");
        label_values.insert(v);
    }
    if (label_values.size() > 2) {
        throw DataError("non-binary label: column '" + options.label_column + "' has " +
                        std::to_string(label_values.size()) + " distinct values");
    }
    RawTable table;
    table.label_column = options.label_column;
    table.positive_value = options.positive_value.value_or(*label_values.rbegin());
    if (options.positive_value && !label_values.contains(*options.positive_value)) {
        throw DataError("positive label value '" + *options.positive_value + "' does not occur in column '" +
                        options.label_column + "'");
    }
    table.labels = BitVector(n);
    for (std::size_t i = 0; i < n; ++i) table.labels.set(i, cells[label_idx][i] == table.positive_value);

    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == label_idx) continue;
        RawColumn col{header[c], ColumnKind::numeric, std::move(cells[c]), {}};
        const bool forced = std::find(options.categorical.begin(), options.categorical.end(), col.name) !=
                            options.categorical.end();
        col.values.assign(n, std::numeric_limits<double>::quiet_NaN());
        bool numeric = !forced;
        for (std::size_t i = 0; numeric && i < n; ++i) {
            if (col.is_missing(i)) continue;
            if (auto v = parse_number(col.cells[i])) {
                col.values[i] = *v;
            } else {
                numeric = false;
            }
        }
        if (!numeric) {
            col.kind = ColumnKind::categorical;
            col.values.clear();
        }
        table.columns.push_back(std::move(col));
    }
    return table;
}

RawTable load_table(const std::string& path, const TableOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open table '" + path + "'");
    return parse_table(in, options);
}

std::vector<double> quantile_edges(std::span<const double> values, int q) {
    if (q < 2) throw UsageError("quantile count must be at least 2");
    std::vector<double> sorted;
    sorted.reserve(values.size());
    for (double v : values) {
        if (!std::isnan(v)) sorted.push_back(v);
    }
    if (sorted.empty()) return {};
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges;
    const double last = static_cast<double>(sorted.size() - 1);
    for (int k = 1; k < q; ++k) {
        const double pos = last * k / q;
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        const double edge = sorted[lo] + frac * (sorted[hi] - sorted[lo]);
        if (edges.empty() || edge > edges.back()) edges.push_back(edge);
    }
    return edges;
}

int bin_code(std::span<const double> edges, double value) {
    return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), value) - edges.begin());
}

std::vector<int> quantile_bin(std::span<const double> values, int q) {
    const std::vector<double> edges = quantile_edges(values, q);
    std::vector<int> codes;
    codes.reserve(values.size());
    for (double v : values) codes.push_back(std::isnan(v) ? -1 : bin_code(edges, v));
    return codes;
}

std::size_t ColumnEncoding::width() const {
    const std::size_t levels = kind == ColumnKind::numeric ? codes.size() : categories.size();
    return levels + (has_missing ? 1 : 0);
}

std::vector<std::string> Binarization::feature_names() const {
    std::vector<std::string> names;
    for (const ColumnEncoding& col : columns) {
        if (col.kind == ColumnKind::numeric) {
            for (int code : col.codes) names.push_back(col.name + "=" + bin_label(col.edges, code));
        } else {
            for (const std::string& cat : col.categories) names.push_back(col.name + "=" + cat);
        }
        if (col.has_missing) names.push_back(col.name + "=NA");
    }
    return names;
}

BinaryDataset::BinaryDataset(std::vector<BitVector> features, std::vector<std::string> feature_names,
                             BitVector labels)
    : features_(std::move(features)), names_(std::move(feature_names)), labels_(std::move(labels)) {
    if (features_.empty()) throw DataError("no usable feature columns");
    if (names_.size() != features_.size()) throw DataError("feature name count does not match feature count");
    for (const BitVector& f : features_) {
        if (f.size() != labels_.size()) throw DataError("feature column length does not match label count");
    }
}

BitVector BinaryDataset::row(std::size_t i) const {
    BitVector bits(n_features());
    for (std::size_t j = 0; j < features_.size(); ++j) {
        if (features_[j].test(i)) bits.set(j);
    }
    return bits;
}

BinaryDataset BinaryDataset::subset(std::span<const std::size_t> rows) const {
    std::vector<BitVector> feats;
    feats.reserve(features_.size());
    for (const BitVector& f : features_) {
        BitVector sub(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) sub.set(i, f.test(rows[i]));
        feats.push_back(std::move(sub));
    }
    BitVector labels(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) labels.set(i, labels_.test(rows[i]));
    return BinaryDataset(std::move(feats), names_, std::move(labels));
}

std::optional<std::size_t> BinaryDataset::find_feature(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

Binarization fit_binarization(const RawTable& table, int quantiles) {
    Binarization manifest;
    manifest.label_column = table.label_column;
    manifest.positive_value = table.positive_value;
    manifest.quantiles = quantiles;
    for (const RawColumn& col : table.columns) {
        ColumnEncoding enc;
        enc.name = col.name;
        enc.kind = col.kind;
        if (col.kind == ColumnKind::numeric) {
            enc.edges = quantile_edges(col.values, quantiles);
            std::set<int> seen;
            for (double v : col.values) {
                if (std::isnan(v)) {
                    enc.has_missing = true;
                } else {
                    seen.insert(bin_code(enc.edges, v));
                }
            }
            enc.codes.assign(seen.begin(), seen.end());
        } else {
            std::set<std::string> seen;
            for (std::size_t i = 0; i < col.cells.size(); ++i) {
                if (col.is_missing(i)) {
                    enc.has_missing = true;
                } else {
                    seen.insert(col.cells[i]);
                }
            }
            enc.categories.assign(seen.begin(), seen.end());
        }
        if (enc.width() > 0) manifest.columns.push_back(std::move(enc));
    }
    if (manifest.columns.empty()) throw DataError("zero usable feature columns");
    return manifest;
}

BinaryDataset apply_binarization(const Binarization& manifest, const RawTable& table) {
    const std::size_t n = table.n_rows();
    std::vector<BitVector> features;
    for (const ColumnEncoding& enc : manifest.columns) {
        const auto it = std::find_if(table.columns.begin(), table.columns.end(),
                                     [&](const RawColumn& c) { return c.name == enc.name; });
        if (it == table.columns.end()) throw DataError("table lacks column '" + enc.name + "' required by manifest");
        const RawColumn& col = *it;
        std::vector<BitVector> block(enc.width(), BitVector(n));
        const std::size_t missing_slot = enc.width() - 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (col.is_missing(i)) {
                if (enc.has_missing) block[missing_slot].set(i);
                continue;
            }
            std::ptrdiff_t slot = -1;
            if (enc.kind == ColumnKind::numeric) {
                double v = col.kind == ColumnKind::numeric ? col.values[i] : parse_number(col.cells[i]).value_or(NAN);
                if (std::isnan(v)) throw DataError("non-numeric value '" + col.cells[i] + "' in numeric column '" + enc.name + "'");
                const int code = bin_code(enc.edges, v);
                const auto pos = std::lower_bound(enc.codes.begin(), enc.codes.end(), code);
                if (pos != enc.codes.end() && *pos == code) slot = pos - enc.codes.begin();
            } else {
                const auto pos = std::lower_bound(enc.categories.begin(), enc.categories.end(), col.cells[i]);
                if (pos != enc.categories.end() && *pos == col.cells[i]) slot = pos - enc.categories.begin();
            }
            if (slot >= 0) block[static_cast<std::size_t>(slot)].set(i);
        }
        for (BitVector& b : block) features.push_back(std::move(b));
    }
    BitVector labels = table.labels;
    return BinaryDataset(std::move(features), manifest.feature_names(), std::move(labels));
}

BinaryDataset binarize(const RawTable& table, int quantiles) {
    return apply_binarization(fit_binarization(table, quantiles), table);
}

PredictionVector PredictionVector::subset(std::span<const std::size_t> rows) const {
    PredictionVector out{BitVector(rows.size()), source_tag};
    for (std::size_t i = 0; i < rows.size(); ++i) out.preds.set(i, preds.test(rows[i]));
    return out;
}

PredictionVector parse_predictions(std::istream& in, std::size_t expected_rows,
                                   const std::optional<std::string>& column, char delimiter) {
    std::vector<bool> values;
    std::string line;
    std::size_t col_idx = 0;
    std::size_t line_no = 0;
    if (column) {
        if (!std::getline(in, line)) throw DataError("prediction file is empty");
        ++line_no;
        const auto header = split_line(line, delimiter);
        const auto it = std::find(header.begin(), header.end(), *column);
        if (it == header.end()) throw DataError("prediction column '" + *column + "' not found");
        col_idx = static_cast<std::size_t>(it - header.begin());
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::string cell = trim(line);
        if (column) {
            const auto fields = split_line(line, delimiter);
            if (col_idx >= fields.size()) throw DataError("ragged row at line " + std::to_string(line_no) + " of prediction file");
            cell = fields[col_idx];
        }
        if (cell == "0" || cell == "0.0") {
            values.push_back(false);
        } else if (cell == "1" || cell == "1.0") {
            values.push_back(true);
        } else {
            throw DataError("non-binary prediction '" + cell + "' at line " + std::to_string(line_no));
        }
    }
    if (values.size() != expected_rows) {
        throw DataError("prediction length mismatch: expected " + std::to_string(expected_rows) + " rows, got " +
                        std::to_string(values.size()));
    }
    PredictionVector out{BitVector(values.size()), "file"};
    for (std::size_t i = 0; i < values.size(); ++i) out.preds.set(i, values[i]);
    return out;
}

PredictionVector load_predictions(const std::string& path, std::size_t expected_rows,
                                  const std::optional<std::string>& column, char delimiter) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open prediction file '" + path + "'");
    PredictionVector out = parse_predictions(in, expected_rows, column, delimiter);
    out.source_tag = path;
    return out;
}

PredictionVector synth_oracle(const BitVector& labels, double accuracy, std::uint64_t seed) {
    if (!(accuracy >= 0.0 && accuracy <= 1.0)) throw UsageError("oracle accuracy must lie in [0, 1]");
    Rng rng(seed);
    PredictionVector out{BitVector(labels.size()),
                         "oracle(accuracy=" + format_double(accuracy) + ",seed=" + std::to_string(seed) + ")"};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool truthful = rng.uniform() < accuracy;
        out.preds.set(i, truthful ? labels.test(i) : !labels.test(i));
    }
    return out;
}

std::vector<std::size_t> FoldSplit::train_rows(std::size_t f) const {
    std::vector<std::size_t> rows;
    for (std::size_t g = 0; g < folds.size(); ++g) {
        if (g != f) rows.insert(rows.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

FoldSplit split_folds(const BitVector& labels, std::size_t k, std::uint64_t seed) {
    const std::size_t n = labels.size();
    if (k < 2) throw UsageError("fold count must be at least 2");
    if (n < k) throw DataError("fewer rows (" + std::to_string(n) + ") than folds (" + std::to_string(k) + ")");

    const std::size_t positives = labels.count();
    FoldSplit split;
    split.folds.resize(k);
    split.stratified = positives >= k && n - positives >= k;

    std::vector<std::vector<std::size_t>> strata;
    if (split.stratified) {
        strata.resize(2);
        for (std::size_t i = 0; i < n; ++i) strata[labels.test(i) ? 1 : 0].push_back(i);
    } else {
        strata.emplace_back(n);
        std::iota(strata[0].begin(), strata[0].end(), std::size_t{0});
    }

    Rng rng(seed);
    std::size_t next = 0;  // continue dealing where the previous stratum stopped
    for (auto& stratum : strata) {
        for (std::size_t i = stratum.size(); i > 1; --i) std::swap(stratum[i - 1], stratum[rng.below(i)]);
        for (std::size_t row : stratum) {
            split.folds[next].push_back(row);
            next = (next + 1) % k;
        }
    }
    for (auto& fold : split.folds) std::sort(fold.begin(), fold.end());
    return split;
}

FoldSplit split_folds(const BinaryDataset& data, std::size_t k, std::uint64_t seed) {
    return split_folds(data.labels(), k, seed);
}

}  // namespace crl
