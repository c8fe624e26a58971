#ifndef CRL_TABULAR_HPP
#define CRL_TABULAR_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crl/bitvector.hpp"

namespace crl {

enum class ColumnKind { numeric, categorical };

/// One raw feature column. `cells` keeps the original text; `values` holds
/// the parsed numbers for numeric columns (NaN marks a missing cell).
struct RawColumn {
    std::string name;
    ColumnKind kind = ColumnKind::categorical;
    std::vector<std::string> cells;
    std::vector<double> values;

    bool is_missing(std::size_t row) const;
};

struct RawTable {
    std::vector<RawColumn> columns;  // features only; the label is held separately
    std::string label_column;
    std::string positive_value;
    BitVector labels;

    std::size_t n_rows() const { return labels.size(); }
    RawTable subset(std::span<const std::size_t> rows) const;
};

struct TableOptions {
    std::string label_column = "y";
    std::optional<std::string> positive_value;  // default: lexicographically larger label
    char delimiter = ',';
    std::vector<std::string> categorical;       // force these columns categorical
};

RawTable parse_table(std::istream& in, const TableOptions& options);
RawTable load_table(const std::string& path, const TableOptions& options);

/// Cells treated as missing: "", "?", "NA", "NaN", "nan".
bool is_missing_token(const std::string& cell);

/// Interior bin edges at the empirical k/q quantiles (k = 1..q-1), linearly
/// interpolated on the sorted non-missing values, duplicates merged.
std::vector<double> quantile_edges(std::span<const double> values, int q);

/// Bin index of `value`: the number of edges strictly below it, so bin k is
/// (edge[k-1], edge[k]].
int bin_code(std::span<const double> edges, double value);

/// Quantile codes for a numeric column, q = 7 by default. Missing values get -1.
std::vector<int> quantile_bin(std::span<const double> values, int q = 7);

/// How one raw column turns into one-hot features.
struct ColumnEncoding {
    std::string name;
    ColumnKind kind = ColumnKind::categorical;
    std::vector<double> edges;             // numeric only
    std::vector<int> codes;                // numeric: observed bin codes, ascending
    std::vector<std::string> categories;   // categorical: observed values, sorted
    bool has_missing = false;              // adds a trailing "=NA" feature

    std::size_t width() const;
};

/// Binarization manifest: everything needed to re-apply a fitted transform to
/// new rows (test folds, deployment data).
struct Binarization {
    std::string label_column;
    std::string positive_value;
    int quantiles = 7;
    std::vector<ColumnEncoding> columns;

    std::vector<std::string> feature_names() const;
};

/// Column-major binary design matrix with labels. Immutable once built.
class BinaryDataset {
 public:
    BinaryDataset() = default;
    BinaryDataset(std::vector<BitVector> features, std::vector<std::string> feature_names, BitVector labels);

    std::size_t n_rows() const { return labels_.size(); }
    std::size_t n_features() const { return features_.size(); }

    const BitVector& feature(std::size_t j) const { return features_[j]; }
    const std::vector<BitVector>& features() const { return features_; }
    const std::vector<std::string>& feature_names() const { return names_; }
    const BitVector& labels() const { return labels_; }

    /// Feature bits of one row, as a d'-long vector.
    BitVector row(std::size_t i) const;
    BinaryDataset subset(std::span<const std::size_t> rows) const;
    std::optional<std::size_t> find_feature(const std::string& name) const;

 private:
    std::vector<BitVector> features_;
    std::vector<std::string> names_;
    BitVector labels_;
};

Binarization fit_binarization(const RawTable& table, int quantiles = 7);
/// Unseen categories / codes leave that source column without a set bit.
BinaryDataset apply_binarization(const Binarization& manifest, const RawTable& table);
BinaryDataset binarize(const RawTable& table, int quantiles = 7);

struct PredictionVector {
    BitVector preds;
    std::string source_tag;

    std::size_t size() const { return preds.size(); }
    PredictionVector subset(std::span<const std::size_t> rows) const;
};

/// One 0/1 value per line, or the named column of a delimited file with header.
PredictionVector parse_predictions(std::istream& in, std::size_t expected_rows,
                                   const std::optional<std::string>& column = std::nullopt,
                                   char delimiter = ',');
PredictionVector load_predictions(const std::string& path, std::size_t expected_rows,
                                  const std::optional<std::string>& column = std::nullopt,
                                  char delimiter = ',');

/// Stand-in black box: the true label with probability `accuracy`, flipped otherwise.
PredictionVector synth_oracle(const BitVector& labels, double accuracy, std::uint64_t seed);

struct FoldSplit {
    std::vector<std::vector<std::size_t>> folds;  // each sorted ascending
    bool stratified = true;

    /// All rows outside fold f, ascending.
    std::vector<std::size_t> train_rows(std::size_t f) const;
};

/// Stratified k-fold partition; falls back to an unstratified split when a
/// class has fewer than k rows (stratified == false in the result).
FoldSplit split_folds(const BitVector& labels, std::size_t k = 5, std::uint64_t seed = 0);
FoldSplit split_folds(const BinaryDataset& data, std::size_t k = 5, std::uint64_t seed = 0);

}  // namespace crl

#endif  // CRL_TABULAR_HPP
