#ifndef CRL_SYNTH_HPP
#define CRL_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "crl/tabular.hpp"

namespace crl {

struct PlantedOptions {
    std::size_t rows = 2000;
    double blackbox_accuracy = 0.85;
    double covered_fraction = 0.6;
    std::uint64_t seed = 0;
};

/// Benchmark with a known two-rule list.
///
/// Five categorical columns v0..v4 with values F/T (d' = 10 after one-hot).
/// Rows are split into exact regions: 25% satisfy v0=T & v1=T and have y = 1;
/// the next (covered_fraction - 25%) satisfy v2=T outside that and have
/// y = 0; the remaining rows have y = v3 flipped with probability 0.3. The
/// black box is synth_oracle(y, blackbox_accuracy) over all rows.
struct PlantedBenchmark {
    RawTable table;
    PredictionVector blackbox;
    /// The generating list, conditions given as feature names.
    std::vector<std::pair<std::vector<std::string>, int>> planted;
};

PlantedBenchmark make_planted_benchmark(const PlantedOptions& options);

/// Writes the table as comma-separated text with a header row (label column "y").
void write_table_csv(std::ostream& out, const RawTable& table);

}  // namespace crl

#endif  // CRL_SYNTH_HPP
