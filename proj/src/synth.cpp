#include "crl/synth.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "crl/error.hpp"
#include "crl/random.hpp"

namespace crl {

namespace {

enum class Region { first_rule, second_rule, rest };

}  // namespace

PlantedBenchmark make_planted_benchmark(const PlantedOptions& options) {
    const std::size_t n = options.rows;
    if (n < 4) throw UsageError("planted benchmark needs at least 4 rows");
    if (!(options.covered_fraction >= 0.25 && options.covered_fraction <= 1.0)) {
        throw UsageError("covered fraction must lie in [0.25, 1]");
    }
    Rng rng(options.seed);

    const auto n_first = static_cast<std::size_t>(std::llround(0.25 * static_cast<double>(n)));
    const auto n_covered = static_cast<std::size_t>(std::llround(options.covered_fraction * static_cast<double>(n)));
    std::vector<Region> regions(n, Region::rest);
    std::fill(regions.begin(), regions.begin() + static_cast<std::ptrdiff_t>(n_first), Region::first_rule);
    std::fill(regions.begin() + static_cast<std::ptrdiff_t>(n_first),
              regions.begin() + static_cast<std::ptrdiff_t>(n_covered), Region::second_rule);
    for (std::size_t i = n; i > 1; --i) std::swap(regions[i - 1], regions[rng.below(i)]);

    std::vector<std::vector<bool>> v(5, std::vector<bool>(n));
    BitVector labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (regions[i] == Region::first_rule) {
            v[0][i] = v[1][i] = true;
        } else {
            // one of FF, FT, TF
            const auto pick = rng.below(3);
            v[0][i] = pick == 2;
            v[1][i] = pick == 1;
        }
        v[2][i] = regions[i] == Region::first_rule ? rng.uniform() < 0.5 : regions[i] == Region::second_rule;
        v[3][i] = rng.uniform() < 0.5;
        v[4][i] = rng.uniform() < 0.5;
        switch (regions[i]) {
            case Region::first_rule: labels.set(i, true); break;
            case Region::second_rule: labels.set(i, false); break;
            case Region::rest: labels.set(i, rng.uniform() < 0.7 ? v[3][i] : !v[3][i]); break;
        }
    }

    PlantedBenchmark bench;
    bench.table.label_column = "y";
    bench.table.positive_value = "1";
    bench.table.labels = labels;
    for (std::size_t c = 0; c < v.size(); ++c) {
        RawColumn col{"v" + std::to_string(c), ColumnKind::categorical, {}, {}};
        col.cells.reserve(n);
        for (std::size_t i = 0; i < n; ++i) col.cells.emplace_back(v[c][i] ? "T" : "F");
        bench.table.columns.push_back(std::move(col));
    }
    bench.blackbox = synth_oracle(labels, options.blackbox_accuracy, derive_seed(options.seed, 1));
    bench.planted = {{{"v0=T", "v1=T"}, 1}, {{"v2=T"}, 0}};
    return bench;
}

void write_table_csv(std::ostream& out, const RawTable& table) {
    for (const RawColumn& col : table.columns) out << col.name << ',';
    out << table.label_column << '\n';
    for (std::size_t i = 0; i < table.n_rows(); ++i) {
        for (const RawColumn& col : table.columns) out << col.cells[i] << ',';
        out << (table.labels.test(i) ? 1 : 0) << '\n';
    }
}

}  // namespace crl
