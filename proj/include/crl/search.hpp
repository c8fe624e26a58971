#ifndef CRL_SEARCH_HPP
#define CRL_SEARCH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crl/miner.hpp"
#include "crl/objective.hpp"
#include "crl/random.hpp"
#include "crl/rules.hpp"
#include "crl/tabular.hpp"

namespace crl {

enum class Move { add, remove, swap, replace, none };

const char* to_string(Move move);

/// What the search maximizes. `autac` is the companion objective
/// AUTAC - alpha * M; `standalone_accuracy` scores the list alone
/// (default rule, no black box) and exists to train naive-pairing baselines.
enum class SearchObjective { autac, standalone_accuracy };

struct SearchConfig {
    double alpha = 0.001;
    double c0 = 0.001;
    std::size_t iterations = 50000;
    std::uint64_t seed = 0;
    std::size_t init_size = 3;
    std::optional<std::size_t> max_rules;  // hard cap on accepted list length
    SearchObjective objective = SearchObjective::autac;
};

/// k distinct pool rules drawn uniformly without replacement, in draw order.
RuleList init_list(const CandidatePool& pool, std::size_t k, Rng& rng);

struct Proposal {
    RuleList list;
    Move move = Move::none;
};

/// One neighbour of `list`: add / remove / swap / replace with probability
/// 1/4 each. Infeasible draws (too short a list, a duplicate rule, the length
/// cap) re-draw the operation, at most 16 times, then yield the list unchanged.
Proposal propose(const RuleList& list, const CandidatePool& pool, Rng& rng,
                 std::optional<std::size_t> max_rules = std::nullopt);

/// C0 / log2(1 + n), n >= 1.
double temperature(std::size_t n, double c0);

/// Draws eps ~ U[0,1) and accepts iff eps <= exp(delta / temperature(n, c0)).
bool accept(double delta, std::size_t n, double c0, Rng& rng);

struct TraceRecord {
    std::size_t iteration = 0;
    Move move = Move::none;
    double proposed = 0.0;
    bool accepted = false;
    double best = 0.0;
};

struct SearchResult {
    RuleList best;
    TradeoffCurve curve;          // of `best` on the training data
    ObjectiveValue value;         // AUTAC-based objective of `best`
    double best_score = 0.0;      // maximized criterion of `best`
    double initial_score = 0.0;   // same criterion for the initial list
    std::vector<TraceRecord> trace;
};

/// Simulated-annealing local search over rule lists drawn from `pool`.
/// Deterministic in (data, preds, pool, config).
SearchResult run_search(const BinaryDataset& data, const PredictionVector& preds, const CandidatePool& pool,
                        const SearchConfig& config);

struct AlphaCandidate {
    double alpha = 0.0;
    std::size_t rules = 0;
    std::size_t conditions = 0;
    double autac = 0.0;  // training AUTAC of the best list
    bool admissible = false;
};

struct AlphaTuneReport {
    std::vector<AlphaCandidate> candidates;
    std::size_t chosen = 0;  // index into candidates
    bool tie = false;        // another admissible candidate matched the chosen AUTAC
    SearchResult result;     // search run of the chosen candidate

    double chosen_alpha() const { return candidates[chosen].alpha; }
};

/// Admissible candidate with the largest AUTAC, ties to the larger alpha.
/// `tie` (optional) reports whether the winning AUTAC was matched.
std::optional<std::size_t> choose_alpha(const std::vector<AlphaCandidate>& candidates, bool* tie = nullptr);

inline const std::vector<double> kDefaultAlphaCandidates = {.01, .005, .001, .0008, .0005, .0002, .0001};

/// One search per candidate alpha (seed derived from base.seed and the
/// candidate index), sharing the pool. Lists with max_rules or more rules are
/// inadmissible; the admissible candidate with the largest training AUTAC
/// wins, ties going to the larger alpha.
AlphaTuneReport tune_alpha(const BinaryDataset& data, const PredictionVector& preds, const CandidatePool& pool,
                           const std::vector<double>& candidates = kDefaultAlphaCandidates,
                           std::size_t max_rules = 20, const SearchConfig& base = {});

}  // namespace crl

#endif  // CRL_SEARCH_HPP
