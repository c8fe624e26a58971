#include "crl/search.hpp"

#include <cmath>
#include <numeric>

#include "crl/error.hpp"

namespace crl {

namespace {

constexpr int kMaxProposalAttempts = 16;

bool contains(const RuleList& list, const Rule& rule) {
    for (const Rule& r : list) {
        if (r.same_key(rule)) return true;
    }
    return false;
}

class Scorer {
 public:
    Scorer(const BinaryDataset& data, const PredictionVector& preds, const SearchConfig& config)
        : eval_(data, preds), config_(config) {}

    double operator()(const RuleList& list) const {
        const double base = config_.objective == SearchObjective::autac ? autac_hat(eval_.curve(list))
                                                                        : eval_.standalone_accuracy(list);
        return make_objective(base, config_.alpha, list.size()).objective;
    }

    const CurveEvaluator& evaluator() const { return eval_; }

 private:
    CurveEvaluator eval_;
    const SearchConfig& config_;
};

}  // namespace

const char* to_string(Move move) {
    switch (move) {
        case Move::add: return "add";
        case Move::remove: return "remove";
        case Move::swap: return "swap";
        case Move::replace: return "replace";
        case Move::none: return "none";
    }
    return "none";
}

RuleList init_list(const CandidatePool& pool, std::size_t k, Rng& rng) {
    if (pool.size() < k) {
        throw SearchError("candidate pool has " + std::to_string(pool.size()) + " rules, fewer than the " +
                          std::to_string(k) + " needed to initialize");
    }
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    RuleList list;
    list.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(order[i], order[i + rng.below(order.size() - i)]);
        list.push_back(pool.rules[order[i]]);
    }
    return list;
}

Proposal propose(const RuleList& list, const CandidatePool& pool, Rng& rng, std::optional<std::size_t> max_rules) {
    const std::size_t m = list.size();
    const std::size_t j = pool.size();
    for (int attempt = 0; attempt < kMaxProposalAttempts; ++attempt) {
        const double delta = rng.uniform();
        if (delta < 0.25) {
            if (j == 0 || (max_rules && m >= *max_rules)) continue;
            const Rule& rule = pool.rules[rng.below(j)];
            const std::size_t pos = rng.below(m + 1);
            if (contains(list, rule)) continue;
            RuleList next = list;
            next.insert(next.begin() + static_cast<std::ptrdiff_t>(pos), rule);
            return {std::move(next), Move::add};
        }
        if (delta < 0.5) {
            if (m < 1) continue;
            RuleList next = list;
            next.erase(next.begin() + static_cast<std::ptrdiff_t>(rng.below(m)));
            return {std::move(next), Move::remove};
        }
        if (delta < 0.75) {
            if (m < 2) continue;
            const std::size_t a = rng.below(m);
            std::size_t b = rng.below(m - 1);
            if (b >= a) ++b;
            RuleList next = list;
            std::swap(next[a], next[b]);
            return {std::move(next), Move::swap};
        }
        if (m < 1 || j == 0) continue;
        const std::size_t pos = rng.below(m);
        const Rule& rule = pool.rules[rng.below(j)];
        if (contains(list, rule)) continue;
        RuleList next = list;
        next[pos] = rule;
        return {std::move(next), Move::replace};
    }
    return {list, Move::none};
}

double temperature(std::size_t n, double c0) {
    return c0 / std::log2(1.0 + static_cast<double>(n));
}

bool accept(double delta, std::size_t n, double c0, Rng& rng) {
    const double eps = rng.uniform();
    if (delta >= 0.0) return true;
    return eps <= std::exp(delta / temperature(n, c0));
}

SearchResult run_search(const BinaryDataset& data, const PredictionVector& preds, const CandidatePool& pool,
                        const SearchConfig& config) {
    if (pool.size() == 0) throw SearchError("empty candidate pool");
    if (!(config.c0 > 0.0)) throw UsageError("initial temperature C0 must be positive");
    if (config.iterations < 1) throw UsageError("iteration budget must be at least 1");
    if (config.alpha < 0.0) throw UsageError("alpha must be non-negative");
    if (config.max_rules && config.init_size > *config.max_rules) {
        throw UsageError("initial list length exceeds the rule cap");
    }

    const Scorer score(data, preds, config);
    Rng rng(config.seed);

    RuleList current = init_list(pool, config.init_size, rng);
    double current_score = score(current);

    SearchResult result;
    result.initial_score = current_score;
    result.best = current;
    result.best_score = current_score;
    result.trace.reserve(config.iterations);

    for (std::size_t n = 1; n <= config.iterations; ++n) {
        Proposal proposal = propose(current, pool, rng, config.max_rules);
        const double proposed_score = score(proposal.list);
        const bool accepted = accept(proposed_score - current_score, n, config.c0, rng);
        if (accepted) {
            current = std::move(proposal.list);
            current_score = proposed_score;
        }
        if (current_score > result.best_score) {
            result.best = current;
            result.best_score = current_score;
        }
        result.trace.push_back(TraceRecord{n, proposal.move, proposed_score, accepted, result.best_score});
    }

    result.curve = score.evaluator().curve(result.best);
    result.value = make_objective(autac_hat(result.curve), config.alpha, result.best.size());
    return result;
}

std::optional<std::size_t> choose_alpha(const std::vector<AlphaCandidate>& candidates, bool* tie) {
    std::optional<std::size_t> chosen;
    bool tied = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const AlphaCandidate& cand = candidates[i];
        if (!cand.admissible) continue;
        if (!chosen) {
            chosen = i;
            continue;
        }
        const AlphaCandidate& incumbent = candidates[*chosen];
        if (cand.autac > incumbent.autac) {
            tied = false;
            chosen = i;
        } else if (cand.autac == incumbent.autac) {
            tied = true;
            if (cand.alpha > incumbent.alpha) chosen = i;
        }
    }
    if (tie) *tie = tied;
    return chosen;
}

AlphaTuneReport tune_alpha(const BinaryDataset& data, const PredictionVector& preds, const CandidatePool& pool,
                           const std::vector<double>& candidates, std::size_t max_rules, const SearchConfig& base) {
    if (candidates.empty()) throw UsageError("no alpha candidates given");
    AlphaTuneReport report;
    std::vector<SearchResult> results;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        SearchConfig config = base;
        config.alpha = candidates[i];
        config.seed = derive_seed(base.seed, i);
        results.push_back(run_search(data, preds, pool, config));
        const SearchResult& result = results.back();

        AlphaCandidate cand;
        cand.alpha = candidates[i];
        cand.rules = result.best.size();
        for (const Rule& r : result.best) cand.conditions += r.antecedent.size();
        cand.autac = result.value.autac;
        cand.admissible = cand.rules < max_rules;
        report.candidates.push_back(cand);
    }
    const auto chosen = choose_alpha(report.candidates, &report.tie);
    if (!chosen) {
        throw SearchError("every alpha candidate produced " + std::to_string(max_rules) +
                          " or more rules; use a larger alpha or raise the rule limit");
    }
    report.chosen = *chosen;
    report.result = std::move(results[*chosen]);
    return report;
}

}  // namespace crl
