#include "crl/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "crl/error.hpp"
#include "crl/format.hpp"

namespace crl {

Json TrainOptions::to_json() const {
    Json j;
    j["quantiles"] = quantiles;
    j["gamma"] = gamma;
    j["max_cardinality"] = max_cardinality;
    j["mining_fraction"] = mining_fraction;
    j["alpha"] = search.alpha;
    j["c0"] = search.c0;
    j["iterations"] = search.iterations;
    j["seed"] = search.seed;
    j["init_size"] = search.init_size;
    j["max_rules_guard"] = search.max_rules ? Json(*search.max_rules) : Json(nullptr);
    j["tune_alpha"] = tune_alpha;
    if (tune_alpha) {
        j["alpha_candidates"] = alpha_candidates;
        j["max_rules"] = max_rules;
    }
    return j;
}

TrainOutcome train_model(const RawTable& table, const PredictionVector& preds, const TrainOptions& options) {
    if (preds.size() != table.n_rows()) throw DataError("black-box predictions not aligned with training table");
    TrainOutcome out;
    out.manifest = fit_binarization(table, options.quantiles);
    out.data = apply_binarization(out.manifest, table);

    std::optional<MiningSample> sample;
    if (options.mining_fraction < 1.0) {
        sample = subsample_for_mining(out.data, options.mining_fraction, derive_seed(options.search.seed, 7));
    }
    out.pool = mine_rules(out.data, options.gamma, options.max_cardinality, sample);

    if (options.tune_alpha) {
        AlphaTuneReport report =
            tune_alpha(out.data, preds, out.pool, options.alpha_candidates, options.max_rules, options.search);
        out.tuning = report.candidates;
        out.alpha = report.chosen_alpha();
        out.search = std::move(report.result);
    } else {
        out.alpha = options.search.alpha;
        out.search = run_search(out.data, preds, out.pool, options.search);
    }

    Json training = options.to_json();
    training["chosen_alpha"] = out.alpha;
    training["train_rows"] = out.data.n_rows();
    training["n_features"] = out.data.n_features();
    training["pool_size"] = out.pool.size();
    training["autac"] = out.search.value.autac;
    training["objective"] = make_objective(out.search.value.autac, out.alpha, out.search.best.size()).objective;
    out.model = make_model_file(out.search.best, out.search.curve, out.data.feature_names(), out.manifest,
                                std::move(training));
    return out;
}

Evaluation evaluate_model(const ModelFile& model, const RawTable& table, const PredictionVector& preds,
                          const std::optional<Binarization>& manifest) {
    if (preds.size() != table.n_rows()) throw DataError("black-box predictions not aligned with evaluation table");
    Evaluation ev;
    if (manifest) {
        ev.data = apply_binarization(*manifest, table);
    } else if (model.binarization) {
        ev.data = apply_binarization(*model.binarization, table);
    } else {
        ev.data = binarize(table);
    }
    ev.rules = resolve_rules(model, ev.data);
    ev.curve = tradeoff_curve(ev.rules, ev.data, preds);
    ev.autac = autac_hat(ev.curve);
    return ev;
}

Summary summarize(std::span<const double> values) {
    Summary s;
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

ExperimentReport run_cv(const RawTable& table, const PredictionVector& preds, const CvOptions& options) {
    if (preds.size() != table.n_rows()) throw DataError("black-box predictions not aligned with table");
    const FoldSplit split = split_folds(table.labels, options.folds, options.seed);
    ExperimentReport report;
    report.stratified = split.stratified;
    report.config = options.train.to_json();
    report.config["folds"] = options.folds;
    report.config["fold_seed"] = options.seed;
    report.config["stratified"] = split.stratified;

    std::vector<double> test_autacs;
    std::vector<double> train_autacs;
    for (std::size_t f = 0; f < options.folds; ++f) {
        const std::vector<std::size_t> train_rows = split.train_rows(f);
        const std::vector<std::size_t>& test_rows = split.folds[f];
        TrainOptions fold_options = options.train;
        fold_options.search.seed = derive_seed(options.train.search.seed, 100 + f);

        FoldResult fold;
        fold.fold = f;
        fold.train_rows = train_rows.size();
        fold.test_rows = test_rows.size();
        try {
            TrainOutcome trained = train_model(table.subset(train_rows), preds.subset(train_rows), fold_options);
            fold.alpha = trained.alpha;
            fold.train_curve = trained.search.curve;
            fold.train_autac = trained.search.value.autac;
            Evaluation ev = evaluate_model(trained.model, table.subset(test_rows), preds.subset(test_rows));
            fold.test_curve = std::move(ev.curve);
            fold.test_autac = ev.autac;
            fold.model = std::move(trained.model);
        } catch (const SearchError& e) {
            throw SearchError("fold " + std::to_string(f) + ": " + e.what());
        } catch (const DataError& e) {
            throw DataError("fold " + std::to_string(f) + ": " + e.what());
        }
        test_autacs.push_back(fold.test_autac);
        train_autacs.push_back(fold.train_autac);
        report.folds.push_back(std::move(fold));
    }
    report.test_autac = summarize(test_autacs);
    report.train_autac = summarize(train_autacs);
    return report;
}

void write_report_csv(std::ostream& out, const ExperimentReport& report) {
    out << "fold,train_rows,test_rows,alpha,rules,train_autac,test_autac\n";
    for (const FoldResult& f : report.folds) {
        out << f.fold << ',' << f.train_rows << ',' << f.test_rows << ',' << format_double(f.alpha) << ','
            << f.model.rules.size() << ',' << format_double(f.train_autac) << ',' << format_double(f.test_autac)
            << '\n';
    }
}

void write_report_text(std::ostream& out, const ExperimentReport& report) {
    char line[128];
    out << "fold   rules   alpha      train AUTAC   test AUTAC\n";
    for (const FoldResult& f : report.folds) {
        std::snprintf(line, sizeof(line), "%-6zu %-7zu %-10g %-13.4f %.4f\n", f.fold, f.model.rules.size(), f.alpha,
                      f.train_autac, f.test_autac);
        out << line;
    }
    std::snprintf(line, sizeof(line), "mean (std)                %.3f (%.3f)   %.3f (%.3f)\n", report.train_autac.mean,
                  report.train_autac.std, report.test_autac.mean, report.test_autac.std);
    out << line;
}

}  // namespace crl
