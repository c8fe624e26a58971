#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "crl/companion.hpp"
#include "crl/error.hpp"
#include "crl/experiment.hpp"
#include "crl/format.hpp"
#include "crl/miner.hpp"
#include "crl/search.hpp"
#include "crl/serialize.hpp"
#include "crl/synth.hpp"
#include "crl/tabular.hpp"

namespace crl::cli {

namespace {

struct DataFlags {
    std::string path;
    std::string label_column = "y";
    std::string positive_value;
    std::string delimiter = ",";
    std::vector<std::string> categorical;

    void add(CLI::App* cmd) {
        cmd->add_option("--data", path, "Delimited input table with header row")->required();
        cmd->add_option("--label-column", label_column, "Name of the label column")->capture_default_str();
        cmd->add_option("--positive-value", positive_value, "Label value mapped to class 1 (default: larger value)");
        cmd->add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();
        cmd->add_option("--categorical", categorical, "Treat these columns as categorical");
    }

    RawTable load() const {
        if (delimiter.size() != 1) throw UsageError("--delimiter must be a single character");
        TableOptions opts;
        opts.label_column = label_column;
        if (!positive_value.empty()) opts.positive_value = positive_value;
        opts.delimiter = delimiter.front();
        opts.categorical = categorical;
        return load_table(path, opts);
    }
};

struct BlackboxFlags {
    std::string preds;
    std::string pred_column;
    std::optional<double> oracle_accuracy;
    std::uint64_t oracle_seed = 0;

    void add(CLI::App* cmd) {
        cmd->add_option("--preds", preds, "Black-box predictions: one 0/1 per line, or CSV with --pred-column");
        cmd->add_option("--pred-column", pred_column, "Prediction column in a CSV predictions file");
        cmd->add_option("--oracle-accuracy", oracle_accuracy, "Use a synthetic black box of this accuracy instead");
        cmd->add_option("--oracle-seed", oracle_seed, "Seed of the synthetic black box")->capture_default_str();
    }

    PredictionVector load(const RawTable& table, char delimiter) const {
        if (!preds.empty()) {
            std::optional<std::string> col;
            if (!pred_column.empty()) col = pred_column;
            return load_predictions(preds, table.n_rows(), col, delimiter);
        }
        if (oracle_accuracy) return synth_oracle(table.labels, *oracle_accuracy, oracle_seed);
        throw UsageError("missing black-box predictions: pass --preds or --oracle-accuracy");
    }
};

struct TrainFlags {
    TrainOptions options;
    std::optional<std::size_t> max_rules_guard;

    void add(CLI::App* cmd, bool tuning_flags) {
        SearchConfig& s = options.search;
        cmd->add_option("--alpha", s.alpha, "Rule-count penalty")->capture_default_str();
        cmd->add_option("--c0", s.c0, "Initial annealing temperature")->capture_default_str();
        cmd->add_option("--iters", s.iterations, "Search iterations")->capture_default_str();
        cmd->add_option("--seed", s.seed, "Search seed")->capture_default_str();
        cmd->add_option("--init-size", s.init_size, "Initial list length")->capture_default_str();
        cmd->add_option("--max-rules-guard", max_rules_guard, "Hard cap on list length during search");
        cmd->add_option("--gamma", options.gamma, "Minimum class support of mined rules")->capture_default_str();
        cmd->add_option("--max-card", options.max_cardinality, "Maximum conditions per rule")->capture_default_str();
        cmd->add_option("--quantiles", options.quantiles, "Quantile bins for numeric columns")->capture_default_str();
        cmd->add_option("--mining-fraction", options.mining_fraction, "Row fraction used for mining")
            ->capture_default_str();
        if (tuning_flags) {
            cmd->add_flag("--tune", options.tune_alpha, "Tune alpha over the candidate list");
        }
        cmd->add_option("--alpha-candidates", options.alpha_candidates, "Alpha candidates for tuning");
        cmd->add_option("--max-rules", options.max_rules, "Tuning admissibility: rule count must stay below this")
            ->capture_default_str();
    }

    TrainOptions resolved() const {
        TrainOptions o = options;
        o.search.max_rules = max_rules_guard;
        return o;
    }
};

void ensure_parent(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

void write_curve(const std::string& path, const TradeoffCurve& curve) {
    ensure_parent(path);
    std::ostringstream ss;
    write_curve_csv(ss, curve);
    write_text_file(path, ss.str());
}

std::optional<Binarization> load_manifest(const std::string& path) {
    if (path.empty()) return std::nullopt;
    try {
        return binarization_from_json(Json::parse(read_text_file(path)));
    } catch (const Json::exception& e) {
        throw DataError("manifest '" + path + "' is not valid JSON: " + e.what());
    }
}

void print_curve_summary(std::ostream& out, const TradeoffCurve& curve) {
    out << "rules: " << curve.rules() << "\n";
    out << "blackbox accuracy: " << format_double(curve.points.front().accuracy) << "\n";
    out << "coverage: " << format_double(curve.points.back().transparency) << "\n";
    out << "AUTAC: " << format_double(autac_hat(curve)) << "\n";
}

void print_tuning(std::ostream& out, const std::vector<AlphaCandidate>& tuning, double chosen) {
    out << "alpha,rules,conditions,train_autac,admissible\n";
    for (const AlphaCandidate& c : tuning) {
        out << format_double(c.alpha) << ',' << c.rules << ',' << c.conditions << ',' << format_double(c.autac) << ','
            << (c.admissible ? 1 : 0) << '\n';
    }
    out << "chosen alpha: " << format_double(chosen) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Companion rule lists: train, evaluate and serve rule lists paired with a black box"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Write the planted-rule benchmark dataset and black box");
    std::string synth_dir = ".";
    PlantedOptions planted;
    synth->add_option("--out-dir", synth_dir, "Output directory")->capture_default_str();
    synth->add_option("--rows", planted.rows, "Row count")->capture_default_str();
    synth->add_option("--oracle-accuracy", planted.blackbox_accuracy, "Black-box accuracy")->capture_default_str();
    synth->add_option("--seed", planted.seed, "Generator seed")->capture_default_str();

    // mine
    auto* mine = app.add_subcommand("mine", "Mine the candidate rule pool");
    DataFlags mine_data;
    TrainFlags mine_train;
    std::string pool_out = "pool.json";
    mine_data.add(mine);
    mine->add_option("--gamma", mine_train.options.gamma, "Minimum class support")->capture_default_str();
    mine->add_option("--max-card", mine_train.options.max_cardinality, "Maximum conditions per rule")
        ->capture_default_str();
    mine->add_option("--quantiles", mine_train.options.quantiles, "Quantile bins")->capture_default_str();
    mine->add_option("--mining-fraction", mine_train.options.mining_fraction, "Row fraction used for mining")
        ->capture_default_str();
    mine->add_option("--seed", mine_train.options.search.seed, "Subsampling seed")->capture_default_str();
    mine->add_option("--out", pool_out, "Pool JSON output")->capture_default_str();

    // train
    auto* train = app.add_subcommand("train", "Train a companion rule list");
    DataFlags train_data;
    BlackboxFlags train_bb;
    TrainFlags train_flags;
    std::string model_out = "model.json", curve_out = "curve.csv", trace_out = "trace.csv", manifest_out;
    train_data.add(train);
    train_bb.add(train);
    train_flags.add(train, true);
    train->add_option("--out-model", model_out, "Model JSON output")->capture_default_str();
    train->add_option("--out-curve", curve_out, "Training curve CSV output")->capture_default_str();
    train->add_option("--out-trace", trace_out, "Search trace CSV output")->capture_default_str();
    train->add_option("--out-manifest", manifest_out, "Also write the binarization manifest here");

    // tune
    auto* tune = app.add_subcommand("tune", "Tune alpha on the training data");
    DataFlags tune_data;
    BlackboxFlags tune_bb;
    TrainFlags tune_flags;
    std::string tune_model_out;
    tune_data.add(tune);
    tune_bb.add(tune);
    tune_flags.add(tune, false);
    tune->add_option("--out-model", tune_model_out, "Write the chosen model here");

    // evaluate / pair
    struct EvalFlags {
        DataFlags data;
        BlackboxFlags bb;
        std::string model, manifest, curve_out;
    };
    EvalFlags eval_flags, pair_flags;
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a trained model on (held-out) data");
    auto* pair = app.add_subcommand("pair", "Score an independently trained rule list paired with the black box");
    for (auto [cmd, flags] : {std::pair{evaluate, &eval_flags}, std::pair{pair, &pair_flags}}) {
        flags->data.add(cmd);
        flags->bb.add(cmd);
        cmd->add_option("--model", flags->model, "Model JSON (rule list)")->required();
        cmd->add_option("--manifest", flags->manifest, "Binarization manifest overriding the model's own");
        cmd->add_option("--out-curve", flags->curve_out, "Curve CSV output");
    }

    // predict
    auto* predict = app.add_subcommand("predict", "Companion predictions with per-row provenance");
    DataFlags pred_data;
    BlackboxFlags pred_bb;
    std::string pred_model, pred_manifest, pred_out = "predictions.csv";
    std::optional<std::size_t> level;
    std::optional<double> transparency;
    bool all_blackbox = false, all_rules = false;
    std::uint64_t pred_seed = 0;
    pred_data.add(predict);
    pred_bb.add(predict);
    predict->add_option("--model", pred_model, "Model JSON")->required();
    predict->add_option("--manifest", pred_manifest, "Binarization manifest overriding the model's own");
    predict->add_option("--out", pred_out, "Predictions CSV output")->capture_default_str();
    auto* o_level = predict->add_option("--level", level, "Use the first m rules");
    auto* o_t = predict->add_option("--transparency", transparency, "Stochastic CRL at transparency t");
    auto* o_bb = predict->add_flag("--all-blackbox", all_blackbox, "Black box only");
    auto* o_rules = predict->add_flag("--all-rules", all_rules, "Whole rule list, black box where uncovered");
    predict->add_option("--seed", pred_seed, "Seed of the stochastic draws")->capture_default_str();
    for (auto* a : {o_level, o_t, o_bb, o_rules}) {
        for (auto* b : {o_level, o_t, o_bb, o_rules}) {
            if (a != b) a->excludes(b);
        }
    }

    // cv
    auto* cv = app.add_subcommand("cv", "k-fold cross-validated training and evaluation");
    DataFlags cv_data;
    BlackboxFlags cv_bb;
    TrainFlags cv_flags;
    std::size_t folds = 5;
    std::uint64_t fold_seed = 0;
    std::string cv_dir = "cv";
    cv_data.add(cv);
    cv_bb.add(cv);
    cv_flags.add(cv, true);
    cv->add_option("--folds", folds, "Fold count")->capture_default_str();
    cv->add_option("--fold-seed", fold_seed, "Seed of the fold assignment")->capture_default_str();
    cv->add_option("--out-dir", cv_dir, "Directory for per-fold artifacts and the report")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*synth) {
            std::filesystem::create_directories(synth_dir);
            const PlantedBenchmark bench = make_planted_benchmark(planted);
            std::ostringstream table;
            write_table_csv(table, bench.table);
            write_text_file(synth_dir + "/data.csv", table.str());
            std::ostringstream bb;
            for (std::size_t i = 0; i < bench.blackbox.size(); ++i) bb << (bench.blackbox.preds.test(i) ? 1 : 0) << '\n';
            write_text_file(synth_dir + "/blackbox.txt", bb.str());
            ModelFile list;
            for (const auto& [conds, z] : bench.planted) list.rules.push_back(RuleRecord{conds, z, std::nullopt});
            list.training["source"] = "planted";
            write_model(synth_dir + "/planted.json", list);
            std::cout << "wrote " << planted.rows << " rows to " << synth_dir << "\n";
        } else if (*mine) {
            const RawTable table = mine_data.load();
            const BinaryDataset data = binarize(table, mine_train.options.quantiles);
            std::optional<MiningSample> sample;
            if (mine_train.options.mining_fraction < 1.0) {
                sample = subsample_for_mining(data, mine_train.options.mining_fraction, mine_train.options.search.seed);
            }
            const CandidatePool pool =
                mine_rules(data, mine_train.options.gamma, mine_train.options.max_cardinality, sample);
            ensure_parent(pool_out);
            write_text_file(pool_out, to_json(pool, data.feature_names()).dump(2) + "\n");
            std::cout << "features: " << data.n_features() << "\npool size: " << pool.size() << "\n";
        } else if (*train) {
            const RawTable table = train_data.load();
            const PredictionVector preds = train_bb.load(table, train_data.delimiter.front());
            const TrainOutcome out = train_model(table, preds, train_flags.resolved());
            ensure_parent(model_out);
            write_model(model_out, out.model);
            write_curve(curve_out, out.search.curve);
            ensure_parent(trace_out);
            std::ostringstream trace;
            write_trace_csv(trace, out.search.trace);
            write_text_file(trace_out, trace.str());
            if (!manifest_out.empty()) {
                ensure_parent(manifest_out);
                write_text_file(manifest_out, to_json(out.manifest).dump(2) + "\n");
            }
            if (!out.tuning.empty()) print_tuning(std::cout, out.tuning, out.alpha);
            std::cout << "features: " << out.data.n_features() << "\npool size: " << out.pool.size() << "\n";
            print_curve_summary(std::cout, out.search.curve);
            std::cout << "objective: " << format_double(out.search.value.autac - out.alpha * out.search.best.size())
                      << "\n";
        } else if (*tune) {
            const RawTable table = tune_data.load();
            const PredictionVector preds = tune_bb.load(table, tune_data.delimiter.front());
            TrainOptions opts = tune_flags.resolved();
            opts.tune_alpha = true;
            const TrainOutcome out = train_model(table, preds, opts);
            print_tuning(std::cout, out.tuning, out.alpha);
            if (!tune_model_out.empty()) {
                ensure_parent(tune_model_out);
                write_model(tune_model_out, out.model);
            }
        } else if (*evaluate || *pair) {
            const EvalFlags& f = *evaluate ? eval_flags : pair_flags;
            const RawTable table = f.data.load();
            const PredictionVector preds = f.bb.load(table, f.data.delimiter.front());
            const ModelFile model = read_model(f.model);
            const Evaluation ev = evaluate_model(model, table, preds, load_manifest(f.manifest));
            if (!f.curve_out.empty()) write_curve(f.curve_out, ev.curve);
            if (*pair) std::cout << "naive pairing of " << f.model << "\n";
            print_curve_summary(std::cout, ev.curve);
        } else if (*predict) {
            const RawTable table = pred_data.load();
            const PredictionVector preds = pred_bb.load(table, pred_data.delimiter.front());
            const ModelFile file = read_model(pred_model);
            std::optional<Binarization> manifest = load_manifest(pred_manifest);
            if (!manifest) manifest = file.binarization;
            const BinaryDataset data = manifest ? apply_binarization(*manifest, table) : binarize(table);
            const CompanionModel model = companion_from_file(file, data, preds);
            PredictMode mode = AllRules{};
            if (level) {
                mode = LevelMode{*level};
            } else if (transparency) {
                mode = StochasticMode{*transparency};
            } else if (all_blackbox) {
                mode = AllBlackbox{};
            } else if (!all_rules) {
                throw UsageError("choose one of --level, --transparency, --all-blackbox, --all-rules");
            }
            const auto out = predict_dataset(model, data, preds, mode, pred_seed);
            std::ostringstream ss;
            ss << "row,prediction,source\n";
            std::size_t by_rules = 0;
            for (std::size_t i = 0; i < out.size(); ++i) {
                ss << i << ',' << out[i].label << ',';
                if (out[i].rule) {
                    ss << "rule" << (*out[i].rule + 1);
                    ++by_rules;
                } else {
                    ss << "blackbox";
                }
                ss << '\n';
            }
            ensure_parent(pred_out);
            write_text_file(pred_out, ss.str());
            const double share = out.empty() ? 0.0 : static_cast<double>(by_rules) / static_cast<double>(out.size());
            std::cout << "answered by rules: " << by_rules << " / " << out.size() << " (" << format_double(share)
                      << ")\n";
            if (all_rules) std::cout << "residual (black box): " << format_double(1.0 - share) << "\n";
        } else if (*cv) {
            const RawTable table = cv_data.load();
            const PredictionVector preds = cv_bb.load(table, cv_data.delimiter.front());
            CvOptions opts;
            opts.folds = folds;
            opts.seed = fold_seed;
            opts.train = cv_flags.resolved();
            const ExperimentReport report = run_cv(table, preds, opts);
            std::filesystem::create_directories(cv_dir);
            for (const FoldResult& f : report.folds) {
                const std::string stem = cv_dir + "/fold" + std::to_string(f.fold);
                write_model(stem + "_model.json", f.model);
                write_curve(stem + "_train_curve.csv", f.train_curve);
                write_curve(stem + "_test_curve.csv", f.test_curve);
            }
            std::ostringstream csv, text;
            write_report_csv(csv, report);
            write_report_text(text, report);
            write_text_file(cv_dir + "/report.csv", csv.str());
            write_text_file(cv_dir + "/report.txt", text.str());
            write_text_file(cv_dir + "/config.json", report.config.dump(2) + "\n");
            if (!report.stratified) std::cerr << "warning: a class has fewer rows than folds; folds are unstratified\n";
            std::cout << text.str();
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
    } catch (const SearchError& e) {
        std::cerr << "search error: " << e.what() << "\n";
        return kSearchError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kDataError;
    }
    return kSuccess;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace crl::cli
