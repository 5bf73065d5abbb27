/**
 * \file main.cpp
 *
 * Command-line driver: run verification tasks, compare the search engine
 * against the merge baseline, and generate reachability-tuned random tasks.
 *
 * Exit codes: 0 on completed runs (including INFEASIBLE and TIMEOUT
 * results), 2 on usage or input errors, 3 on internal invariant violations.
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/model_io.hpp"
#include "treeverify/oracle.hpp"
#include "treeverify/search.hpp"
#include "treeverify/task_io.hpp"
#include "treeverify/tasks.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace treeverify;

namespace {

    std::string index_name(const char* stem, int index, const char* ext)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s_%03d.%s", stem, index, ext);
        return buf;
    }

    /** One bounds computation on a single ensemble, any algorithm. */
    BoundsTrace run_single(const Ensemble& ensemble, Sense sense,
            const ConstraintPtr& constraint, bool pure_box, Algorithm alg,
            const TaskConfig& cfg)
    {
        if (alg == Algorithm::VERITAS) {
            SearchProblem p;
            p.ensemble = &ensemble;
            p.constraint = constraint;
            p.sense = sense;
            return run_search(p, to_search_config(cfg)).trace;
        }
        if (alg == Algorithm::MERGE) {
            if (!pure_box)
                throw InputError("the merge baseline supports box-shaped "
                        "constraints only (box, linf_ball, all_of of those)");
            BoundsTrace infeasible;
            infeasible.status = Status::INFEASIBLE;
            Box prune;
            try {
                if (constraint)
                    prune = constraint->prune_box();
            } catch (const InfeasibleConstraint&) {
                return infeasible;
            }
            if (sense == Sense::MINIMIZE)
                return negated_trace(
                        run_merge(ensemble.negated(), prune, to_merge_config(cfg)));
            return run_merge(ensemble, prune, to_merge_config(cfg));
        }

        // oracle: exhaustive enumeration, one exact trace entry
        BoundsTrace trace;
        Stopwatch clock;
        std::optional<OutputConfig> best;
        try {
            best = (sense == Sense::MINIMIZE ? exact_min : exact_max)(
                    ensemble, Box::everything(), constraint.get(),
                    OracleConfig{});
        } catch (const InfeasibleConstraint&) {
        }
        if (!best.has_value()) {
            trace.status = Status::INFEASIBLE;
            return trace;
        }
        trace.record(TraceEntry{clock.seconds(), best->value, best->value,
                extract_witness(best->box, ensemble.num_attributes()), {}});
        trace.status = Status::EXACT;
        return trace;
    }

    /** model2(x2) - model1(x1) maximization, search engine or oracle. */
    BoundsTrace run_pair(const Ensemble& first, const Ensemble& second,
            const JointConstraintPtr& constraint, Algorithm alg,
            const TaskConfig& cfg)
    {
        if (alg == Algorithm::MERGE)
            throw InputError("the merge baseline supports single-instance "
                    "tasks only");
        if (alg == Algorithm::VERITAS) {
            PairProblem p;
            p.ensemble1 = &first;
            p.ensemble2 = &second;
            p.constraint = constraint;
            return run_search_two_instance(p, to_search_config(cfg)).trace;
        }

        BoundsTrace trace;
        Stopwatch clock;
        std::optional<DiffConfig> best;
        try {
            best = exact_diff_max(first, second, constraint.get());
        } catch (const InfeasibleConstraint&) {
        }
        if (!best.has_value()) {
            trace.status = Status::INFEASIBLE;
            return trace;
        }
        trace.record(TraceEntry{clock.seconds(), best->diff, best->diff,
                extract_witness(best->first.box, first.num_attributes()),
                extract_witness(best->second.box, second.num_attributes())});
        trace.status = Status::EXACT;
        return trace;
    }

    int run_random_batch(const LoadedTask& task, const fs::path& out, int jobs)
    {
        const Ensemble& ensemble = task.models.front();
        const RandomTasksFields& rt = *task.random_tasks;

        struct Item {
            std::optional<RandomTaskSpec> spec;
            FloatT target = 0.0;
            std::string error;
            Status status = Status::TIMEOUT;
        };
        std::vector<Item> items(rt.count);

        // generation is sequential: deterministic per seed, and it touches
        // every leaf box so the per-tree caches are warm before the
        // read-only parallel phase
        for (int i = 0; i < rt.count; ++i) {
            items[i].target = rt.fractions[i % rt.fractions.size()];
            try {
                items[i].spec = generate_random_task(ensemble, items[i].target,
                        task.config.seed + static_cast<std::uint64_t>(i));
            } catch (const GenerationFailed& e) {
                items[i].error = std::string("GENERATION_FAILED: ") + e.what();
            } catch (const std::invalid_argument& e) {
                items[i].error = std::string("GENERATION_FAILED: ") + e.what();
            }
        }

        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= rt.count)
                    break;
                Item& item = items[i];
                if (!item.spec.has_value())
                    continue;
                try {
                    TaskConfig cfg = task.config;
                    cfg.seed = item.spec->seed;
                    write_file((out / index_name("task", i, "json")).string(),
                            format_generated_task_json(task.model_path,
                                    *item.spec, cfg));
                    ConstraintPtr c;
                    if (!item.spec->constraint_box.is_everything())
                        c = std::make_shared<BoxConstraint>(item.spec->constraint_box);
                    BoundsTrace trace = run_single(ensemble, Sense::MAXIMIZE, c,
                            true, cfg.algorithm, cfg);
                    item.status = trace.status;
                    std::string trace_name = index_name("trace", i, "csv");
                    write_file((out / trace_name).string(),
                            format_trace_csv(trace));
                    write_file((out / index_name("result", i, "json")).string(),
                            format_result_json(trace, trace_name));
                } catch (const std::exception& e) {
                    item.error = e.what();
                }
            }
        };

        jobs = std::max(1, jobs);
        std::vector<std::thread> pool;
        for (int j = 1; j < jobs; ++j)
            pool.emplace_back(worker);
        worker();
        for (std::thread& t : pool)
            t.join();

        nlohmann::json summary;
        summary["count"] = rt.count;
        nlohmann::json list = nlohmann::json::array();
        for (int i = 0; i < rt.count; ++i) {
            const Item& item = items[i];
            nlohmann::json e;
            e["index"] = i;
            e["target_fraction"] = item.target;
            if (item.spec.has_value()) {
                e["achieved_fraction"] = item.spec->achieved_fraction;
                e["task_file"] = index_name("task", i, "json");
            }
            if (!item.error.empty())
                e["error"] = item.error;
            else if (item.spec.has_value())
                e["status"] = to_string(item.status);
            list.push_back(std::move(e));
        }
        summary["tasks"] = std::move(list);
        write_file((out / "summary.json").string(), summary.dump(2) + "\n");
        return 0;
    }

    int cmd_run(const std::string& task_file, const std::string& out_dir,
            int jobs)
    {
        LoadedTask task = load_task_file(task_file);
        fs::path out(out_dir);
        fs::create_directories(out);

        switch (task.kind) {
            case TaskKind::ROBUSTNESS: {
                RobustnessQuery q;
                q.models = task.models;
                q.x = task.robustness->x;
                q.source_label = task.robustness->source_label;
                q.target_label = task.robustness->target_label;
                q.delta_start = task.robustness->delta_start;
                q.steps = task.robustness->steps;
                q.integer_grid = task.robustness->integer_grid;
                RobustnessResult r = robustness_search(q,
                        to_search_config(task.config));
                write_file((out / "result.json").string(),
                        format_robustness_result_json(r));
                return 0;
            }
            case TaskKind::STRESS: {
                StressResult r = stress_max(task.models.front(),
                        to_search_config(task.config),
                        to_merge_config(task.config));
                write_file((out / "trace_veritas.csv").string(),
                        format_trace_csv(r.ours));
                write_file((out / "trace_merge.csv").string(),
                        format_trace_csv(r.baseline));
                write_file((out / "result.json").string(),
                        format_result_json(r.ours, "trace_veritas.csv"));
                write_file((out / "metrics.json").string(),
                        format_metrics_json(compute_metrics(r.ours, r.baseline)));
                return 0;
            }
            case TaskKind::RANDOM_TASKS:
                return run_random_batch(task, out, jobs);
            case TaskKind::DIFF_MAXIMIZE: {
                BoundsTrace trace = run_pair(task.models[0], task.models[1],
                        task.joint_constraint, task.config.algorithm, task.config);
                write_file((out / "trace.csv").string(), format_trace_csv(trace));
                write_file((out / "result.json").string(),
                        format_result_json(trace, "trace.csv"));
                return 0;
            }
            default: {
                Sense sense = task.kind == TaskKind::MINIMIZE
                    ? Sense::MINIMIZE : Sense::MAXIMIZE;
                BoundsTrace trace = run_single(task.models.front(), sense,
                        task.constraint, task.constraints_pure_box,
                        task.config.algorithm, task.config);
                write_file((out / "trace.csv").string(), format_trace_csv(trace));
                write_file((out / "result.json").string(),
                        format_result_json(trace, "trace.csv"));
                return 0;
            }
        }
    }

    int cmd_compare(const std::string& task_file, const std::string& out_dir)
    {
        LoadedTask task = load_task_file(task_file);
        if (task.kind != TaskKind::MAXIMIZE && task.kind != TaskKind::MINIMIZE)
            throw InputError("compare runs both engines on one bounds problem; "
                    "use kind maximize or minimize");
        fs::path out(out_dir);
        fs::create_directories(out);

        Sense sense = task.kind == TaskKind::MINIMIZE
            ? Sense::MINIMIZE : Sense::MAXIMIZE;
        BoundsTrace ours = run_single(task.models.front(), sense,
                task.constraint, task.constraints_pure_box,
                Algorithm::VERITAS, task.config);
        BoundsTrace baseline = run_single(task.models.front(), sense,
                task.constraint, task.constraints_pure_box,
                Algorithm::MERGE, task.config);

        write_file((out / "trace_veritas.csv").string(), format_trace_csv(ours));
        write_file((out / "trace_merge.csv").string(), format_trace_csv(baseline));
        write_file((out / "result.json").string(),
                format_result_json(ours, "trace_veritas.csv"));
        write_file((out / "metrics.json").string(),
                format_metrics_json(compute_metrics(ours, baseline)));
        return 0;
    }

    int cmd_gen_tasks(const std::string& model_path, int count,
            const std::vector<double>& fractions, std::uint64_t seed,
            const std::string& out_dir)
    {
        if (count < 1)
            throw InputError("--count: must be at least 1");
        if (fractions.empty())
            throw InputError("--fractions: must not be empty");
        Ensemble ensemble = parse_any_single_model(read_file(model_path));
        std::string abs_model =
            fs::absolute(model_path).lexically_normal().string();
        fs::path out(out_dir);
        fs::create_directories(out);

        nlohmann::json list = nlohmann::json::array();
        for (int i = 0; i < count; ++i) {
            FloatT target = fractions[i % fractions.size()];
            nlohmann::json e;
            e["index"] = i;
            e["target_fraction"] = target;
            try {
                RandomTaskSpec spec = generate_random_task(ensemble, target,
                        seed + static_cast<std::uint64_t>(i));
                TaskConfig cfg;
                cfg.seed = spec.seed;
                std::string name = index_name("task", i, "json");
                write_file((out / name).string(),
                        format_generated_task_json(abs_model, spec, cfg));
                e["task_file"] = name;
                e["achieved_fraction"] = spec.achieved_fraction;
            } catch (const GenerationFailed& ex) {
                e["error"] = std::string("GENERATION_FAILED: ") + ex.what();
            } catch (const std::invalid_argument& ex) {
                e["error"] = std::string("GENERATION_FAILED: ") + ex.what();
            }
            list.push_back(std::move(e));
        }
        nlohmann::json summary;
        summary["count"] = count;
        summary["tasks"] = std::move(list);
        write_file((out / "gen_summary.json").string(), summary.dump(2) + "\n");
        return 0;
    }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"anytime verification of additive tree ensembles"};
    app.require_subcommand(1);

    std::string task_file, out_dir = ".", model_path;
    int jobs = 1, count = 1;
    std::uint64_t seed = 0;
    std::vector<double> fractions;

    CLI::App* run = app.add_subcommand("run",
            "execute a task file and write result.json plus traces");
    run->add_option("task", task_file, "task JSON file")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--jobs", jobs,
            "worker threads for generated-task batches");

    CLI::App* compare = app.add_subcommand("compare",
            "run the search engine and the merge baseline on one task");
    compare->add_option("task", task_file, "task JSON file")->required();
    compare->add_option("--out", out_dir, "output directory")->required();

    CLI::App* gen = app.add_subcommand("gen-tasks",
            "generate reachability-tuned box-constrained tasks");
    gen->add_option("--model", model_path, "model JSON file")->required();
    gen->add_option("--count", count, "number of tasks")->required();
    gen->add_option("--fractions", fractions,
            "target reachable-leaf fractions, comma separated")
        ->required()->delimiter(',');
    gen->add_option("--seed", seed, "base seed; task i uses seed+i");
    gen->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // help/version exit 0, usage errors exit 2
    }

    try {
        if (run->parsed())
            return cmd_run(task_file, out_dir, jobs);
        if (compare->parsed())
            return cmd_compare(task_file, out_dir);
        return cmd_gen_tasks(model_path, count, fractions, seed, out_dir);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const OracleLimitError& e) {
        std::cerr << "error: " << e.what()
                << " (the oracle enumerates exhaustively; "
                "use algorithm veritas for problems of this size)\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
