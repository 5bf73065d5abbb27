/**
 * \file task_io.hpp
 *
 * The file formats of the command-line surface: task documents (JSON),
 * constraint specifications, result/metrics documents, and the bound-trace
 * CSV. Parsing is strict: unknown keys, bad types and out-of-range values
 * raise InputError with the JSON path of the offending element.
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#ifndef TREEVERIFY_TASK_IO_HPP
#define TREEVERIFY_TASK_IO_HPP

#include "treeverify/constraints.hpp"
#include "treeverify/graph.hpp"
#include "treeverify/model_io.hpp"
#include "treeverify/search.hpp"
#include "treeverify/tasks.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treeverify {

    enum class TaskKind {
        MAXIMIZE,
        MINIMIZE,
        DIFF_MAXIMIZE, // maximize model2(x2) - model(x1) under joint constraints
        ROBUSTNESS,
        STRESS,
        RANDOM_TASKS,  // generate-and-run batch of box-constrained maximizations
    };

    enum class Algorithm { VERITAS, MERGE, ORACLE };

    const char* to_string(TaskKind k);
    const char* to_string(Algorithm a);

    /** The "config" object of a task document, with its defaults. */
    struct TaskConfig {
        FloatT epsilon_start = 0.5;
        FloatT epsilon_step = 0.1;
        double time_budget_s = FLOAT_INF;
        std::size_t node_budget = static_cast<std::size_t>(-1);
        std::size_t memory_budget_mb = 4096;
        Algorithm algorithm = Algorithm::VERITAS;
        int merge_L = 2;
        std::uint64_t seed = 0;
    };

    /** Consulted for the default memory budget (in MB) when the task's
     * config does not set one. An explicit config value wins. */
    extern const char* const MEMORY_BUDGET_ENV;

    SearchConfig to_search_config(const TaskConfig& cfg);
    MergeConfig to_merge_config(const TaskConfig& cfg);

    struct RobustnessTaskFields {
        Example x;
        int source_label = 0;
        int target_label = 0;
        FloatT delta_start = 20.0;
        int steps = 10;
        bool integer_grid = false;
    };

    struct RandomTasksFields {
        int count = 1;
        std::vector<FloatT> fractions; // cycled over the batch
    };

    /** A fully resolved task: models loaded, constraints built. */
    struct LoadedTask {
        TaskKind kind = TaskKind::MAXIMIZE;
        TaskConfig config;
        /** ROBUSTNESS: one model per class. DIFF_MAXIMIZE: [first, second].
         * Otherwise a single entry. */
        std::vector<Ensemble> models;
        ConstraintPtr constraint;            // single-instance kinds
        JointConstraintPtr joint_constraint; // DIFF_MAXIMIZE
        /** All constraints expressible as a prune box alone (box/linf_ball);
         * required by the merge baseline. */
        bool constraints_pure_box = true;
        std::optional<RobustnessTaskFields> robustness;
        std::optional<RandomTasksFields> random_tasks;
        std::string model_path; // resolved primary model path
    };

    /** Parse a task file; model paths resolve relative to its directory. */
    LoadedTask load_task_file(const std::string& task_path);

    std::string read_file(const std::string& path);
    void write_file(const std::string& path, const std::string& content);

    /** Shortest decimal form that round-trips, '.' separator; inf/-inf/nan
     * spelled out. */
    std::string format_float(double v);

    /** Header t_seconds,upper,lower; one row per entry; LF endings. */
    std::string format_trace_csv(const BoundsTrace& trace);

    /** result.json for a bounds run. Non-finite bounds appear as the strings
     * "inf" / "-inf". */
    std::string format_result_json(const BoundsTrace& trace,
            const std::string& trace_file);

    std::string format_robustness_result_json(const RobustnessResult& r);

    std::string format_metrics_json(const Metrics& m);

    /** Task document for a generated box-constrained maximize task. */
    std::string format_generated_task_json(const std::string& model_path,
            const RandomTaskSpec& spec, const TaskConfig& cfg);

} // namespace treeverify

#endif // TREEVERIFY_TASK_IO_HPP
