/**
 * \file task_io.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/task_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace treeverify {

    const char* const MEMORY_BUDGET_ENV = "TREEVERIFY_MEMORY_MB";

    const char* to_string(TaskKind k)
    {
        switch (k) {
            case TaskKind::MAXIMIZE: return "maximize";
            case TaskKind::MINIMIZE: return "minimize";
            case TaskKind::DIFF_MAXIMIZE: return "diff_maximize";
            case TaskKind::ROBUSTNESS: return "robustness";
            case TaskKind::STRESS: return "stress";
            case TaskKind::RANDOM_TASKS: return "random_tasks";
        }
        throw std::runtime_error("invalid task kind");
    }

    const char* to_string(Algorithm a)
    {
        switch (a) {
            case Algorithm::VERITAS: return "veritas";
            case Algorithm::MERGE: return "merge";
            case Algorithm::ORACLE: return "oracle";
        }
        throw std::runtime_error("invalid algorithm");
    }

    SearchConfig to_search_config(const TaskConfig& cfg)
    {
        SearchConfig s;
        s.epsilon_start = cfg.epsilon_start;
        s.epsilon_step = cfg.epsilon_step;
        s.time_budget_s = cfg.time_budget_s;
        s.node_budget = cfg.node_budget;
        s.memory_budget_bytes = cfg.memory_budget_mb << 20;
        return s;
    }

    MergeConfig to_merge_config(const TaskConfig& cfg)
    {
        MergeConfig m;
        m.sets_per_step = cfg.merge_L;
        m.time_budget_s = cfg.time_budget_s;
        m.memory_budget_bytes = cfg.memory_budget_mb << 20;
        return m;
    }

    std::string read_file(const std::string& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw InputError("cannot read file: " + path);
        std::string content((std::istreambuf_iterator<char>(in)),
                std::istreambuf_iterator<char>());
        if (in.bad())
            throw InputError("cannot read file: " + path);
        return content;
    }

    void write_file(const std::string& path, const std::string& content)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw InputError("cannot write file: " + path);
        out << content;
        out.flush();
        if (!out)
            throw InputError("cannot write file: " + path);
    }

    std::string format_float(double v)
    {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    }

    std::string format_trace_csv(const BoundsTrace& trace)
    {
        std::string out = "t_seconds,upper,lower\n";
        for (const TraceEntry& e : trace.entries) {
            out += format_float(e.t);
            out += ',';
            out += format_float(e.upper);
            out += ',';
            out += format_float(e.lower);
            out += '\n';
        }
        return out;
    }

    namespace {

        using nlohmann::json;

        json parse_json(const std::string& text)
        {
            try {
                return json::parse(text);
            } catch (const json::parse_error& e) {
                throw InputError(std::string("invalid JSON: ") + e.what());
            }
        }

        const json& require(const json& obj, const char* key,
                const std::string& path)
        {
            if (!obj.is_object())
                throw InputError(path + ": expected an object");
            auto it = obj.find(key);
            if (it == obj.end())
                throw InputError(path + ": missing key '" + key + "'");
            return *it;
        }

        void reject_unknown_keys(const json& obj,
                std::initializer_list<const char*> allowed,
                const std::string& path)
        {
            for (const auto& [key, value] : obj.items()) {
                (void) value;
                bool known = std::any_of(allowed.begin(), allowed.end(),
                        [&](const char* a) { return key == a; });
                if (!known)
                    throw InputError(path + ": unknown key '" + key + "'");
            }
        }

        FloatT get_finite(const json& v, const std::string& path)
        {
            if (!v.is_number())
                throw InputError(path + ": expected a number");
            return v.get<FloatT>();
        }

        int get_int(const json& v, const std::string& path)
        {
            if (!v.is_number_integer())
                throw InputError(path + ": expected an integer");
            return v.get<int>();
        }

        std::uint64_t get_uint64(const json& v, const std::string& path)
        {
            if (!v.is_number_integer() || (v.is_number_integer()
                        && !v.is_number_unsigned() && v.get<long long>() < 0))
                throw InputError(path + ": expected a non-negative integer");
            return v.get<std::uint64_t>();
        }

        bool get_bool(const json& v, const std::string& path)
        {
            if (!v.is_boolean())
                throw InputError(path + ": expected a boolean");
            return v.get<bool>();
        }

        std::string get_string(const json& v, const std::string& path)
        {
            if (!v.is_string())
                throw InputError(path + ": expected a string");
            return v.get<std::string>();
        }

        Example parse_example(const json& v, int num_attributes,
                const std::string& path)
        {
            if (!v.is_array())
                throw InputError(path + ": expected an array of numbers");
            if (static_cast<int>(v.size()) != num_attributes)
                throw InputError(path + ": expected " + std::to_string(num_attributes)
                        + " values, got " + std::to_string(v.size()));
            Example x;
            x.reserve(v.size());
            for (size_t i = 0; i < v.size(); ++i)
                x.push_back(get_finite(v[i], path + "[" + std::to_string(i) + "]"));
            return x;
        }

        std::vector<AttrId> parse_attr_list(const json& v, int num_attributes,
                const std::string& path, bool allow_empty)
        {
            if (!v.is_array())
                throw InputError(path + ": expected an array of attribute ids");
            if (!allow_empty && v.empty())
                throw InputError(path + ": must not be empty");
            std::vector<AttrId> attrs;
            for (size_t i = 0; i < v.size(); ++i) {
                std::string ipath = path + "[" + std::to_string(i) + "]";
                int a = get_int(v[i], ipath);
                if (a < 0 || a >= num_attributes)
                    throw InputError(ipath + ": attribute " + std::to_string(a)
                            + " out of range [0, " + std::to_string(num_attributes) + ")");
                attrs.push_back(a);
            }
            std::vector<AttrId> sorted = attrs;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw InputError(path + ": duplicate attribute id");
            return attrs;
        }

        TaskKind parse_task_kind(const std::string& s, const std::string& path)
        {
            for (TaskKind k : {TaskKind::MAXIMIZE, TaskKind::MINIMIZE,
                    TaskKind::DIFF_MAXIMIZE, TaskKind::ROBUSTNESS,
                    TaskKind::STRESS, TaskKind::RANDOM_TASKS})
                if (s == to_string(k))
                    return k;
            throw InputError(path + ": unknown kind '" + s + "' (known: maximize, "
                    "minimize, diff_maximize, robustness, stress, random_tasks)");
        }

        Algorithm parse_algorithm(const std::string& s, const std::string& path)
        {
            for (Algorithm a : {Algorithm::VERITAS, Algorithm::MERGE,
                    Algorithm::ORACLE})
                if (s == to_string(a))
                    return a;
            throw InputError(path + ": unknown algorithm '" + s
                    + "' (known: veritas, merge, oracle)");
        }

        TaskConfig parse_config(const json* doc, const std::string& path)
        {
            TaskConfig cfg;
            if (const char* env = std::getenv(MEMORY_BUDGET_ENV)) {
                std::size_t mb = 0;
                const char* end = env + std::string_view(env).size();
                auto res = std::from_chars(env, end, mb);
                if (res.ec != std::errc() || res.ptr != end || mb == 0)
                    throw InputError(std::string(MEMORY_BUDGET_ENV)
                            + ": expected a positive integer (MB), got '" + env + "'");
                cfg.memory_budget_mb = mb;
            }
            if (doc == nullptr)
                return cfg;
            reject_unknown_keys(*doc, {"epsilon_start", "epsilon_step",
                    "time_budget_s", "node_budget", "memory_budget_mb",
                    "algorithm", "merge_L", "seed"}, path);
            if (doc->contains("epsilon_start")) {
                cfg.epsilon_start = get_finite((*doc)["epsilon_start"],
                        path + ".epsilon_start");
                if (!(cfg.epsilon_start > 0.0) || cfg.epsilon_start > 1.0)
                    throw InputError(path + ".epsilon_start: must be in (0, 1]");
            }
            if (doc->contains("epsilon_step")) {
                cfg.epsilon_step = get_finite((*doc)["epsilon_step"],
                        path + ".epsilon_step");
                if (cfg.epsilon_step < 0.0)
                    throw InputError(path + ".epsilon_step: must be non-negative");
            }
            if (doc->contains("time_budget_s")) {
                cfg.time_budget_s = get_finite((*doc)["time_budget_s"],
                        path + ".time_budget_s");
                if (cfg.time_budget_s < 0.0)
                    throw InputError(path + ".time_budget_s: must be non-negative");
            }
            if (doc->contains("node_budget"))
                cfg.node_budget = static_cast<std::size_t>(
                        get_uint64((*doc)["node_budget"], path + ".node_budget"));
            if (doc->contains("memory_budget_mb")) {
                cfg.memory_budget_mb = static_cast<std::size_t>(get_uint64(
                        (*doc)["memory_budget_mb"], path + ".memory_budget_mb"));
                if (cfg.memory_budget_mb == 0)
                    throw InputError(path + ".memory_budget_mb: must be positive");
            }
            if (doc->contains("algorithm"))
                cfg.algorithm = parse_algorithm(get_string((*doc)["algorithm"],
                        path + ".algorithm"), path + ".algorithm");
            if (doc->contains("merge_L")) {
                cfg.merge_L = get_int((*doc)["merge_L"], path + ".merge_L");
                if (cfg.merge_L < 2)
                    throw InputError(path + ".merge_L: must be at least 2");
            }
            if (doc->contains("seed"))
                cfg.seed = get_uint64((*doc)["seed"], path + ".seed");
            return cfg;
        }

        struct ConstraintParts {
            std::vector<ConstraintPtr> on1, on2;
            std::vector<JointConstraintPtr> joint;
            bool pure_box = true;
        };

        ConstraintPtr parse_plain_constraint(const json& doc,
                const std::string& kind, int num_attributes, bool& pure_box,
                const std::string& path)
        {
            if (kind == "box") {
                reject_unknown_keys(doc, {"kind", "intervals", "instance"}, path);
                const json& ivs = require(doc, "intervals", path);
                if (!ivs.is_object())
                    throw InputError(path + ".intervals: expected an object");
                std::vector<Box::Item> items;
                for (const auto& [key, val] : ivs.items()) {
                    std::string ipath = path + ".intervals['" + key + "']";
                    int attr = -1;
                    const char* end = key.data() + key.size();
                    auto res = std::from_chars(key.data(), end, attr);
                    if (res.ec != std::errc() || res.ptr != end)
                        throw InputError(ipath + ": key must be an attribute id");
                    if (attr < 0 || attr >= num_attributes)
                        throw InputError(ipath + ": attribute out of range [0, "
                                + std::to_string(num_attributes) + ")");
                    if (!val.is_object())
                        throw InputError(ipath + ": expected an object");
                    reject_unknown_keys(val, {"lo", "hi"}, ipath);
                    FloatT lo = val.contains("lo")
                        ? get_finite(val["lo"], ipath + ".lo") : -FLOAT_INF;
                    FloatT hi = val.contains("hi")
                        ? get_finite(val["hi"], ipath + ".hi") : FLOAT_INF;
                    if (!(lo < hi))
                        throw InputError(ipath + ": lo must be below hi");
                    if (lo == -FLOAT_INF && hi == FLOAT_INF)
                        continue;
                    items.push_back({attr, Interval(lo, hi)});
                }
                return std::make_shared<BoxConstraint>(
                        Box::from_items(std::move(items)));
            }
            if (kind == "linf_ball") {
                reject_unknown_keys(doc, {"kind", "center", "delta", "instance"},
                        path);
                Example center = parse_example(require(doc, "center", path),
                        num_attributes, path + ".center");
                FloatT delta = get_finite(require(doc, "delta", path),
                        path + ".delta");
                if (!(delta > 0.0))
                    throw InputError(path + ".delta: must be positive");
                return std::make_shared<LinfBallConstraint>(std::move(center), delta);
            }
            if (kind == "at_most_k") {
                reject_unknown_keys(doc,
                        {"kind", "attrs", "k", "baseline", "instance"}, path);
                std::vector<AttrId> attrs = parse_attr_list(
                        require(doc, "attrs", path), num_attributes,
                        path + ".attrs", false);
                int k = get_int(require(doc, "k", path), path + ".k");
                if (k < 0)
                    throw InputError(path + ".k: must be non-negative");
                Example baseline = parse_example(require(doc, "baseline", path),
                        num_attributes, path + ".baseline");
                pure_box = false;
                return std::make_shared<AtMostKConstraint>(std::move(attrs), k,
                        std::move(baseline));
            }
            if (kind == "one_out_of_k") {
                reject_unknown_keys(doc, {"kind", "groups", "instance"}, path);
                const json& groups = require(doc, "groups", path);
                if (!groups.is_array() || groups.empty())
                    throw InputError(path + ".groups: expected a non-empty array");
                std::vector<std::vector<AttrId>> parsed;
                for (size_t i = 0; i < groups.size(); ++i)
                    parsed.push_back(parse_attr_list(groups[i], num_attributes,
                            path + ".groups[" + std::to_string(i) + "]", false));
                pure_box = false;
                return std::make_shared<OneOutOfKConstraint>(std::move(parsed));
            }
            if (kind == "all_of") {
                reject_unknown_keys(doc, {"kind", "parts", "instance"}, path);
                const json& parts = require(doc, "parts", path);
                if (!parts.is_array() || parts.empty())
                    throw InputError(path + ".parts: expected a non-empty array");
                std::vector<ConstraintPtr> sub;
                for (size_t i = 0; i < parts.size(); ++i) {
                    std::string ppath = path + ".parts[" + std::to_string(i) + "]";
                    const json& p = parts[i];
                    if (!p.is_object())
                        throw InputError(ppath + ": expected an object");
                    std::string pk = get_string(require(p, "kind", ppath),
                            ppath + ".kind");
                    if (pk == "differs_only")
                        throw InputError(ppath + ": differs_only cannot be nested");
                    if (p.contains("instance"))
                        throw InputError(ppath
                                + ": tag the instance on the all_of group");
                    sub.push_back(parse_plain_constraint(p, pk, num_attributes,
                            pure_box, ppath));
                }
                return std::make_shared<ConjunctionConstraint>(std::move(sub));
            }
            throw InputError(path + ".kind: unknown constraint kind '" + kind
                    + "' (known: box, linf_ball, at_most_k, one_out_of_k, "
                    "differs_only, all_of)");
        }

        void parse_constraint(const json& doc, int na1, int na2, bool pair_mode,
                ConstraintParts& acc, const std::string& path)
        {
            if (!doc.is_object())
                throw InputError(path + ": expected an object");
            std::string kind = get_string(require(doc, "kind", path),
                    path + ".kind");
            if (kind == "differs_only") {
                if (!pair_mode)
                    throw InputError(path
                            + ": differs_only needs a two-instance task");
                reject_unknown_keys(doc, {"kind", "attrs"}, path);
                std::vector<AttrId> attrs = parse_attr_list(
                        require(doc, "attrs", path), std::max(na1, na2),
                        path + ".attrs", true);
                acc.joint.push_back(
                        std::make_shared<DiffersOnlyConstraint>(std::move(attrs)));
                acc.pure_box = false;
                return;
            }
            int instance = 1;
            if (doc.contains("instance")) {
                instance = get_int(doc["instance"], path + ".instance");
                if (instance != 1 && instance != 2)
                    throw InputError(path + ".instance: must be 1 or 2");
                if (instance == 2 && !pair_mode)
                    throw InputError(path + ".instance: only two-instance tasks "
                            "have an instance 2");
            }
            int na = (instance == 2) ? na2 : na1;
            ConstraintPtr c = parse_plain_constraint(doc, kind, na,
                    acc.pure_box, path);
            (instance == 2 ? acc.on2 : acc.on1).push_back(std::move(c));
        }

        ConstraintParts parse_constraints(const json& doc, int na1, int na2,
                bool pair_mode)
        {
            ConstraintParts acc;
            if (!doc.contains("constraints"))
                return acc;
            const json& list = doc["constraints"];
            if (!list.is_array())
                throw InputError("$.constraints: expected an array");
            for (size_t i = 0; i < list.size(); ++i)
                parse_constraint(list[i], na1, na2, pair_mode, acc,
                        "$.constraints[" + std::to_string(i) + "]");
            return acc;
        }

        ConstraintPtr compose(std::vector<ConstraintPtr> parts)
        {
            if (parts.empty())
                return nullptr;
            if (parts.size() == 1)
                return std::move(parts.front());
            return std::make_shared<ConjunctionConstraint>(std::move(parts));
        }

        void forbid_constraints(const json& doc, const char* why)
        {
            if (doc.contains("constraints") && !doc["constraints"].empty())
                throw InputError(std::string("$.constraints: ") + why);
        }

    } // namespace

    LoadedTask load_task_file(const std::string& task_path)
    {
        namespace fs = std::filesystem;
        json doc = parse_json(read_file(task_path));
        if (!doc.is_object())
            throw InputError("$: expected an object");

        TaskKind kind = parse_task_kind(
                get_string(require(doc, "kind", "$"), "$.kind"), "$.kind");

        switch (kind) {
            case TaskKind::DIFF_MAXIMIZE:
                reject_unknown_keys(doc, {"kind", "model", "model2",
                        "constraints", "config"}, "$");
                break;
            case TaskKind::ROBUSTNESS:
                reject_unknown_keys(doc, {"kind", "model", "constraints",
                        "config", "example", "source_label", "target_label",
                        "delta_start", "steps", "integer_grid"}, "$");
                break;
            case TaskKind::RANDOM_TASKS:
                reject_unknown_keys(doc, {"kind", "model", "constraints",
                        "config", "count", "fractions"}, "$");
                break;
            default:
                // "generated" holds metadata emitted by the task generator
                reject_unknown_keys(doc, {"kind", "model", "constraints",
                        "config", "generated"}, "$");
                break;
        }

        LoadedTask task;
        task.kind = kind;
        task.config = parse_config(
                doc.contains("config") ? &doc["config"] : nullptr, "$.config");

        fs::path base = fs::path(task_path).parent_path();
        auto resolve = [&](const std::string& p) {
            fs::path fp(p);
            return (fp.is_absolute() ? fp : base / fp).lexically_normal().string();
        };
        task.model_path = resolve(get_string(require(doc, "model", "$"), "$.model"));

        if (kind == TaskKind::ROBUSTNESS) {
            task.models = parse_multiclass_model(read_file(task.model_path));
            int na = task.models.front().num_attributes();
            int num_classes = static_cast<int>(task.models.size());
            forbid_constraints(doc,
                    "robustness tasks take their region from delta");

            RobustnessTaskFields f;
            f.x = parse_example(require(doc, "example", "$"), na, "$.example");
            f.source_label = get_int(require(doc, "source_label", "$"),
                    "$.source_label");
            f.target_label = get_int(require(doc, "target_label", "$"),
                    "$.target_label");
            if (f.source_label < 0 || f.source_label >= num_classes)
                throw InputError("$.source_label: out of range [0, "
                        + std::to_string(num_classes) + ")");
            if (f.target_label < 0 || f.target_label >= num_classes)
                throw InputError("$.target_label: out of range [0, "
                        + std::to_string(num_classes) + ")");
            if (f.source_label == f.target_label)
                throw InputError("$.target_label: must differ from source_label");
            if (doc.contains("delta_start")) {
                f.delta_start = get_finite(doc["delta_start"], "$.delta_start");
                if (!(f.delta_start > 0.0))
                    throw InputError("$.delta_start: must be positive");
            }
            if (doc.contains("steps")) {
                f.steps = get_int(doc["steps"], "$.steps");
                if (f.steps < 1)
                    throw InputError("$.steps: must be at least 1");
            }
            if (doc.contains("integer_grid"))
                f.integer_grid = get_bool(doc["integer_grid"], "$.integer_grid");
            task.robustness = std::move(f);
            return task;
        }

        if (kind == TaskKind::DIFF_MAXIMIZE) {
            std::string model2_path = resolve(
                    get_string(require(doc, "model2", "$"), "$.model2"));
            task.models.push_back(parse_any_single_model(read_file(task.model_path)));
            task.models.push_back(parse_any_single_model(read_file(model2_path)));
            ConstraintParts acc = parse_constraints(doc,
                    task.models[0].num_attributes(),
                    task.models[1].num_attributes(), true);
            task.constraints_pure_box = acc.pure_box;
            if (!acc.on1.empty() || !acc.on2.empty() || !acc.joint.empty())
                task.joint_constraint = std::make_shared<JointConjunction>(
                        std::move(acc.on1), std::move(acc.on2),
                        std::move(acc.joint));
            return task;
        }

        task.models.push_back(parse_any_single_model(read_file(task.model_path)));
        int na = task.models.front().num_attributes();

        if (kind == TaskKind::STRESS) {
            forbid_constraints(doc, "stress tasks are unconstrained");
            return task;
        }

        if (kind == TaskKind::RANDOM_TASKS) {
            forbid_constraints(doc,
                    "random_tasks tasks generate their own constraints");
            RandomTasksFields f;
            f.count = get_int(require(doc, "count", "$"), "$.count");
            if (f.count < 1)
                throw InputError("$.count: must be at least 1");
            const json& fr = require(doc, "fractions", "$");
            if (!fr.is_array() || fr.empty())
                throw InputError("$.fractions: expected a non-empty array");
            for (size_t i = 0; i < fr.size(); ++i)
                f.fractions.push_back(get_finite(fr[i],
                        "$.fractions[" + std::to_string(i) + "]"));
            task.random_tasks = std::move(f);
            return task;
        }

        ConstraintParts acc = parse_constraints(doc, na, na, false);
        task.constraints_pure_box = acc.pure_box;
        task.constraint = compose(std::move(acc.on1));
        return task;
    }

    namespace {

        json json_bound(FloatT v)
        {
            if (std::isnan(v))
                return "nan";
            if (!std::isfinite(v))
                return v > 0 ? "inf" : "-inf";
            return v;
        }

        json json_example(const std::optional<Example>& x)
        {
            if (!x.has_value())
                return nullptr;
            json a = json::array();
            for (FloatT d : *x)
                a.push_back(d);
            return a;
        }

        json config_json(const TaskConfig& cfg)
        {
            json c;
            c["epsilon_start"] = cfg.epsilon_start;
            c["epsilon_step"] = cfg.epsilon_step;
            if (std::isfinite(cfg.time_budget_s))
                c["time_budget_s"] = cfg.time_budget_s;
            if (cfg.node_budget != static_cast<std::size_t>(-1))
                c["node_budget"] = cfg.node_budget;
            c["memory_budget_mb"] = cfg.memory_budget_mb;
            c["algorithm"] = to_string(cfg.algorithm);
            c["merge_L"] = cfg.merge_L;
            c["seed"] = cfg.seed;
            return c;
        }

    } // namespace

    std::string format_result_json(const BoundsTrace& trace,
            const std::string& trace_file)
    {
        json j;
        j["status"] = to_string(trace.status);
        j["upper"] = json_bound(trace.final_upper());
        j["lower"] = json_bound(trace.final_lower());
        j["witness"] = json_example(trace.final_witness());
        std::optional<Example> w2;
        if (!trace.entries.empty())
            w2 = trace.entries.back().witness2;
        j["witness2"] = json_example(w2);
        j["trace_file"] = trace_file;
        return j.dump(2) + "\n";
    }

    std::string format_robustness_result_json(const RobustnessResult& r)
    {
        json j;
        j["status"] = r.proven_exact ? "EXACT" : "TIMEOUT";
        j["delta_lower"] = r.delta_lower;
        j["proven_exact"] = r.proven_exact;
        j["witness"] = json_example(r.adversarial_witness);
        json steps = json::array();
        for (const RobustnessStep& s : r.per_step) {
            json e;
            e["delta"] = s.delta;
            e["upper"] = json_bound(s.upper);
            e["decision"] = s.may_exist ? "may_exist" : "free";
            e["found_witness"] = s.found_witness;
            steps.push_back(std::move(e));
        }
        j["per_step"] = std::move(steps);
        return j.dump(2) + "\n";
    }

    std::string format_metrics_json(const Metrics& m)
    {
        json j;
        j["ttb_seconds"] = m.ttb.has_value() ? json(*m.ttb) : json("NOT_REACHED");
        j["gap_ours"] = json_bound(m.gap_ours);
        j["gap_baseline"] = json_bound(m.gap_baseline);
        j["exact_ours"] = m.exact_ours;
        j["exact_baseline"] = m.exact_baseline;
        j["degenerate_ours"] = m.degenerate_ours;
        j["degenerate_baseline"] = m.degenerate_baseline;
        return j.dump(2) + "\n";
    }

    std::string format_generated_task_json(const std::string& model_path,
            const RandomTaskSpec& spec, const TaskConfig& cfg)
    {
        json j;
        j["kind"] = "maximize";
        j["model"] = model_path;
        json constraints = json::array();
        if (!spec.constraint_box.is_everything()) {
            json intervals = json::object();
            for (const auto& [attr, iv] : spec.constraint_box) {
                json o = json::object();
                if (iv.lo != -FLOAT_INF)
                    o["lo"] = iv.lo;
                if (iv.hi != FLOAT_INF)
                    o["hi"] = iv.hi;
                intervals[std::to_string(attr)] = std::move(o);
            }
            constraints.push_back(json{{"kind", "box"}, {"intervals", intervals}});
        }
        j["constraints"] = std::move(constraints);
        j["config"] = config_json(cfg);
        j["generated"] = json{{"seed", spec.seed},
                {"target_fraction", spec.target_fraction},
                {"achieved_fraction", spec.achieved_fraction}};
        return j.dump(2) + "\n";
    }

} // namespace treeverify
