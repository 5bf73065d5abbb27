/**
 * \file model_io.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/model_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace treeverify {

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
            FloatT d = v.get<FloatT>();
            if (!std::isfinite(d))
                throw InputError(path + ": number must be finite");
            return d;
        }

        int get_int(const json& v, const std::string& path)
        {
            if (!v.is_number_integer())
                throw InputError(path + ": expected an integer");
            return v.get<int>();
        }

        void parse_node(const json& doc, Tree& tree, NodeId id,
                int num_attributes, const std::string& path)
        {
            if (!doc.is_object())
                throw InputError(path + ": expected an object");
            if (doc.contains("leaf")) {
                reject_unknown_keys(doc, {"leaf"}, path);
                tree.set_leaf_value(id, get_finite(doc["leaf"], path + ".leaf"));
                return;
            }
            if (!doc.contains("split"))
                throw InputError(path + ": node needs either 'leaf' or 'split'");
            reject_unknown_keys(doc, {"split", "left", "right"}, path);
            const json& split = doc["split"];
            std::string spath = path + ".split";
            if (!split.is_object())
                throw InputError(spath + ": expected an object");
            reject_unknown_keys(split, {"attr", "tau"}, spath);
            int attr = get_int(require(split, "attr", spath), spath + ".attr");
            FloatT tau = get_finite(require(split, "tau", spath), spath + ".tau");
            if (attr < 0 || attr >= num_attributes)
                throw InputError(spath + ".attr: attribute " + std::to_string(attr)
                        + " out of range [0, " + std::to_string(num_attributes) + ")");
            auto [left, right] = tree.split(id, attr, tau);
            parse_node(require(doc, "left", path), tree, left, num_attributes,
                    path + ".left");
            parse_node(require(doc, "right", path), tree, right, num_attributes,
                    path + ".right");
        }

        Ensemble parse_model_doc(const json& doc, const std::string& path)
        {
            if (!doc.is_object())
                throw InputError(path + ": expected an object");
            reject_unknown_keys(doc,
                    {"version", "num_attributes", "base_score", "trees"}, path);
            int version = get_int(require(doc, "version", path), path + ".version");
            if (version != 1)
                throw InputError(path + ".version: unsupported version "
                        + std::to_string(version) + " (supported: 1)");
            int num_attributes = get_int(require(doc, "num_attributes", path),
                    path + ".num_attributes");
            if (num_attributes <= 0)
                throw InputError(path + ".num_attributes: must be positive");
            FloatT base = doc.contains("base_score")
                ? get_finite(doc["base_score"], path + ".base_score") : 0.0;
            const json& trees = require(doc, "trees", path);
            if (!trees.is_array())
                throw InputError(path + ".trees: expected an array");
            if (trees.empty())
                throw InputError(path + ".trees: needs at least one tree");

            Ensemble ens(num_attributes, base);
            for (size_t i = 0; i < trees.size(); ++i) {
                Tree tree;
                parse_node(trees[i], tree, tree.root(), num_attributes,
                        path + ".trees[" + std::to_string(i) + "]");
                ens.add_tree(std::move(tree));
            }
            return ens;
        }

        json write_node(const Tree& tree, NodeId id)
        {
            if (tree.is_leaf(id))
                return json{{"leaf", tree.leaf_value(id)}};
            json j;
            j["split"] = json{{"attr", tree.split_attr(id)},
                              {"tau", tree.split_threshold(id)}};
            j["left"] = write_node(tree, tree.left(id));
            j["right"] = write_node(tree, tree.right(id));
            return j;
        }

        json write_model_doc(const Ensemble& ensemble)
        {
            json j;
            j["version"] = 1;
            j["num_attributes"] = ensemble.num_attributes();
            j["base_score"] = ensemble.base_score();
            json trees = json::array();
            for (int m = 0; m < ensemble.num_trees(); ++m)
                trees.push_back(write_node(ensemble.tree(m),
                        ensemble.tree(m).root()));
            j["trees"] = std::move(trees);
            return j;
        }

    } // namespace

    Ensemble parse_model(const std::string& text)
    {
        return parse_model_doc(parse_json(text), "$");
    }

    std::string serialize_model(const Ensemble& ensemble)
    {
        return write_model_doc(ensemble).dump(2) + "\n";
    }

    std::vector<Ensemble> parse_multiclass_model(const std::string& text)
    {
        json doc = parse_json(text);
        if (!doc.is_object())
            throw InputError("$: expected an object");
        reject_unknown_keys(doc, {"classes"}, "$");
        const json& classes = require(doc, "classes", "$");
        if (!classes.is_array() || classes.size() < 2)
            throw InputError("$.classes: expected an array of at least two models");
        std::vector<Ensemble> models;
        for (size_t i = 0; i < classes.size(); ++i)
            models.push_back(parse_model_doc(classes[i],
                    "$.classes[" + std::to_string(i) + "]"));
        for (size_t i = 1; i < models.size(); ++i)
            if (models[i].num_attributes() != models[0].num_attributes())
                throw InputError("$.classes[" + std::to_string(i)
                        + "]: attribute count differs from class 0");
        return models;
    }

    std::string serialize_multiclass_model(const std::vector<Ensemble>& models)
    {
        json j;
        json classes = json::array();
        for (const Ensemble& m : models)
            classes.push_back(write_model_doc(m));
        j["classes"] = std::move(classes);
        return j.dump(2) + "\n";
    }

    namespace {

        int gbdt_node_id(const json& node)
        {
            auto it = node.find("nodeid");
            if (it != node.end() && it->is_number_integer())
                return it->get<int>();
            return -1;
        }

        /** "f12", "12" or a plain integer -> 12. */
        std::optional<AttrId> gbdt_attr(const json& split)
        {
            if (split.is_number_integer()) {
                int a = split.get<int>();
                return a >= 0 ? std::optional<AttrId>(a) : std::nullopt;
            }
            if (!split.is_string())
                return {};
            std::string s = split.get<std::string>();
            if (!s.empty() && (s[0] == 'f' || s[0] == 'F'))
                s.erase(s.begin());
            if (s.empty() || !std::all_of(s.begin(), s.end(),
                        [](unsigned char c) { return std::isdigit(c); }))
                return {};
            return std::stoi(s);
        }

        enum class GbdtKind { LEAF, SPLIT, UNSUPPORTED };

        GbdtKind gbdt_kind(const json& node, std::vector<int>& unsupported)
        {
            if (!node.is_object()) {
                unsupported.push_back(-1);
                return GbdtKind::UNSUPPORTED;
            }
            if (node.contains("leaf") && node["leaf"].is_number())
                return GbdtKind::LEAF;
            bool numeric_split = node.contains("split_condition")
                && node["split_condition"].is_number()
                && node.contains("yes") && node.contains("no")
                && node.contains("children")
                && !node.contains("categories"); // categorical splits
            if (!numeric_split) {
                unsupported.push_back(gbdt_node_id(node));
                return GbdtKind::UNSUPPORTED;
            }
            if (node.contains("missing") && node["missing"] != node["yes"]) {
                // missing values routed away from the yes branch change the
                // semantics for NaN inputs, which boxes cannot express
                unsupported.push_back(gbdt_node_id(node));
                return GbdtKind::UNSUPPORTED;
            }
            if (!gbdt_attr(node["split"]).has_value()) {
                unsupported.push_back(gbdt_node_id(node));
                return GbdtKind::UNSUPPORTED;
            }
            return GbdtKind::SPLIT;
        }

        const json& gbdt_child(const json& node, const json& child_id)
        {
            const json& children = node["children"];
            if (children.is_array())
                for (const json& c : children)
                    if (c.is_object() && c.contains("nodeid")
                            && c["nodeid"] == child_id)
                        return c;
            throw InputError("dump node " + std::to_string(gbdt_node_id(node))
                    + ": no child with nodeid " + child_id.dump());
        }

        void gbdt_scan(const json& node, std::vector<int>& unsupported,
                AttrId& max_attr)
        {
            GbdtKind kind = gbdt_kind(node, unsupported);
            if (kind != GbdtKind::SPLIT)
                return;
            max_attr = std::max(max_attr, *gbdt_attr(node["split"]));
            gbdt_scan(gbdt_child(node, node["yes"]), unsupported, max_attr);
            gbdt_scan(gbdt_child(node, node["no"]), unsupported, max_attr);
        }

        void gbdt_build(const json& node, Tree& tree, NodeId id)
        {
            if (node.contains("leaf")) {
                tree.set_leaf_value(id, node["leaf"].get<FloatT>());
                return;
            }
            AttrId attr = *gbdt_attr(node["split"]);
            FloatT tau = node["split_condition"].get<FloatT>();
            auto [left, right] = tree.split(id, attr, tau);
            gbdt_build(gbdt_child(node, node["yes"]), tree, left);
            gbdt_build(gbdt_child(node, node["no"]), tree, right);
        }

    } // namespace

    Ensemble import_gbdt_dump(const std::string& text)
    {
        json doc = parse_json(text);
        if (!doc.is_array())
            throw InputError("$: expected an array of tree dumps");
        if (doc.empty())
            throw InputError("$: needs at least one tree");

        std::vector<int> unsupported;
        AttrId max_attr = 0;
        for (const json& root : doc)
            gbdt_scan(root, unsupported, max_attr);
        if (!unsupported.empty()) {
            std::sort(unsupported.begin(), unsupported.end());
            unsupported.erase(std::unique(unsupported.begin(), unsupported.end()),
                    unsupported.end());
            std::string ids;
            for (int id : unsupported)
                ids += (ids.empty() ? "" : ", ") + std::to_string(id);
            throw InputError("unsupported dump features (categorical splits, "
                    "non-default missing-value routing, or unknown node kinds) "
                    "at node ids: " + ids);
        }

        Ensemble ens(max_attr + 1, 0.0);
        for (const json& root : doc) {
            Tree tree;
            gbdt_build(root, tree, tree.root());
            ens.add_tree(std::move(tree));
        }
        return ens;
    }

    Ensemble parse_any_single_model(const std::string& text)
    {
        json doc = parse_json(text);
        if (doc.is_array())
            return import_gbdt_dump(text);
        if (doc.is_object() && doc.contains("classes"))
            throw InputError("$: this is a multiclass document; "
                    "expected a single-ensemble model");
        return parse_model_doc(doc, "$");
    }

} // namespace treeverify
