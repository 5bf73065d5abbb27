/**
 * \file model_io.hpp
 *
 * Model serialization: a canonical versioned JSON format (single ensemble
 * and one-vs-all multiclass wrapper) plus a read-only importer for the JSON
 * tree-dump array emitted by common gradient-boosted-tree learners.
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#ifndef TREEVERIFY_MODEL_IO_HPP
#define TREEVERIFY_MODEL_IO_HPP

#include "treeverify/tree.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace treeverify {

    /**
     * Malformed or unsupported input: schema violations (with the JSON path
     * of the offending element), unsupported versions, unmappable features.
     * Command drivers report these as usage errors, not internal failures.
     */
    struct InputError : std::runtime_error {
        explicit InputError(const std::string& what) : std::runtime_error(what) {}
    };

    /**
     * Canonical format, version 1:
     * {
     *   "version": 1,
     *   "num_attributes": <int>,
     *   "base_score": <float>,
     *   "trees": [<node>, ...]
     * }
     * where <node> is {"leaf": <float>} or
     * {"split": {"attr": <int>, "tau": <float>}, "left": <node>, "right": <node>}.
     */
    Ensemble parse_model(const std::string& text);
    std::string serialize_model(const Ensemble& ensemble);

    /** {"classes": [<canonical doc>, ...]}; classes share num_attributes. */
    std::vector<Ensemble> parse_multiclass_model(const std::string& text);
    std::string serialize_multiclass_model(const std::vector<Ensemble>& models);

    /**
     * Import a learner's JSON dump: an array of per-tree node objects with
     * nodeid / split / split_condition / yes / no / missing / children /
     * leaf fields. The "yes" branch (taken when value < split_condition)
     * maps to the left branch here. base_score is 0; outputs are margin
     * scores. Categorical splits, "missing" routed away from "yes", and
     * unknown node kinds raise InputError listing the offending node ids.
     */
    Ensemble import_gbdt_dump(const std::string& text);

    /** Canonical document or learner dump (JSON array), by inspection. */
    Ensemble parse_any_single_model(const std::string& text);

} // namespace treeverify

#endif // TREEVERIFY_MODEL_IO_HPP
