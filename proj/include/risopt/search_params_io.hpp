#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "risopt/config_io.hpp"
#include "risopt/optimizer.hpp"

namespace risopt {

/// Reads search settings; omitted keys keep the SearchParams defaults.
inline SearchParams parse_search_params(const nlohmann::json& doc) {
    detail::reject_unknown_keys(doc,
                                {"grid_x", "grid_y", "grid_theta", "element_counts", "alphas", "refine_points",
                                 "elites_per_round", "shrink_factor", "max_rounds", "convergence_eps", "workers"},
                                "search_params");
    SearchParams p;
    const std::string where = "search_params";
    detail::read_opt(doc, "grid_x", p.grid_x, where);
    detail::read_opt(doc, "grid_y", p.grid_y, where);
    detail::read_opt(doc, "grid_theta", p.grid_theta, where);
    detail::read_opt(doc, "element_counts", p.element_counts, where);
    detail::read_opt(doc, "alphas", p.alphas, where);
    detail::read_opt(doc, "refine_points", p.refine_points, where);
    detail::read_opt(doc, "elites_per_round", p.elites, where);
    detail::read_opt(doc, "shrink_factor", p.shrink_factor, where);
    detail::read_opt(doc, "max_rounds", p.max_rounds, where);
    detail::read_opt(doc, "convergence_eps", p.convergence_eps, where);
    detail::read_opt(doc, "workers", p.workers, where);
    validate(p);
    return p;
}

inline nlohmann::json to_json(const SearchParams& p) {
    return {{"grid_x", p.grid_x},
            {"grid_y", p.grid_y},
            {"grid_theta", p.grid_theta},
            {"element_counts", p.element_counts},
            {"alphas", p.alphas},
            {"refine_points", p.refine_points},
            {"elites_per_round", p.elites},
            {"shrink_factor", p.shrink_factor},
            {"max_rounds", p.max_rounds},
            {"convergence_eps", p.convergence_eps},
            {"workers", p.workers}};
}

inline SearchParams load_search_params(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open search params file: " + path.string());
    try {
        return parse_search_params(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("parse error in " + path.string() + ": " + e.what());
    }
}

}  // namespace risopt
