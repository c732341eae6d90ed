#ifndef TAGTAXA_CONFIG_HPP
#define TAGTAXA_CONFIG_HPP

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tagtaxa/corpus.hpp"

namespace tagtaxa {

// Every knob of the pipeline with its default. Loaded from a flat
// key = value file (TOML-compatible syntax); unknown keys are errors.
struct PipelineConfig {
    // cleaning
    int64_t min_players = 5;
    int max_tags = 20;

    // priority histograms
    int bins = 100;

    // taxonomy
    double low_median_max = 0.45;
    double high_median_min = 0.574803;
    double high_peak_min = 0.765644;
    int64_t min_genre_games = 100;
    std::vector<std::string> non_game_tags;          // empty -> built-in defaults
    std::vector<std::string> misc_tags;              // empty -> built-in defaults
    std::vector<std::string> medium_genre_overrides; // empty -> built-in defaults
    bool use_default_non_game_tags = true;
    bool use_default_misc_tags = true;
    bool use_default_medium_genre_overrides = true;

    // correlation graphs
    double global_min = 0.1;
    double local_min_meronomy = -0.7;
    double local_min_synonymy = -0.6;
    int indegree_min = 9;
    bool presence_mode = false;

    // synonym grouping
    std::vector<std::string> synonym_extra_excluded;  // joined with capital tags
    bool use_default_synonym_extra_excluded = true;
    bool exclude_capital = true;
    std::vector<std::string> cross_taxon_keep;  // "A->B" entries
    bool use_default_cross_taxon_keep = true;
    int exact_budget = 20;

    // coverage extension emitted by analyze
    int extend_k = 6;

    // fetching
    std::string cache_dir = "snapshot-cache";
    int fetch_retries = 3;
    int64_t fetch_delay_ms = 1000;

    void validate() const;

    // deterministic dump used for the manifest's config digest
    std::string canonical_dump() const;

    std::set<TagId> non_game_tag_set() const;
    std::set<TagId> misc_tag_set() const;
    std::set<TagId> medium_genre_override_set() const;
    std::set<TagId> synonym_extra_excluded_set() const;
    std::set<std::pair<TagId, TagId>> cross_taxon_keep_set() const;
};

PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& text, const std::string& origin = "<config>");

}  // namespace tagtaxa

#endif
