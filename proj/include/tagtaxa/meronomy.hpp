#ifndef TAGTAXA_MERONOMY_HPP
#define TAGTAXA_MERONOMY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tagtaxa/corpus.hpp"
#include "tagtaxa/priority.hpp"

namespace tagtaxa {

struct CorrelatedPair {
    TagId a;
    TagId b;
    double global_r = 0;
    std::optional<double> local_r;  // unset until computed; nullopt after a
                                    // degenerate restriction drops the pair
};

// Directed graph over tags. Plain edges always point from the rarer tag to
// the more frequent one; equal occurrence produces a tie-flagged edge
// toward the lexicographically smaller name.
struct TagGraph {
    struct Edge {
        TagId from;
        TagId to;
        bool tie = false;
        bool operator==(const Edge&) const = default;
    };
    std::map<TagId, int64_t> nodes;  // tag -> occurrence count
    std::vector<Edge> edges;         // sorted by (from, to)

    std::map<TagId, int> in_degrees() const;
    std::map<TagId, int> out_degrees() const;
};

// Pearson over the full game x tag priority matrix (absent entries are 0),
// all unordered tag pairs, keeping pairs with global_r > global_min.
// Zero-variance tags are skipped with a warning. `presence_mode` replaces
// priorities with 0/1 indicators. Deterministic for any job count.
std::vector<CorrelatedPair> pearson_all_pairs(const PriorityMatrix& m, double global_min,
                                              int jobs = 1,
                                              std::vector<std::string>* warnings = nullptr,
                                              bool presence_mode = false);

// Pearson restricted to games where at least one of the two tags is
// assigned. nullopt when a restricted vector has zero variance.
std::optional<double> local_pearson(const PriorityMatrix& m, const TagId& a, const TagId& b,
                                    bool presence_mode = false);

// Fills local_r for every pair; degenerate pairs keep nullopt and warn.
void attach_local_pearson(const PriorityMatrix& m, std::vector<CorrelatedPair>& pairs,
                          std::vector<std::string>* warnings = nullptr,
                          bool presence_mode = false);

// Keeps pairs with local_r > local_min and orients each by occurrence.
TagGraph orient_pairs(const std::vector<CorrelatedPair>& pairs, double local_min,
                      const PriorityMatrix& m);

struct CapitalResult {
    TagGraph induced;                   // subgraph on nodes with in-degree >= threshold
    std::vector<TagId> capital_tags;    // induced nodes with zero out-degree inside it
    std::map<TagId, int> original_in_degree;  // for induced nodes
};

CapitalResult capital_tags(const TagGraph& g, int indegree_min);

struct CoverageRow {
    std::vector<TagId> tag_set;  // the prefix this row reports on
    double pct_all_games = 0;
    double pct_20tag_games = 0;
};

// Row i reports the share of games covered by tags[0..i], over all games
// and over games with exactly 20 tags. An empty list yields one 0/0 row.
std::vector<CoverageRow> coverage(const Corpus& c, const std::vector<TagId>& tags);

struct GreedyStep {
    TagId tag;
    int64_t newly_covered = 0;  // over all games
    CoverageRow coverage;       // cumulative, base + picks so far
};

// Greedily appends up to k tags, each maximizing newly covered games
// (ties broken lexicographically).
std::vector<GreedyStep> greedy_cover_extension(const Corpus& c, const std::set<TagId>& base,
                                               int k);

struct ReductionReport {
    std::vector<TagGraph::Edge> removed;
};

// Removes edges that are implied by a directed path of length >= 2.
// Candidates are judged against the input graph, then removed one at a
// time (re-checking reachability) so the transitive closure is preserved
// even on cyclic inputs. On DAGs this is the unique transitive reduction.
TagGraph transitive_reduce(const TagGraph& g, ReductionReport* report = nullptr);

// DOT digraph with occ=N node attributes; tie edges are dashed.
std::string tag_graph_to_dot(const TagGraph& g, const std::string& name = "meronomy");

}  // namespace tagtaxa

#endif
