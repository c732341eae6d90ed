#ifndef TAGTAXA_SYNONYMY_HPP
#define TAGTAXA_SYNONYMY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tagtaxa/meronomy.hpp"
#include "tagtaxa/priority.hpp"
#include "tagtaxa/taxonomy.hpp"

namespace tagtaxa {

// Co-occurrence counts for a tag pair: games with only A, only B, at least
// one, and both. x_union = x_a + x_b + x_inter always.
struct PairCounts {
    int64_t x_a = 0;
    int64_t x_b = 0;
    int64_t x_union = 0;
    int64_t x_inter = 0;
};

enum class SynEdgeKind { a_to_b, b_to_a, mutual };

// Compares the three ratios x_a/x_union, x_b/x_union, x_inter/x_union
// (integer comparisons, same denominator). Mutual wins ties with either
// single ratio; a single-ratio tie falls back to pointing at the
// lexicographically smaller name.
SynEdgeKind classify_edge(const PairCounts& pc, const TagId& a, const TagId& b);

struct SynonymGraph {
    struct Edge {
        TagId a;
        TagId b;  // canonical: a < b
        SynEdgeKind kind = SynEdgeKind::mutual;
        bool cross_taxon = false;

        TagId from() const { return kind == SynEdgeKind::b_to_a ? b : a; }
        TagId to() const { return kind == SynEdgeKind::b_to_a ? a : b; }
        bool operator==(const Edge&) const = default;
    };
    std::map<TagId, int64_t> nodes;  // tag -> occurrence count
    std::vector<Edge> edges;         // sorted by (a, b)

    void add_edge(TagId a, TagId b, SynEdgeKind kind, bool cross_taxon = false);
    void sort_edges();
};

// Keeps pairs with local_r > local_min whose endpoints are not excluded,
// classifies each edge and flags the ones crossing higher-rank taxa.
SynonymGraph build_synonym_graph(const PriorityMatrix& m,
                                 const std::vector<CorrelatedPair>& pairs, double local_min,
                                 const std::set<TagId>& excluded, const TaxonAssignment& ta,
                                 std::vector<std::string>* warnings = nullptr);

struct MergeResult {
    SynonymGraph graph;  // no mutual edges remain
    std::map<TagId, std::set<TagId>> absorbed;  // surviving label -> merged-away labels
    std::vector<std::string> dropped_self_loops;
};

// Contracts every mutual edge. The surviving label is the member with the
// higher occurrence count (ties: lexicographically smaller). Contraction
// order cannot matter; parallel edges are deduplicated and self-loops
// dropped with a log entry.
MergeResult merge_mutual(const SynonymGraph& g);

struct WellOrientedResult {
    bool well_oriented = false;
    std::vector<TagId> sink_candidates;  // vertices reachable from every other vertex
};

// For one weakly connected, mutual-free component.
WellOrientedResult is_well_oriented(const SynonymGraph& component);

struct SynonymGroup {
    std::set<TagId> members;
    TagId representative;
    std::vector<std::pair<TagId, TagId>> deleted_edges;
    bool exact = false;
};

// Minimum-cardinality edge deletion making every weak component of the
// residual well-oriented. Enumerates deletion sets by increasing size;
// throws when the component has more than max_edges edges.
std::vector<SynonymGroup> min_deletion_exact(const SynonymGraph& component,
                                             int max_edges = 20);

// Feasible heuristic: repeatedly carve out the vertex set reaching a chosen
// representative, preferring representatives whose carving deletes the
// fewest edges. Never beats the exact optimum; always leaves every
// residual component well-oriented.
std::vector<SynonymGroup> min_deletion_greedy(const SynonymGraph& component);

struct SynonymDecomposition {
    std::vector<SynonymGroup> groups;  // sorted by smallest member
    SynonymGraph merged;               // after cross-taxon drop and mutual merging
    SynonymGraph residual;             // merged minus deletions and redundant edges
    std::vector<std::pair<TagId, TagId>> reduced_edges;  // removed as redundant
    std::map<TagId, std::set<TagId>> absorbed;
};

// Full pipeline: drop cross-taxon edges (minus the keep list), merge mutual
// edges, decompose each weak component (exact solver when the component has
// at most exact_budget edges, greedy otherwise) and clean redundant edges
// out of each group by transitive reduction.
SynonymDecomposition synonym_groups(
    const SynonymGraph& g, int exact_budget = 20,
    const std::set<std::pair<TagId, TagId>>& keep_cross_taxon = default_cross_taxon_keep(),
    std::vector<std::string>* warnings = nullptr);

const std::set<std::pair<TagId, TagId>>& default_cross_taxon_keep();

// Default exclusion companions to the capital tags.
const std::set<TagId>& default_synonym_extra_excluded();

// DOT export: mutual edges use dir=both, cross-taxon edges are dashed.
std::string synonym_graph_to_dot(const SynonymGraph& g,
                                 const std::string& name = "synonyms");

}  // namespace tagtaxa

#endif
