#include "tagtaxa/synonymy.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace tagtaxa {

namespace {

struct UnionFind {
    std::map<TagId, TagId> parent;
    TagId find(const TagId& x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        TagId root = find(it->second);
        parent[x] = root;
        return root;
    }
    void unite(const TagId& a, const TagId& b) { parent[find(a)] = find(b); }
};

// reach[v] = set of vertices with a directed path to v is what we need for
// sink candidates; computing forward reach sets per vertex is simpler and
// these graphs are tiny.
std::map<TagId, std::set<TagId>> forward_reach(const std::set<TagId>& vertices,
                                               const std::vector<std::pair<TagId, TagId>>& edges) {
    std::map<TagId, std::vector<TagId>> adj;
    for (const auto& [u, v] : edges) adj[u].push_back(v);
    std::map<TagId, std::set<TagId>> reach;
    for (const auto& s : vertices) {
        std::set<TagId>& r = reach[s];
        std::queue<TagId> queue;
        queue.push(s);
        while (!queue.empty()) {
            TagId u = queue.front();
            queue.pop();
            auto it = adj.find(u);
            if (it == adj.end()) continue;
            for (const auto& v : it->second) {
                if (v != s && r.insert(v).second) queue.push(v);
            }
        }
    }
    return reach;
}

std::vector<TagId> sink_candidates_of(const std::set<TagId>& vertices,
                                      const std::vector<std::pair<TagId, TagId>>& edges) {
    auto reach = forward_reach(vertices, edges);
    std::vector<TagId> candidates;
    for (const auto& v : vertices) {
        bool all_reach = true;
        for (const auto& u : vertices) {
            if (u == v) continue;
            if (!reach[u].count(v)) {
                all_reach = false;
                break;
            }
        }
        if (all_reach) candidates.push_back(v);
    }
    return candidates;
}

std::vector<std::set<TagId>> weak_components(const std::set<TagId>& vertices,
                                             const std::vector<std::pair<TagId, TagId>>& edges) {
    UnionFind uf;
    for (const auto& v : vertices) uf.find(v);
    for (const auto& [u, v] : edges) uf.unite(u, v);
    std::map<TagId, std::set<TagId>> comps;
    for (const auto& v : vertices) comps[uf.find(v)].insert(v);
    std::vector<std::set<TagId>> out;
    for (auto& [root, members] : comps) {
        (void)root;
        out.push_back(std::move(members));
    }
    // deterministic order: by smallest member
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
    return out;
}

std::vector<std::pair<TagId, TagId>> directed_edges_of(const SynonymGraph& g) {
    std::vector<std::pair<TagId, TagId>> edges;
    for (const auto& e : g.edges) {
        if (e.kind == SynEdgeKind::mutual) {
            throw std::invalid_argument("graph still contains mutual edges; merge them first");
        }
        edges.emplace_back(e.from(), e.to());
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

// groups for a residual graph already known to be feasible
std::vector<SynonymGroup> groups_of_residual(
    const std::set<TagId>& vertices, const std::vector<std::pair<TagId, TagId>>& residual,
    const std::vector<std::pair<TagId, TagId>>& deleted, bool exact) {
    std::vector<SynonymGroup> groups;
    for (const auto& comp : weak_components(vertices, residual)) {
        std::vector<std::pair<TagId, TagId>> comp_edges;
        for (const auto& e : residual) {
            if (comp.count(e.first)) comp_edges.push_back(e);
        }
        auto sinks = sink_candidates_of(comp, comp_edges);
        SynonymGroup group;
        group.members = comp;
        group.representative = sinks.front();
        group.exact = exact;
        groups.push_back(std::move(group));
    }
    // deleted edges are reported with the group that holds their tail
    for (const auto& e : deleted) {
        for (auto& group : groups) {
            if (group.members.count(e.first)) {
                group.deleted_edges.push_back(e);
                break;
            }
        }
    }
    for (auto& group : groups) {
        std::sort(group.deleted_edges.begin(), group.deleted_edges.end());
    }
    return groups;
}

bool residual_feasible(const std::set<TagId>& vertices,
                       const std::vector<std::pair<TagId, TagId>>& residual) {
    for (const auto& comp : weak_components(vertices, residual)) {
        std::vector<std::pair<TagId, TagId>> comp_edges;
        for (const auto& e : residual) {
            if (comp.count(e.first)) comp_edges.push_back(e);
        }
        if (sink_candidates_of(comp, comp_edges).size() != 1) return false;
    }
    return true;
}

}  // namespace

SynEdgeKind classify_edge(const PairCounts& pc, const TagId& a, const TagId& b) {
    if (pc.x_a < 0 || pc.x_b < 0 || pc.x_inter < 0 ||
        pc.x_union != pc.x_a + pc.x_b + pc.x_inter || pc.x_union < 1) {
        throw std::invalid_argument("inconsistent pair counts");
    }
    // same denominator, so ratio order == count order
    if (pc.x_inter >= pc.x_a && pc.x_inter >= pc.x_b) return SynEdgeKind::mutual;
    if (pc.x_a > pc.x_b) return SynEdgeKind::b_to_a;
    if (pc.x_b > pc.x_a) return SynEdgeKind::a_to_b;
    // x_a == x_b > x_inter: point at the lexicographically smaller name
    return a < b ? SynEdgeKind::b_to_a : SynEdgeKind::a_to_b;
}

void SynonymGraph::add_edge(TagId a, TagId b, SynEdgeKind kind, bool cross_taxon) {
    if (a == b) throw std::invalid_argument("self-loop edge: " + a);
    if (b < a) {
        std::swap(a, b);
        if (kind == SynEdgeKind::a_to_b) kind = SynEdgeKind::b_to_a;
        else if (kind == SynEdgeKind::b_to_a) kind = SynEdgeKind::a_to_b;
    }
    edges.push_back({std::move(a), std::move(b), kind, cross_taxon});
}

void SynonymGraph::sort_edges() {
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
}

SynonymGraph build_synonym_graph(const PriorityMatrix& m,
                                 const std::vector<CorrelatedPair>& pairs, double local_min,
                                 const std::set<TagId>& excluded, const TaxonAssignment& ta,
                                 std::vector<std::string>* warnings) {
    SynonymGraph g;
    for (const auto& pair : pairs) {
        if (!pair.local_r || !(*pair.local_r > local_min)) continue;
        if (excluded.count(pair.a) || excluded.count(pair.b)) continue;

        const auto& ca = m.column(m.tag_index(pair.a));
        const auto& cb = m.column(m.tag_index(pair.b));
        PairCounts pc;
        std::size_t i = 0, j = 0;
        while (i < ca.size() && j < cb.size()) {
            if (ca[i].first < cb[j].first) {
                ++pc.x_a;
                ++i;
            } else if (cb[j].first < ca[i].first) {
                ++pc.x_b;
                ++j;
            } else {
                ++pc.x_inter;
                ++i;
                ++j;
            }
        }
        pc.x_a += static_cast<int64_t>(ca.size() - i);
        pc.x_b += static_cast<int64_t>(cb.size() - j);
        pc.x_union = pc.x_a + pc.x_b + pc.x_inter;
        if (pc.x_union < 1) {
            if (warnings) {
                warnings->push_back("pair skipped (neither tag occurs): " + pair.a + " / " +
                                    pair.b);
            }
            continue;
        }

        auto taxon_a = ta.taxon.find(pair.a);
        auto taxon_b = ta.taxon.find(pair.b);
        if (taxon_a == ta.taxon.end() || taxon_b == ta.taxon.end()) {
            throw std::invalid_argument("taxon assignment missing tag " +
                                        (taxon_a == ta.taxon.end() ? pair.a : pair.b));
        }
        bool cross = taxon_a->second != taxon_b->second;
        g.nodes[pair.a] = m.occurrence(m.tag_index(pair.a));
        g.nodes[pair.b] = m.occurrence(m.tag_index(pair.b));
        g.add_edge(pair.a, pair.b, classify_edge(pc, pair.a, pair.b), cross);
    }
    g.sort_edges();
    return g;
}

MergeResult merge_mutual(const SynonymGraph& g) {
    MergeResult result;
    UnionFind uf;
    for (const auto& [tag, occ] : g.nodes) {
        (void)occ;
        uf.find(tag);
    }
    for (const auto& e : g.edges) {
        if (e.kind == SynEdgeKind::mutual) uf.unite(e.a, e.b);
    }

    // class members, then the surviving label per class
    std::map<TagId, std::set<TagId>> classes;
    for (const auto& [tag, occ] : g.nodes) {
        (void)occ;
        classes[uf.find(tag)].insert(tag);
    }
    std::map<TagId, TagId> label_of;
    for (const auto& [root, members] : classes) {
        (void)root;
        TagId label = *members.begin();
        for (const auto& tag : members) {
            int64_t occ_tag = g.nodes.at(tag);
            int64_t occ_label = g.nodes.at(label);
            if (occ_tag > occ_label) label = tag;
            // equal occurrence keeps the lexicographically smaller label,
            // which iteration order already guarantees
        }
        for (const auto& tag : members) label_of[tag] = label;
        result.graph.nodes[label] = g.nodes.at(label);
        if (members.size() > 1) {
            for (const auto& tag : members) {
                if (tag != label) result.absorbed[label].insert(tag);
            }
        }
    }

    // remap directed edges; dedup parallels, drop self-loops
    std::map<std::pair<TagId, TagId>, bool> seen;  // (from,to) -> cross flag
    for (const auto& e : g.edges) {
        if (e.kind == SynEdgeKind::mutual) continue;
        TagId from = label_of.at(e.from());
        TagId to = label_of.at(e.to());
        if (from == to) {
            result.dropped_self_loops.push_back("self-loop dropped after contraction: " +
                                                e.from() + " -> " + e.to());
            continue;
        }
        auto [it, inserted] = seen.try_emplace({from, to}, e.cross_taxon);
        if (!inserted) it->second = it->second && e.cross_taxon;
    }
    for (const auto& [key, cross] : seen) {
        result.graph.add_edge(key.first, key.second,
                              key.first < key.second ? SynEdgeKind::a_to_b
                                                     : SynEdgeKind::b_to_a,
                              cross);
    }
    result.graph.sort_edges();
    return result;
}

WellOrientedResult is_well_oriented(const SynonymGraph& component) {
    auto edges = directed_edges_of(component);
    std::set<TagId> vertices;
    for (const auto& [tag, occ] : component.nodes) {
        (void)occ;
        vertices.insert(tag);
    }
    WellOrientedResult result;
    result.sink_candidates = sink_candidates_of(vertices, edges);
    result.well_oriented = result.sink_candidates.size() == 1;
    return result;
}

std::vector<SynonymGroup> min_deletion_exact(const SynonymGraph& component, int max_edges) {
    auto edges = directed_edges_of(component);
    std::set<TagId> vertices;
    for (const auto& [tag, occ] : component.nodes) {
        (void)occ;
        vertices.insert(tag);
    }
    const int m = static_cast<int>(edges.size());
    if (m > max_edges) {
        throw std::runtime_error("component has " + std::to_string(m) +
                                 " edges, above the exact budget of " +
                                 std::to_string(max_edges) + "; use min_deletion_greedy");
    }

    auto try_subset = [&](const std::vector<int>& chosen) -> bool {
        std::vector<bool> drop(edges.size(), false);
        for (int idx : chosen) drop[static_cast<std::size_t>(idx)] = true;
        std::vector<std::pair<TagId, TagId>> residual;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!drop[i]) residual.push_back(edges[i]);
        }
        return residual_feasible(vertices, residual);
    };

    // breadth-first over deletion-set cardinality; within a cardinality,
    // lexicographic index order keeps the answer deterministic
    for (int k = 0; k <= m; ++k) {
        std::vector<int> chosen(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) chosen[static_cast<std::size_t>(i)] = i;
        while (true) {
            if (try_subset(chosen)) {
                std::vector<std::pair<TagId, TagId>> deleted;
                std::vector<bool> drop(edges.size(), false);
                for (int idx : chosen) drop[static_cast<std::size_t>(idx)] = true;
                std::vector<std::pair<TagId, TagId>> residual;
                for (std::size_t i = 0; i < edges.size(); ++i) {
                    if (drop[i]) deleted.push_back(edges[i]);
                    else residual.push_back(edges[i]);
                }
                return groups_of_residual(vertices, residual, deleted, true);
            }
            // next combination
            int i = k - 1;
            while (i >= 0 && chosen[static_cast<std::size_t>(i)] == m - k + i) --i;
            if (i < 0) break;
            ++chosen[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) {
                chosen[static_cast<std::size_t>(j)] = chosen[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
    }
    throw std::logic_error("min_deletion_exact: deleting all edges must be feasible");
}

std::vector<SynonymGroup> min_deletion_greedy(const SynonymGraph& component) {
    auto all_edges = directed_edges_of(component);
    std::set<TagId> all_vertices;
    for (const auto& [tag, occ] : component.nodes) {
        (void)occ;
        all_vertices.insert(tag);
    }
    auto occurrence = [&](const TagId& tag) { return component.nodes.at(tag); };

    std::vector<SynonymGroup> groups;
    std::vector<std::pair<std::set<TagId>, std::vector<std::pair<TagId, TagId>>>> work;
    work.emplace_back(all_vertices, all_edges);

    while (!work.empty()) {
        auto [vertices, edges] = std::move(work.back());
        work.pop_back();

        auto comps = weak_components(vertices, edges);
        if (comps.size() > 1) {
            for (auto& comp : comps) {
                std::vector<std::pair<TagId, TagId>> comp_edges;
                for (const auto& e : edges) {
                    if (comp.count(e.first)) comp_edges.push_back(e);
                }
                work.emplace_back(std::move(comp), std::move(comp_edges));
            }
            continue;
        }

        auto sinks = sink_candidates_of(vertices, edges);
        if (sinks.size() == 1) {
            SynonymGroup group;
            group.members = vertices;
            group.representative = sinks.front();
            groups.push_back(std::move(group));
            continue;
        }

        auto reach = forward_reach(vertices, edges);
        std::vector<TagId> pool = sinks.empty()
                                      ? std::vector<TagId>(vertices.begin(), vertices.end())
                                      : sinks;

        // carving v out deletes its out-edges plus everything leaving its
        // reacher set; prefer the cheapest carve
        TagId best;
        std::set<TagId> best_region;
        std::vector<std::pair<TagId, TagId>> best_deletions;
        std::size_t best_cost = 0;
        bool have_best = false;
        for (const auto& v : pool) {
            std::set<TagId> region{v};
            for (const auto& u : vertices) {
                if (u != v && reach[u].count(v)) region.insert(u);
            }
            std::vector<std::pair<TagId, TagId>> deletions;
            for (const auto& e : edges) {
                if (e.first == v || (region.count(e.first) && !region.count(e.second))) {
                    deletions.push_back(e);
                }
            }
            bool better = false;
            if (!have_best) {
                better = true;
            } else if (deletions.size() != best_cost) {
                better = deletions.size() < best_cost;
            } else if (region.size() != best_region.size()) {
                better = region.size() > best_region.size();
            } else if (occurrence(v) != occurrence(best)) {
                better = occurrence(v) > occurrence(best);
            } else {
                better = v < best;
            }
            if (better) {
                have_best = true;
                best = v;
                best_region = std::move(region);
                best_deletions = std::move(deletions);
                best_cost = best_deletions.size();
            }
        }

        SynonymGroup group;
        group.members = best_region;
        group.representative = best;
        group.deleted_edges = best_deletions;
        std::sort(group.deleted_edges.begin(), group.deleted_edges.end());
        groups.push_back(std::move(group));

        std::set<TagId> rest;
        for (const auto& u : vertices) {
            if (!best_region.count(u)) rest.insert(u);
        }
        if (!rest.empty()) {
            std::vector<std::pair<TagId, TagId>> rest_edges;
            for (const auto& e : edges) {
                if (rest.count(e.first) && rest.count(e.second)) rest_edges.push_back(e);
            }
            work.emplace_back(std::move(rest), std::move(rest_edges));
        }
    }

    std::sort(groups.begin(), groups.end(), [](const SynonymGroup& a, const SynonymGroup& b) {
        return *a.members.begin() < *b.members.begin();
    });
    return groups;
}

const std::set<std::pair<TagId, TagId>>& default_cross_taxon_keep() {
    static const std::set<std::pair<TagId, TagId>> keep = {
        {"Trading Card Game", "Card Game"},
    };
    return keep;
}

const std::set<TagId>& default_synonym_extra_excluded() {
    static const std::set<TagId> excluded = {
        "2D", "Shooter", "Puzzle", "Atmospheric", "Simulation", "Story Rich", "Fantasy",
    };
    return excluded;
}

SynonymDecomposition synonym_groups(const SynonymGraph& g, int exact_budget,
                                    const std::set<std::pair<TagId, TagId>>& keep_cross_taxon,
                                    std::vector<std::string>* warnings) {
    SynonymDecomposition out;

    // 1. drop cross-taxon edges, keep-list excepted (matched as unordered pair)
    SynonymGraph filtered;
    filtered.nodes = g.nodes;
    for (const auto& e : g.edges) {
        bool keep = !e.cross_taxon || keep_cross_taxon.count({e.a, e.b}) ||
                    keep_cross_taxon.count({e.b, e.a});
        if (keep) {
            filtered.edges.push_back(e);
        } else if (warnings) {
            warnings->push_back("cross-taxon edge dropped: " + e.from() + " -> " + e.to());
        }
    }

    // 2. merge mutual edges
    MergeResult merged = merge_mutual(filtered);
    out.merged = merged.graph;
    out.absorbed = merged.absorbed;
    if (warnings) {
        for (const auto& msg : merged.dropped_self_loops) warnings->push_back(msg);
    }

    // 3. decompose each weak component
    auto edges = directed_edges_of(merged.graph);
    std::set<TagId> vertices;
    for (const auto& [tag, occ] : merged.graph.nodes) {
        (void)occ;
        vertices.insert(tag);
    }
    for (const auto& comp : weak_components(vertices, edges)) {
        SynonymGraph sub;
        for (const auto& tag : comp) sub.nodes[tag] = merged.graph.nodes.at(tag);
        for (const auto& e : merged.graph.edges) {
            if (comp.count(e.a)) sub.edges.push_back(e);
        }
        std::vector<SynonymGroup> comp_groups;
        if (static_cast<int>(sub.edges.size()) <= exact_budget) {
            comp_groups = min_deletion_exact(sub, exact_budget);
        } else {
            if (warnings) {
                warnings->push_back("component with " + std::to_string(sub.edges.size()) +
                                    " edges solved heuristically (budget " +
                                    std::to_string(exact_budget) + ")");
            }
            comp_groups = min_deletion_greedy(sub);
        }
        for (auto& group : comp_groups) out.groups.push_back(std::move(group));
    }

    // 4. residual graph = merged minus deletions, then per-group transitive
    // reduction drops edges that carry only redundant information
    std::set<std::pair<TagId, TagId>> deleted;
    for (const auto& group : out.groups) {
        for (const auto& e : group.deleted_edges) deleted.insert(e);
    }
    for (const auto& group : out.groups) {
        TagGraph tg;
        for (const auto& tag : group.members) tg.nodes[tag] = merged.graph.nodes.at(tag);
        for (const auto& e : edges) {
            if (group.members.count(e.first) && group.members.count(e.second) &&
                !deleted.count(e)) {
                tg.edges.push_back({e.first, e.second, false});
            }
        }
        ReductionReport rr;
        TagGraph reduced = transitive_reduce(tg, &rr);
        for (const auto& e : rr.removed) out.reduced_edges.emplace_back(e.from, e.to);
        for (const auto& [tag, occ] : reduced.nodes) out.residual.nodes[tag] = occ;
        for (const auto& e : reduced.edges) {
            out.residual.add_edge(e.from, e.to,
                                  e.from < e.to ? SynEdgeKind::a_to_b : SynEdgeKind::b_to_a);
        }
    }
    out.residual.sort_edges();
    std::sort(out.reduced_edges.begin(), out.reduced_edges.end());

    // 5. expand group members with the labels absorbed by mutual merging
    for (auto& group : out.groups) {
        std::set<TagId> expanded = group.members;
        for (const auto& tag : group.members) {
            auto it = out.absorbed.find(tag);
            if (it != out.absorbed.end()) {
                expanded.insert(it->second.begin(), it->second.end());
            }
        }
        group.members = std::move(expanded);
    }
    std::sort(out.groups.begin(), out.groups.end(),
              [](const SynonymGroup& a, const SynonymGroup& b) {
                  return *a.members.begin() < *b.members.begin();
              });
    return out;
}

namespace {

std::string dot_escape(const TagId& tag) {
    std::string out;
    for (char c : tag) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string synonym_graph_to_dot(const SynonymGraph& g, const std::string& name) {
    std::string out = "digraph \"" + dot_escape(name) + "\" {\n";
    for (const auto& [tag, occ] : g.nodes) {
        out += "  \"" + dot_escape(tag) + "\" [occ=" + std::to_string(occ) + "];\n";
    }
    for (const auto& e : g.edges) {
        out += "  \"" + dot_escape(e.from()) + "\" -> \"" + dot_escape(e.to()) + "\"";
        std::vector<std::string> attrs;
        if (e.kind == SynEdgeKind::mutual) attrs.push_back("dir=both");
        if (e.cross_taxon) attrs.push_back("style=dashed");
        if (!attrs.empty()) {
            out += " [";
            for (std::size_t i = 0; i < attrs.size(); ++i) {
                if (i) out += ", ";
                out += attrs[i];
            }
            out += "]";
        }
        out += ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace tagtaxa
