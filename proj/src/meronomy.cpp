#include "tagtaxa/meronomy.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <thread>

namespace tagtaxa {

namespace {

struct SparseVec {
    // (game_row, value), sorted by row; implicit zeros elsewhere
    const std::vector<std::pair<int, double>>* entries;
    double mean = 0;
    double var_times_n = 0;  // sum of squared deviations over ALL games
    bool constant = false;
};

double value_of(const std::pair<int, double>& e, bool presence_mode) {
    return presence_mode ? 1.0 : e.second;
}

SparseVec analyze_column(const std::vector<std::pair<int, double>>& col, std::size_t n_games,
                         bool presence_mode) {
    SparseVec v;
    v.entries = &col;
    const std::size_t k = col.size();
    if (k == 0) {
        v.constant = true;
        return v;
    }
    double sum = 0;
    for (const auto& e : col) sum += value_of(e, presence_mode);
    v.mean = sum / static_cast<double>(n_games);
    if (k == n_games) {
        bool all_equal = true;
        for (const auto& e : col) {
            if (value_of(e, presence_mode) != value_of(col.front(), presence_mode)) {
                all_equal = false;
                break;
            }
        }
        if (all_equal) {
            v.constant = true;
            return v;
        }
    }
    double acc = 0;
    for (const auto& e : col) {
        double d = value_of(e, presence_mode) - v.mean;
        acc += d * d;
    }
    acc += static_cast<double>(n_games - k) * v.mean * v.mean;
    v.var_times_n = acc;
    return v;
}

double clamp_r(double r) { return std::clamp(r, -1.0, 1.0); }

// Pearson between two sparse columns over all n games, means precomputed.
double pearson_sparse(const SparseVec& a, const SparseVec& b, std::size_t n_games,
                      bool presence_mode) {
    const auto& ca = *a.entries;
    const auto& cb = *b.entries;
    double cov_times_n = 0;
    std::size_t i = 0, j = 0;
    std::size_t both = 0;
    while (i < ca.size() && j < cb.size()) {
        if (ca[i].first < cb[j].first) {
            cov_times_n += (value_of(ca[i], presence_mode) - a.mean) * (-b.mean);
            ++i;
        } else if (cb[j].first < ca[i].first) {
            cov_times_n += (-a.mean) * (value_of(cb[j], presence_mode) - b.mean);
            ++j;
        } else {
            cov_times_n += (value_of(ca[i], presence_mode) - a.mean) *
                           (value_of(cb[j], presence_mode) - b.mean);
            ++both;
            ++i;
            ++j;
        }
    }
    for (; i < ca.size(); ++i) {
        cov_times_n += (value_of(ca[i], presence_mode) - a.mean) * (-b.mean);
    }
    for (; j < cb.size(); ++j) {
        cov_times_n += (-a.mean) * (value_of(cb[j], presence_mode) - b.mean);
    }
    std::size_t neither = n_games - (ca.size() + cb.size() - both);
    cov_times_n += static_cast<double>(neither) * a.mean * b.mean;
    return clamp_r(cov_times_n / std::sqrt(a.var_times_n * b.var_times_n));
}

}  // namespace

std::map<TagId, int> TagGraph::in_degrees() const {
    std::map<TagId, int> deg;
    for (const auto& [tag, occ] : nodes) {
        (void)occ;
        deg[tag] = 0;
    }
    for (const auto& e : edges) ++deg[e.to];
    return deg;
}

std::map<TagId, int> TagGraph::out_degrees() const {
    std::map<TagId, int> deg;
    for (const auto& [tag, occ] : nodes) {
        (void)occ;
        deg[tag] = 0;
    }
    for (const auto& e : edges) ++deg[e.from];
    return deg;
}

std::vector<CorrelatedPair> pearson_all_pairs(const PriorityMatrix& m, double global_min,
                                              int jobs, std::vector<std::string>* warnings,
                                              bool presence_mode) {
    const std::size_t n_games = m.n_games();
    const std::size_t n_tags = m.n_tags();
    if (n_games < 2) {
        throw std::runtime_error("pearson_all_pairs needs at least 2 games");
    }
    if (n_tags < 2) {
        throw std::runtime_error("pearson_all_pairs needs at least 2 tags");
    }

    std::vector<SparseVec> vecs(n_tags);
    std::vector<bool> usable(n_tags, false);
    for (std::size_t t = 0; t < n_tags; ++t) {
        vecs[t] = analyze_column(m.column(static_cast<int>(t)), n_games, presence_mode);
        usable[t] = !vecs[t].constant;
        if (vecs[t].constant && warnings) {
            warnings->push_back("tag skipped in correlation sweep (zero variance): " +
                                m.tags()[t]);
        }
    }

    // one result bucket per first index keeps output independent of scheduling
    std::vector<std::vector<CorrelatedPair>> buckets(n_tags);
    auto sweep_index = [&](std::size_t i) {
        if (!usable[i]) return;
        for (std::size_t j = i + 1; j < n_tags; ++j) {
            if (!usable[j]) continue;
            double r = pearson_sparse(vecs[i], vecs[j], n_games, presence_mode);
            if (r > global_min) {
                buckets[i].push_back({m.tags()[i], m.tags()[j], r, std::nullopt});
            }
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1 || n_tags < 8) {
        for (std::size_t i = 0; i < n_tags; ++i) sweep_index(i);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w]() {
                for (std::size_t i = static_cast<std::size_t>(w); i < n_tags;
                     i += static_cast<std::size_t>(jobs)) {
                    sweep_index(i);
                }
            });
        }
        for (auto& t : workers) t.join();
    }

    std::vector<CorrelatedPair> pairs;
    for (auto& bucket : buckets) {
        for (auto& p : bucket) pairs.push_back(std::move(p));
    }
    return pairs;
}

std::optional<double> local_pearson(const PriorityMatrix& m, const TagId& a, const TagId& b,
                                    bool presence_mode) {
    int ia = m.tag_index(a);
    int ib = m.tag_index(b);
    if (ia < 0 || ib < 0) {
        throw std::invalid_argument("local_pearson: unknown tag " + (ia < 0 ? a : b));
    }
    const auto& ca = m.column(ia);
    const auto& cb = m.column(ib);

    // restricted rows: games where at least one of the tags is present
    std::vector<std::pair<double, double>> xy;
    std::size_t i = 0, j = 0;
    while (i < ca.size() || j < cb.size()) {
        if (j == cb.size() || (i < ca.size() && ca[i].first < cb[j].first)) {
            xy.emplace_back(value_of(ca[i], presence_mode), 0.0);
            ++i;
        } else if (i == ca.size() || cb[j].first < ca[i].first) {
            xy.emplace_back(0.0, value_of(cb[j], presence_mode));
            ++j;
        } else {
            xy.emplace_back(value_of(ca[i], presence_mode), value_of(cb[j], presence_mode));
            ++i;
            ++j;
        }
    }
    if (xy.empty()) return std::nullopt;

    bool x_const = true, y_const = true;
    for (const auto& [x, y] : xy) {
        if (x != xy.front().first) x_const = false;
        if (y != xy.front().second) y_const = false;
    }
    if (x_const || y_const) return std::nullopt;

    const double n = static_cast<double>(xy.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : xy) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double cov = 0, vx = 0, vy = 0;
    for (const auto& [x, y] : xy) {
        cov += (x - mx) * (y - my);
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    return clamp_r(cov / std::sqrt(vx * vy));
}

void attach_local_pearson(const PriorityMatrix& m, std::vector<CorrelatedPair>& pairs,
                          std::vector<std::string>* warnings, bool presence_mode) {
    for (auto& pair : pairs) {
        pair.local_r = local_pearson(m, pair.a, pair.b, presence_mode);
        if (!pair.local_r && warnings) {
            warnings->push_back("pair dropped (degenerate local restriction): " + pair.a +
                                " / " + pair.b);
        }
    }
}

TagGraph orient_pairs(const std::vector<CorrelatedPair>& pairs, double local_min,
                      const PriorityMatrix& m) {
    TagGraph g;
    for (const auto& pair : pairs) {
        if (!pair.local_r || !(*pair.local_r > local_min)) continue;
        int64_t occ_a = m.occurrence(m.tag_index(pair.a));
        int64_t occ_b = m.occurrence(m.tag_index(pair.b));
        g.nodes[pair.a] = occ_a;
        g.nodes[pair.b] = occ_b;
        TagGraph::Edge e;
        if (occ_b > occ_a) {
            e = {pair.a, pair.b, false};
        } else if (occ_a > occ_b) {
            e = {pair.b, pair.a, false};
        } else {
            // equal occurrence: point at the lexicographically smaller name
            const bool a_smaller = pair.a < pair.b;
            e = {a_smaller ? pair.b : pair.a, a_smaller ? pair.a : pair.b, true};
        }
        g.edges.push_back(e);
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const auto& x, const auto& y) {
        return std::tie(x.from, x.to) < std::tie(y.from, y.to);
    });
    return g;
}

CapitalResult capital_tags(const TagGraph& g, int indegree_min) {
    CapitalResult result;
    auto in_deg = g.in_degrees();
    for (const auto& [tag, deg] : in_deg) {
        if (deg >= indegree_min) {
            result.induced.nodes[tag] = g.nodes.at(tag);
            result.original_in_degree[tag] = deg;
        }
    }
    for (const auto& e : g.edges) {
        if (result.induced.nodes.count(e.from) && result.induced.nodes.count(e.to)) {
            result.induced.edges.push_back(e);
        }
    }
    auto out_deg = result.induced.out_degrees();
    for (const auto& [tag, deg] : out_deg) {
        if (deg == 0) result.capital_tags.push_back(tag);
    }
    return result;
}

std::vector<CoverageRow> coverage(const Corpus& c, const std::vector<TagId>& tags) {
    const std::size_t n_all = c.games.size();
    std::size_t n_20 = 0;
    for (const auto& game : c.games) {
        if (game.tag_counts.size() == 20) ++n_20;
    }
    std::vector<bool> covered(n_all, false);
    auto make_row = [&](const std::vector<TagId>& prefix) {
        CoverageRow row;
        row.tag_set = prefix;
        std::size_t cov_all = 0, cov_20 = 0;
        for (std::size_t i = 0; i < n_all; ++i) {
            if (!covered[i]) continue;
            ++cov_all;
            if (c.games[i].tag_counts.size() == 20) ++cov_20;
        }
        row.pct_all_games =
            n_all ? 100.0 * static_cast<double>(cov_all) / static_cast<double>(n_all) : 0.0;
        row.pct_20tag_games =
            n_20 ? 100.0 * static_cast<double>(cov_20) / static_cast<double>(n_20) : 0.0;
        return row;
    };

    std::vector<CoverageRow> rows;
    if (tags.empty()) {
        rows.push_back(make_row({}));
        return rows;
    }
    std::vector<TagId> prefix;
    for (const auto& tag : tags) {
        prefix.push_back(tag);
        for (std::size_t i = 0; i < n_all; ++i) {
            if (covered[i]) continue;
            auto it = c.games[i].tag_counts.find(tag);
            if (it != c.games[i].tag_counts.end() && it->second > 0) covered[i] = true;
        }
        rows.push_back(make_row(prefix));
    }
    return rows;
}

std::vector<GreedyStep> greedy_cover_extension(const Corpus& c, const std::set<TagId>& base,
                                               int k) {
    if (k < 0) throw std::invalid_argument("greedy_cover_extension: k must be >= 0");
    const std::size_t n_all = c.games.size();
    std::size_t n_20 = 0;
    std::vector<bool> covered(n_all, false);
    for (std::size_t i = 0; i < n_all; ++i) {
        const auto& game = c.games[i];
        if (game.tag_counts.size() == 20) ++n_20;
        for (const auto& tag : base) {
            auto it = game.tag_counts.find(tag);
            if (it != game.tag_counts.end() && it->second > 0) {
                covered[i] = true;
                break;
            }
        }
    }
    std::set<TagId> candidates;
    for (const auto& tag : c.tags) {
        if (!base.count(tag)) candidates.insert(tag);
    }

    std::vector<TagId> prefix(base.begin(), base.end());
    std::vector<GreedyStep> steps;
    for (int step = 0; step < k && !candidates.empty(); ++step) {
        TagId best;
        int64_t best_gain = -1;
        for (const auto& tag : candidates) {  // set order makes ties lexicographic
            int64_t gain = 0;
            for (std::size_t i = 0; i < n_all; ++i) {
                if (covered[i]) continue;
                auto it = c.games[i].tag_counts.find(tag);
                if (it != c.games[i].tag_counts.end() && it->second > 0) ++gain;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = tag;
            }
        }
        candidates.erase(best);
        for (std::size_t i = 0; i < n_all; ++i) {
            if (covered[i]) continue;
            auto it = c.games[i].tag_counts.find(best);
            if (it != c.games[i].tag_counts.end() && it->second > 0) covered[i] = true;
        }
        prefix.push_back(best);
        GreedyStep gs;
        gs.tag = best;
        gs.newly_covered = best_gain;
        gs.coverage.tag_set = prefix;
        std::size_t cov_all = 0, cov_20 = 0;
        for (std::size_t i = 0; i < n_all; ++i) {
            if (!covered[i]) continue;
            ++cov_all;
            if (c.games[i].tag_counts.size() == 20) ++cov_20;
        }
        gs.coverage.pct_all_games =
            n_all ? 100.0 * static_cast<double>(cov_all) / static_cast<double>(n_all) : 0.0;
        gs.coverage.pct_20tag_games =
            n_20 ? 100.0 * static_cast<double>(cov_20) / static_cast<double>(n_20) : 0.0;
        steps.push_back(std::move(gs));
    }
    return steps;
}

namespace {

// Is `to` reachable from `from` without using the single edge (from, to)?
bool reachable_avoiding(const std::map<TagId, std::vector<TagId>>& adj, const TagId& from,
                        const TagId& to, const TagId& skip_from, const TagId& skip_to) {
    std::set<TagId> visited{from};
    std::queue<TagId> queue;
    queue.push(from);
    while (!queue.empty()) {
        TagId u = queue.front();
        queue.pop();
        auto it = adj.find(u);
        if (it == adj.end()) continue;
        for (const auto& v : it->second) {
            if (u == skip_from && v == skip_to) continue;
            if (v == to) return true;
            if (visited.insert(v).second) queue.push(v);
        }
    }
    return false;
}

}  // namespace

TagGraph transitive_reduce(const TagGraph& g, ReductionReport* report) {
    std::map<TagId, std::vector<TagId>> adj;
    for (const auto& e : g.edges) adj[e.from].push_back(e.to);

    // candidates judged against the input graph
    std::vector<TagGraph::Edge> candidates;
    for (const auto& e : g.edges) {
        if (reachable_avoiding(adj, e.from, e.to, e.from, e.to)) candidates.push_back(e);
    }

    // remove one at a time, re-checking in the current graph; this keeps the
    // transitive closure intact even inside strongly connected parts
    TagGraph out = g;
    for (const auto& e : candidates) {
        std::map<TagId, std::vector<TagId>> cur;
        for (const auto& edge : out.edges) cur[edge.from].push_back(edge.to);
        if (!reachable_avoiding(cur, e.from, e.to, e.from, e.to)) continue;
        out.edges.erase(std::remove(out.edges.begin(), out.edges.end(), e), out.edges.end());
        if (report) report->removed.push_back(e);
    }
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

std::string tag_graph_to_dot(const TagGraph& g, const std::string& name) {
    std::string out = "digraph \"" + dot_escape(name) + "\" {\n";
    for (const auto& [tag, occ] : g.nodes) {
        out += "  \"" + dot_escape(tag) + "\" [occ=" + std::to_string(occ) + "];\n";
    }
    for (const auto& e : g.edges) {
        out += "  \"" + dot_escape(e.from) + "\" -> \"" + dot_escape(e.to) + "\"";
        if (e.tie) out += " [style=dashed]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace tagtaxa
