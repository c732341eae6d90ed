#ifndef TAGTAXA_PRIORITY_HPP
#define TAGTAXA_PRIORITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tagtaxa/corpus.hpp"

namespace tagtaxa {

// Sparse game x tag matrix of priorities in (0, 1]; absent entries mean 0.
// For every game the highest-count tag(s) carry priority exactly 1.
class PriorityMatrix {
public:
    static PriorityMatrix from_corpus(const Corpus& c);

    std::size_t n_games() const { return game_ids_.size(); }
    std::size_t n_tags() const { return tags_.size(); }

    const std::vector<std::string>& game_ids() const { return game_ids_; }
    const std::vector<TagId>& tags() const { return tags_; }

    // -1 when unknown
    int tag_index(const TagId& tag) const;
    int game_index(const std::string& game_id) const;

    // (game_row, priority), sorted by game_row
    const std::vector<std::pair<int, double>>& column(int tag_idx) const {
        return columns_[tag_idx];
    }
    // (tag_idx, priority), sorted by tag_idx
    const std::vector<std::pair<int, double>>& row(int game_row) const {
        return rows_[game_row];
    }

    // number of games where the tag has positive priority
    int64_t occurrence(int tag_idx) const {
        return static_cast<int64_t>(columns_[tag_idx].size());
    }

    double priority(int game_row, int tag_idx) const;

private:
    std::vector<std::string> game_ids_;
    std::vector<TagId> tags_;
    std::map<std::string, int> game_index_;
    std::map<TagId, int> tag_index_;
    std::vector<std::vector<std::pair<int, double>>> columns_;
    std::vector<std::vector<std::pair<int, double>>> rows_;
};

PriorityMatrix priority_matrix(const Corpus& c);

struct PriorityStats {
    double mean = 0;
    double median = 0;
    double std = 0;  // population standard deviation
};

// Pooled statistics over every positive priority across all games and tags.
PriorityStats positive_priority_stats(const PriorityMatrix& m);

struct DistributionSummary {
    TagId tag;
    int64_t n_games = 0;
    double median = 0;
    double mean = 0;
    double std = 0;
    std::vector<int64_t> histogram;  // equal-width bins over (0, 1]
    double peak_priority = 0;        // left edge of the maximal bin, ties toward 1
};

DistributionSummary tag_distribution(const PriorityMatrix& m, const TagId& tag, int bins);

struct RatioReport {
    TagId tag_a;
    TagId tag_b;
    int64_t n_games = 0;
    std::vector<double> ratios;  // priority(G,b)/priority(G,a), strictly in (0,1)
    std::optional<double> mean;
    std::optional<double> median;
};

// Restricted to games where both tags are present and count(a) > count(b).
RatioReport pair_ratio_analysis(const PriorityMatrix& m, const TagId& a, const TagId& b);

}  // namespace tagtaxa

#endif
