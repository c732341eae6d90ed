#include "tagtaxa/priority.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tagtaxa {

namespace {

double median_of_sorted(const std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

PriorityStats stats_of(std::vector<double> samples) {
    PriorityStats s;
    const double n = static_cast<double>(samples.size());
    double sum = 0;
    for (double x : samples) sum += x;
    s.mean = sum / n;
    double sq = 0;
    for (double x : samples) sq += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(sq / n);
    std::sort(samples.begin(), samples.end());
    s.median = median_of_sorted(samples);
    return s;
}

}  // namespace

PriorityMatrix PriorityMatrix::from_corpus(const Corpus& c) {
    PriorityMatrix m;
    for (const auto& game : c.games) {
        if (game.tag_counts.empty()) {
            throw std::invalid_argument("game " + game.game_id +
                                        " has no tags; clean the corpus first");
        }
        m.game_ids_.push_back(game.game_id);
    }
    for (const auto& tag : c.tags) m.tags_.push_back(tag);
    for (std::size_t i = 0; i < m.game_ids_.size(); ++i) {
        m.game_index_[m.game_ids_[i]] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < m.tags_.size(); ++i) {
        m.tag_index_[m.tags_[i]] = static_cast<int>(i);
    }
    m.columns_.resize(m.tags_.size());
    m.rows_.resize(m.game_ids_.size());
    for (std::size_t row = 0; row < c.games.size(); ++row) {
        const auto& game = c.games[row];
        int64_t max_count = 0;
        for (const auto& [tag, count] : game.tag_counts) {
            (void)tag;
            max_count = std::max(max_count, count);
        }
        for (const auto& [tag, count] : game.tag_counts) {
            if (count <= 0) continue;  // zero-count anomalies carry priority 0
            double p = static_cast<double>(count) / static_cast<double>(max_count);
            int col = m.tag_index_.at(tag);
            m.columns_[col].emplace_back(static_cast<int>(row), p);
            m.rows_[row].emplace_back(col, p);
        }
        std::sort(m.rows_[row].begin(), m.rows_[row].end());
    }
    // columns were filled in row order, already sorted by game_row
    return m;
}

PriorityMatrix priority_matrix(const Corpus& c) { return PriorityMatrix::from_corpus(c); }

int PriorityMatrix::tag_index(const TagId& tag) const {
    auto it = tag_index_.find(tag);
    return it == tag_index_.end() ? -1 : it->second;
}

int PriorityMatrix::game_index(const std::string& game_id) const {
    auto it = game_index_.find(game_id);
    return it == game_index_.end() ? -1 : it->second;
}

double PriorityMatrix::priority(int game_row, int tag_idx) const {
    const auto& r = rows_[game_row];
    auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(tag_idx, 0.0));
    if (it != r.end() && it->first == tag_idx) return it->second;
    return 0.0;
}

PriorityStats positive_priority_stats(const PriorityMatrix& m) {
    std::vector<double> samples;
    for (std::size_t t = 0; t < m.n_tags(); ++t) {
        for (const auto& [row, p] : m.column(static_cast<int>(t))) {
            (void)row;
            samples.push_back(p);
        }
    }
    if (samples.empty()) {
        throw std::runtime_error("priority matrix has no positive entries");
    }
    return stats_of(std::move(samples));
}

DistributionSummary tag_distribution(const PriorityMatrix& m, const TagId& tag, int bins) {
    if (bins <= 0) throw std::invalid_argument("bins must be positive");
    int col = m.tag_index(tag);
    if (col < 0) throw std::invalid_argument("tag not present in matrix: " + tag);

    DistributionSummary summary;
    summary.tag = tag;
    summary.histogram.assign(static_cast<std::size_t>(bins), 0);

    std::vector<double> samples;
    samples.reserve(m.column(col).size());
    for (const auto& [row, p] : m.column(col)) {
        (void)row;
        samples.push_back(p);
        // bins partition (0,1] as (i/bins, (i+1)/bins]
        int idx = static_cast<int>(std::ceil(p * bins)) - 1;
        idx = std::clamp(idx, 0, bins - 1);
        ++summary.histogram[static_cast<std::size_t>(idx)];
    }
    summary.n_games = static_cast<int64_t>(samples.size());

    int peak = 0;
    for (int i = 0; i < bins; ++i) {
        if (summary.histogram[static_cast<std::size_t>(i)] >=
            summary.histogram[static_cast<std::size_t>(peak)]) {
            peak = i;  // >= pushes ties toward the higher-priority bin
        }
    }
    summary.peak_priority = static_cast<double>(peak) / static_cast<double>(bins);

    PriorityStats s = stats_of(std::move(samples));
    summary.mean = s.mean;
    summary.median = s.median;
    summary.std = s.std;
    return summary;
}

RatioReport pair_ratio_analysis(const PriorityMatrix& m, const TagId& a, const TagId& b) {
    if (a == b) throw std::invalid_argument("pair_ratio_analysis requires two distinct tags");
    RatioReport report;
    report.tag_a = a;
    report.tag_b = b;
    int col_a = m.tag_index(a);
    int col_b = m.tag_index(b);
    if (col_a < 0 || col_b < 0) return report;  // no game has both

    const auto& ca = m.column(col_a);
    const auto& cb = m.column(col_b);
    std::size_t i = 0, j = 0;
    while (i < ca.size() && j < cb.size()) {
        if (ca[i].first < cb[j].first) {
            ++i;
        } else if (cb[j].first < ca[i].first) {
            ++j;
        } else {
            // same max divisor within a game, so priority order == count order
            if (ca[i].second > cb[j].second) {
                report.ratios.push_back(cb[j].second / ca[i].second);
            }
            ++i;
            ++j;
        }
    }
    report.n_games = static_cast<int64_t>(report.ratios.size());
    if (!report.ratios.empty()) {
        double sum = 0;
        for (double r : report.ratios) sum += r;
        report.mean = sum / static_cast<double>(report.ratios.size());
        std::vector<double> sorted = report.ratios;
        std::sort(sorted.begin(), sorted.end());
        report.median = median_of_sorted(sorted);
    }
    return report;
}

}  // namespace tagtaxa
