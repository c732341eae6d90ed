#include "tagtaxa/taxonomy.hpp"

#include <algorithm>
#include <stdexcept>

namespace tagtaxa {

std::string to_string(Taxon t) {
    switch (t) {
        case Taxon::Low: return "Low";
        case Taxon::Medium: return "Medium";
        case Taxon::High: return "High";
    }
    return "?";
}

std::string to_string(HighSubtaxon t) {
    switch (t) {
        case HighSubtaxon::Genre: return "Genre";
        case HighSubtaxon::TooFewGames: return "TooFewGames";
        case HighSubtaxon::NonGame: return "NonGame";
        case HighSubtaxon::Misc: return "Misc";
    }
    return "?";
}

void TaxaThresholds::validate() const {
    if (!(0 < low_median_max && low_median_max < high_median_min && high_median_min < 1)) {
        throw std::invalid_argument(
            "taxa thresholds must satisfy 0 < low_median_max < high_median_min < 1");
    }
    if (!(0 < high_peak_min && high_peak_min < 1)) {
        throw std::invalid_argument("high_peak_min must lie in (0, 1)");
    }
    if (min_genre_games < 1) {
        throw std::invalid_argument("min_genre_games must be >= 1");
    }
}

CuratedLists CuratedLists::defaults() {
    CuratedLists cl;
    cl.non_game_tags = {
        "Utilities",      "Audio Production",    "Video Production",
        "Animation & Modeling", "Design & Illustration", "Photo Editing",
        "Software Training",    "Web Publishing",        "Game Development",
        "Programming",
    };
    cl.misc_tags = {
        "Free to Play", "Indie",        "Early Access", "Massively Multiplayer",
        "e-sports",     "Sexual Content", "Nudity",     "LGBTQ+",
        "Dinosaurs",    "Mechs",        "Cats",         "Experimental",
        "Noir",         "Lovecraftian", "Western",
    };
    cl.medium_genre_overrides = {
        "FPS",      "Shooter",        "Fighting",      "Stealth",
        "Hack and Slash", "Survival", "Survival Horror", "Horror",
        "MOBA",     "4X",             "RTS",           "Grand Strategy",
        "Trading Card Game", "Match 3", "Hidden Object", "MMORPG",
    };
    return cl;
}

void CuratedLists::validate() const {
    auto check_disjoint = [](const std::set<TagId>& a, const std::set<TagId>& b,
                             const char* name_a, const char* name_b) {
        for (const auto& tag : a) {
            if (b.count(tag)) {
                throw std::invalid_argument("curated lists overlap: '" + tag + "' is in both " +
                                            name_a + " and " + name_b);
            }
        }
    };
    check_disjoint(non_game_tags, misc_tags, "non_game_tags", "misc_tags");
    check_disjoint(non_game_tags, medium_genre_overrides, "non_game_tags",
                   "medium_genre_overrides");
    check_disjoint(misc_tags, medium_genre_overrides, "misc_tags", "medium_genre_overrides");
}

TaxonAssignment classify_taxa(const PriorityMatrix& m, const TaxaThresholds& th, int bins) {
    th.validate();
    TaxonAssignment ta;
    for (const auto& tag : m.tags()) {
        DistributionSummary d = tag_distribution(m, tag, bins);
        Taxon taxon = Taxon::Medium;
        if (d.median <= th.low_median_max) {
            taxon = Taxon::Low;
        } else if (d.median >= th.high_median_min && d.peak_priority >= th.high_peak_min) {
            taxon = Taxon::High;
        }
        ta.taxon[tag] = taxon;
    }
    return ta;
}

void subdivide_high(TaxonAssignment& ta, const Corpus& c, const CuratedLists& cl,
                    const TaxaThresholds& th, std::vector<std::string>* warnings) {
    th.validate();
    cl.validate();
    if (warnings) {
        for (const auto* list : {&cl.non_game_tags, &cl.misc_tags, &cl.medium_genre_overrides}) {
            for (const auto& tag : *list) {
                if (!c.tags.count(tag)) {
                    warnings->push_back("curated tag not present in corpus: " + tag);
                }
            }
        }
    }
    std::map<TagId, int64_t> occurrence;
    for (const auto& game : c.games) {
        for (const auto& [tag, count] : game.tag_counts) {
            if (count > 0) ++occurrence[tag];
        }
    }
    ta.high_subtaxon.clear();
    for (const auto& [tag, taxon] : ta.taxon) {
        if (taxon != Taxon::High) continue;
        HighSubtaxon sub;
        if (cl.non_game_tags.count(tag)) {
            sub = HighSubtaxon::NonGame;
        } else if (occurrence[tag] < th.min_genre_games) {
            sub = HighSubtaxon::TooFewGames;
        } else if (cl.misc_tags.count(tag)) {
            sub = HighSubtaxon::Misc;
        } else {
            sub = HighSubtaxon::Genre;
        }
        ta.high_subtaxon[tag] = sub;
    }
}

std::vector<TagId> genre_list(const TaxonAssignment& ta, const CuratedLists& cl) {
    std::set<TagId> genres;
    for (const auto& [tag, sub] : ta.high_subtaxon) {
        if (sub == HighSubtaxon::Genre) genres.insert(tag);
    }
    for (const auto& tag : cl.medium_genre_overrides) {
        if (ta.taxon.count(tag)) genres.insert(tag);
    }
    return {genres.begin(), genres.end()};
}

}  // namespace tagtaxa
