#ifndef TAGTAXA_TAXONOMY_HPP
#define TAGTAXA_TAXONOMY_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tagtaxa/corpus.hpp"
#include "tagtaxa/priority.hpp"

namespace tagtaxa {

enum class Taxon { Low, Medium, High };
enum class HighSubtaxon { Genre, TooFewGames, NonGame, Misc };

std::string to_string(Taxon t);
std::string to_string(HighSubtaxon t);

struct TaxaThresholds {
    double low_median_max = 0.45;
    double high_median_min = 0.574803;
    double high_peak_min = 0.765644;
    int64_t min_genre_games = 100;

    void validate() const;  // throws std::invalid_argument
};

// The "gameplay-related" judgment is a human call; it ships as editable
// data, not an inference.
struct CuratedLists {
    std::set<TagId> non_game_tags;
    std::set<TagId> misc_tags;
    std::set<TagId> medium_genre_overrides;

    static CuratedLists defaults();
    void validate() const;  // the three sets must be pairwise disjoint
};

struct TaxonAssignment {
    std::map<TagId, Taxon> taxon;
    std::map<TagId, HighSubtaxon> high_subtaxon;  // High tags only
};

// Low iff median <= low_median_max; High iff median >= high_median_min and
// the histogram peak's left edge >= high_peak_min; Medium otherwise. All
// boundaries inclusive.
TaxonAssignment classify_taxa(const PriorityMatrix& m, const TaxaThresholds& th, int bins);

// Fills high_subtaxon with precedence NonGame > TooFewGames > Misc > Genre.
// Curated entries missing from the corpus produce warnings, not errors.
void subdivide_high(TaxonAssignment& ta, const Corpus& c, const CuratedLists& cl,
                    const TaxaThresholds& th, std::vector<std::string>* warnings = nullptr);

// High/Genre tags plus the medium-genre overrides present in the corpus,
// sorted lexicographically.
std::vector<TagId> genre_list(const TaxonAssignment& ta, const CuratedLists& cl);

}  // namespace tagtaxa

#endif
