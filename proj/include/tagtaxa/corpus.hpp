#ifndef TAGTAXA_CORPUS_HPP
#define TAGTAXA_CORPUS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace tagtaxa {

// Tag names are compared byte-for-byte; Steam tags are case- and
// hyphen-sensitive, so no normalisation happens anywhere.
using TagId = std::string;

struct GameRecord {
    std::string game_id;
    std::string title;
    std::map<TagId, int64_t> tag_counts;  // tag -> number of players who assigned it

    bool operator==(const GameRecord&) const = default;
};

struct Corpus {
    std::vector<GameRecord> games;
    std::set<TagId> tags;  // registry of every tag referenced by any game

    bool operator==(const Corpus&) const = default;
};

struct CorpusStats {
    int64_t n_games = 0;
    int64_t n_tags = 0;
    int64_t n_games_with_20_tags = 0;
    int64_t n_games_min100_taggers = 0;  // games whose top tag count is >= 100
};

enum class CorpusFormat { SnapshotJson, Csv };

struct CleanOptions {
    int64_t min_players = 5;  // set to 1 to effectively disable the floor
    int max_tags = 20;
};

struct CleanRemoval {
    std::string game_id;
    TagId tag;          // empty when the whole game was dropped
    int64_t count = 0;  // player count of the removed tag (0 for game drops)
    std::string rule;   // vr-only | min-players | tag-cap | empty-game
};

struct CleanReport {
    std::vector<CleanRemoval> removals;
    std::size_t games_before = 0;
    std::size_t games_after = 0;
    std::size_t tags_before = 0;
    std::size_t tags_after = 0;
};

// Loads records verbatim, anomalies included. `path` may be a single file
// or a directory of files with the format's extension (merged in filename
// order). Throws on malformed records, negative counts and duplicate ids.
Corpus load_corpus(const std::string& path, CorpusFormat format);

// Applies the snapshot cleaning rules in order: the 21st-position
// "VR Only" tag with count 1, the per-tag player floor, the 20-tag cap
// (ties kept by lexicographically smaller name), then drops games left
// without tags. Total and idempotent.
Corpus clean_corpus(const Corpus& c, CleanReport* report = nullptr,
                    const CleanOptions& options = {});

CorpusStats corpus_stats(const Corpus& c);

// Canonical snapshot-json serialisation (array of per-game objects), used
// by the `clean` subcommand and round-trip tests.
std::string corpus_to_snapshot_json(const Corpus& c);

}  // namespace tagtaxa

#endif
