#include "tagtaxa/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tagtaxa/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace tagtaxa {

namespace {

bool is_blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

void add_game(Corpus& corpus, std::set<std::string>& seen, GameRecord record) {
    if (!seen.insert(record.game_id).second) {
        throw std::runtime_error("duplicate game_id: " + record.game_id);
    }
    for (const auto& [tag, count] : record.tag_counts) {
        (void)count;
        corpus.tags.insert(tag);
    }
    corpus.games.push_back(std::move(record));
}

GameRecord parse_snapshot_object(const json& obj, const std::string& fallback_id) {
    if (!obj.is_object()) {
        throw std::runtime_error("snapshot record is not an object (game " + fallback_id + ")");
    }
    GameRecord record;
    if (obj.contains("appid")) {
        const auto& id = obj.at("appid");
        if (id.is_number_integer()) {
            record.game_id = std::to_string(id.get<int64_t>());
        } else if (id.is_string()) {
            record.game_id = id.get<std::string>();
        } else {
            throw std::runtime_error("snapshot record has non-integer appid (game " +
                                     fallback_id + ")");
        }
    } else if (!fallback_id.empty()) {
        record.game_id = fallback_id;
    } else {
        throw std::runtime_error("snapshot record missing appid");
    }
    if (obj.contains("name")) {
        if (!obj.at("name").is_string()) {
            throw std::runtime_error("game " + record.game_id + ": name is not a string");
        }
        record.title = obj.at("name").get<std::string>();
    }
    if (!obj.contains("tags")) {
        throw std::runtime_error("game " + record.game_id + ": missing tags object");
    }
    const auto& tags = obj.at("tags");
    // SteamSpy emits "tags": [] for untagged games instead of an empty object.
    if (tags.is_array() && tags.empty()) return record;
    if (!tags.is_object()) {
        throw std::runtime_error("game " + record.game_id + ": tags is not an object");
    }
    for (const auto& [tag, value] : tags.items()) {
        if (tag.empty()) {
            throw std::runtime_error("game " + record.game_id + ": empty tag name");
        }
        if (!value.is_number_integer()) {
            throw std::runtime_error("game " + record.game_id + ": tag '" + tag +
                                     "' has a non-integer count");
        }
        int64_t count = value.get<int64_t>();
        if (count < 0) {
            throw std::runtime_error("game " + record.game_id + ": tag '" + tag +
                                     "' has negative count " + std::to_string(count));
        }
        record.tag_counts[tag] = count;
    }
    return record;
}

void load_snapshot_json_text(Corpus& corpus, std::set<std::string>& seen,
                             const std::string& text, const std::string& origin) {
    if (is_blank(text)) return;  // empty file -> empty corpus contribution
    json root;
    try {
        root = json::parse(text);
    } catch (const std::exception& e) {
        throw std::runtime_error(origin + ": JSON parse error: " + e.what());
    }
    if (root.is_array()) {
        for (const auto& obj : root) {
            add_game(corpus, seen, parse_snapshot_object(obj, ""));
        }
    } else if (root.is_object()) {
        // SteamSpy page shape: { "appid": {record}, ... }
        for (const auto& [key, obj] : root.items()) {
            add_game(corpus, seen, parse_snapshot_object(obj, key));
        }
    } else {
        throw std::runtime_error(origin + ": snapshot root must be an array or object");
    }
}

void load_csv_text(Corpus& corpus, std::set<std::string>& seen, const std::string& text,
                   const std::string& origin) {
    if (is_blank(text)) return;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) return;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_row(line);
    if (header.size() != 4 || header[0] != "game_id" || header[1] != "title" ||
        header[2] != "tag" || header[3] != "count") {
        throw std::runtime_error(origin + ": expected CSV header game_id,title,tag,count");
    }
    // rows for one game may be scattered; collect then emit in first-seen order
    std::map<std::string, GameRecord> records;
    std::vector<std::string> order;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != 4) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": expected 4 fields, got " +
                                     std::to_string(fields.size()));
        }
        const std::string& game_id = fields[0];
        const std::string& tag = fields[2];
        if (game_id.empty() || tag.empty()) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": empty game_id or tag");
        }
        int64_t count = 0;
        try {
            size_t pos = 0;
            count = std::stoll(fields[3], &pos);
            if (pos != fields[3].size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                     ": bad count '" + fields[3] + "' for game " + game_id);
        }
        if (count < 0) {
            throw std::runtime_error("game " + game_id + ": tag '" + tag +
                                     "' has negative count " + std::to_string(count));
        }
        auto [it, inserted] = records.try_emplace(game_id);
        if (inserted) {
            it->second.game_id = game_id;
            it->second.title = fields[1];
            order.push_back(game_id);
        }
        if (!it->second.tag_counts.emplace(tag, count).second) {
            throw std::runtime_error("game " + game_id + ": duplicate tag '" + tag + "'");
        }
    }
    for (const auto& id : order) {
        add_game(corpus, seen, std::move(records.at(id)));
    }
}

}  // namespace

Corpus load_corpus(const std::string& path, CorpusFormat format) {
    Corpus corpus;
    std::set<std::string> seen_ids;
    auto load_one = [&](const fs::path& file) {
        std::string text = read_file(file.string());
        if (format == CorpusFormat::SnapshotJson) {
            load_snapshot_json_text(corpus, seen_ids, text, file.string());
        } else {
            load_csv_text(corpus, seen_ids, text, file.string());
        }
    };
    fs::path p(path);
    if (fs::is_directory(p)) {
        const std::string ext = format == CorpusFormat::SnapshotJson ? ".json" : ".csv";
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(p)) {
            if (entry.is_regular_file() && entry.path().extension() == ext) {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) load_one(f);
    } else if (fs::exists(p)) {
        load_one(p);
    } else {
        throw std::runtime_error("input path does not exist: " + path);
    }
    return corpus;
}

Corpus clean_corpus(const Corpus& c, CleanReport* report, const CleanOptions& options) {
    if (options.min_players < 1) {
        throw std::invalid_argument("min_players must be >= 1");
    }
    CleanReport local;
    CleanReport& rep = report ? *report : local;
    rep = CleanReport{};
    rep.games_before = c.games.size();
    rep.tags_before = c.tags.size();

    Corpus out;
    for (const auto& game : c.games) {
        // sort by count desc, name asc; the prefix of this order is what the cap keeps
        std::vector<std::pair<TagId, int64_t>> sorted(game.tag_counts.begin(),
                                                      game.tag_counts.end());
        std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });

        // rule 1: Steam's synthetic 21st "VR Only" entry
        if (sorted.size() >= 21 && sorted[20].first == "VR Only" && sorted[20].second == 1) {
            rep.removals.push_back({game.game_id, "VR Only", 1, "vr-only"});
            sorted.erase(sorted.begin() + 20);
        }
        // rule 2: player floor
        std::vector<std::pair<TagId, int64_t>> kept;
        for (const auto& entry : sorted) {
            if (entry.second < options.min_players) {
                rep.removals.push_back({game.game_id, entry.first, entry.second, "min-players"});
            } else {
                kept.push_back(entry);
            }
        }
        // rule 3: 20-tag cap
        while (kept.size() > static_cast<size_t>(options.max_tags)) {
            const auto& victim = kept.back();
            rep.removals.push_back({game.game_id, victim.first, victim.second, "tag-cap"});
            kept.pop_back();
        }
        // rule 4: drop empty games
        if (kept.empty()) {
            rep.removals.push_back({game.game_id, "", 0, "empty-game"});
            continue;
        }
        GameRecord cleaned;
        cleaned.game_id = game.game_id;
        cleaned.title = game.title;
        for (const auto& [tag, count] : kept) cleaned.tag_counts[tag] = count;
        for (const auto& [tag, count] : cleaned.tag_counts) {
            (void)count;
            out.tags.insert(tag);
        }
        out.games.push_back(std::move(cleaned));
    }
    rep.games_after = out.games.size();
    rep.tags_after = out.tags.size();
    return out;
}

CorpusStats corpus_stats(const Corpus& c) {
    CorpusStats stats;
    stats.n_games = static_cast<int64_t>(c.games.size());
    stats.n_tags = static_cast<int64_t>(c.tags.size());
    for (const auto& game : c.games) {
        if (game.tag_counts.size() == 20) ++stats.n_games_with_20_tags;
        int64_t max_count = 0;
        for (const auto& [tag, count] : game.tag_counts) {
            (void)tag;
            max_count = std::max(max_count, count);
        }
        if (max_count >= 100) ++stats.n_games_min100_taggers;
    }
    return stats;
}

std::string corpus_to_snapshot_json(const Corpus& c) {
    json root = json::array();
    for (const auto& game : c.games) {
        json tags = json::object();
        for (const auto& [tag, count] : game.tag_counts) tags[tag] = count;
        json obj;
        obj["appid"] = game.game_id;
        obj["name"] = game.title;
        obj["tags"] = std::move(tags);
        root.push_back(std::move(obj));
    }
    return root.dump(2) + "\n";
}

}  // namespace tagtaxa
