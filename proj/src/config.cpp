#include "tagtaxa/config.hpp"

#include <sstream>
#include <stdexcept>

#include "tagtaxa/synonymy.hpp"
#include "tagtaxa/taxonomy.hpp"
#include "tagtaxa/util.hpp"

namespace tagtaxa {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct TomlValue {
    enum class Kind { String, Number, Boolean, Array } kind;
    std::string str;
    double num = 0;
    bool boolean = false;
    std::vector<std::string> array;  // string arrays only
};

std::string parse_quoted(const std::string& s, std::size_t& pos, const std::string& where) {
    if (s[pos] != '"') throw std::runtime_error(where + ": expected '\"'");
    std::string out;
    ++pos;
    while (pos < s.size() && s[pos] != '"') {
        if (s[pos] == '\\' && pos + 1 < s.size()) {
            ++pos;
            switch (s[pos]) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default:
                    throw std::runtime_error(where + ": unsupported escape \\" +
                                             std::string(1, s[pos]));
            }
        } else {
            out += s[pos];
        }
        ++pos;
    }
    if (pos >= s.size()) throw std::runtime_error(where + ": unterminated string");
    ++pos;  // closing quote
    return out;
}

TomlValue parse_value(const std::string& raw, const std::string& where) {
    std::string s = trim(raw);
    if (s.empty()) throw std::runtime_error(where + ": empty value");
    TomlValue v;
    if (s.front() == '"') {
        std::size_t pos = 0;
        v.kind = TomlValue::Kind::String;
        v.str = parse_quoted(s, pos, where);
        if (trim(s.substr(pos)) != "") {
            throw std::runtime_error(where + ": trailing characters after string");
        }
        return v;
    }
    if (s.front() == '[') {
        if (s.back() != ']') throw std::runtime_error(where + ": unterminated array");
        v.kind = TomlValue::Kind::Array;
        std::string inner = trim(s.substr(1, s.size() - 2));
        std::size_t pos = 0;
        while (pos < inner.size()) {
            while (pos < inner.size() && (inner[pos] == ' ' || inner[pos] == '\t')) ++pos;
            if (pos >= inner.size()) break;
            v.array.push_back(parse_quoted(inner, pos, where));
            while (pos < inner.size() && (inner[pos] == ' ' || inner[pos] == '\t')) ++pos;
            if (pos < inner.size()) {
                if (inner[pos] != ',') {
                    throw std::runtime_error(where + ": expected ',' in array");
                }
                ++pos;
            }
        }
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = TomlValue::Kind::Boolean;
        v.boolean = (s == "true");
        return v;
    }
    try {
        std::size_t pos = 0;
        v.num = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        v.kind = TomlValue::Kind::Number;
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": cannot parse value '" + s + "'");
    }
}

// strips a trailing comment that is not inside a quoted string
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

double expect_number(const TomlValue& v, const std::string& where) {
    if (v.kind != TomlValue::Kind::Number) {
        throw std::runtime_error(where + ": expected a number");
    }
    return v.num;
}

int64_t expect_integer(const TomlValue& v, const std::string& where) {
    double d = expect_number(v, where);
    auto i = static_cast<int64_t>(d);
    if (static_cast<double>(i) != d) {
        throw std::runtime_error(where + ": expected an integer");
    }
    return i;
}

bool expect_bool(const TomlValue& v, const std::string& where) {
    if (v.kind != TomlValue::Kind::Boolean) {
        throw std::runtime_error(where + ": expected true or false");
    }
    return v.boolean;
}

std::string expect_string(const TomlValue& v, const std::string& where) {
    if (v.kind != TomlValue::Kind::String) {
        throw std::runtime_error(where + ": expected a quoted string");
    }
    return v.str;
}

std::vector<std::string> expect_array(const TomlValue& v, const std::string& where) {
    if (v.kind != TomlValue::Kind::Array) {
        throw std::runtime_error(where + ": expected an array of strings");
    }
    return v.array;
}

}  // namespace

void PipelineConfig::validate() const {
    TaxaThresholds th{low_median_max, high_median_min, high_peak_min, min_genre_games};
    th.validate();
    if (bins <= 0) throw std::invalid_argument("bins must be positive");
    if (min_players < 1) throw std::invalid_argument("min_players must be >= 1");
    if (max_tags < 1) throw std::invalid_argument("max_tags must be >= 1");
    if (exact_budget < 0) throw std::invalid_argument("exact_budget must be >= 0");
    if (extend_k < 0) throw std::invalid_argument("extend_k must be >= 0");
    if (indegree_min < 0) throw std::invalid_argument("indegree_min must be >= 0");
    CuratedLists cl;
    cl.non_game_tags = non_game_tag_set();
    cl.misc_tags = misc_tag_set();
    cl.medium_genre_overrides = medium_genre_override_set();
    cl.validate();
    cross_taxon_keep_set();  // throws on malformed entries
}

std::set<TagId> PipelineConfig::non_game_tag_set() const {
    if (use_default_non_game_tags) return CuratedLists::defaults().non_game_tags;
    return {non_game_tags.begin(), non_game_tags.end()};
}

std::set<TagId> PipelineConfig::misc_tag_set() const {
    if (use_default_misc_tags) return CuratedLists::defaults().misc_tags;
    return {misc_tags.begin(), misc_tags.end()};
}

std::set<TagId> PipelineConfig::medium_genre_override_set() const {
    if (use_default_medium_genre_overrides) {
        return CuratedLists::defaults().medium_genre_overrides;
    }
    return {medium_genre_overrides.begin(), medium_genre_overrides.end()};
}

std::set<TagId> PipelineConfig::synonym_extra_excluded_set() const {
    if (use_default_synonym_extra_excluded) return default_synonym_extra_excluded();
    return {synonym_extra_excluded.begin(), synonym_extra_excluded.end()};
}

std::set<std::pair<TagId, TagId>> PipelineConfig::cross_taxon_keep_set() const {
    if (use_default_cross_taxon_keep) return default_cross_taxon_keep();
    std::set<std::pair<TagId, TagId>> out;
    for (const auto& entry : cross_taxon_keep) {
        auto pos = entry.find("->");
        if (pos == std::string::npos) {
            throw std::invalid_argument("cross_taxon_keep entry must look like \"A->B\": " +
                                        entry);
        }
        out.emplace(trim(entry.substr(0, pos)), trim(entry.substr(pos + 2)));
    }
    return out;
}

std::string PipelineConfig::canonical_dump() const {
    std::ostringstream out;
    auto dump_list = [&](const char* key, const std::set<TagId>& values) {
        out << key << " = [";
        bool first = true;
        for (const auto& v : values) {
            if (!first) out << ", ";
            first = false;
            out << '"' << v << '"';
        }
        out << "]\n";
    };
    out << "bins = " << bins << "\n";
    out << "cache_dir = \"" << cache_dir << "\"\n";
    auto keep = cross_taxon_keep_set();
    out << "cross_taxon_keep = [";
    bool first = true;
    for (const auto& [a, b] : keep) {
        if (!first) out << ", ";
        first = false;
        out << '"' << a << "->" << b << '"';
    }
    out << "]\n";
    out << "exact_budget = " << exact_budget << "\n";
    out << "exclude_capital = " << (exclude_capital ? "true" : "false") << "\n";
    out << "extend_k = " << extend_k << "\n";
    out << "fetch_delay_ms = " << fetch_delay_ms << "\n";
    out << "fetch_retries = " << fetch_retries << "\n";
    out << "global_min = " << format_fixed9(global_min) << "\n";
    out << "high_median_min = " << format_fixed9(high_median_min) << "\n";
    out << "high_peak_min = " << format_fixed9(high_peak_min) << "\n";
    out << "indegree_min = " << indegree_min << "\n";
    out << "local_min_meronomy = " << format_fixed9(local_min_meronomy) << "\n";
    out << "local_min_synonymy = " << format_fixed9(local_min_synonymy) << "\n";
    out << "low_median_max = " << format_fixed9(low_median_max) << "\n";
    out << "max_tags = " << max_tags << "\n";
    dump_list("medium_genre_overrides", medium_genre_override_set());
    out << "min_genre_games = " << min_genre_games << "\n";
    out << "min_players = " << min_players << "\n";
    dump_list("misc_tags", misc_tag_set());
    dump_list("non_game_tags", non_game_tag_set());
    out << "presence_mode = " << (presence_mode ? "true" : "false") << "\n";
    dump_list("synonym_extra_excluded", synonym_extra_excluded_set());
    return out.str();
}

PipelineConfig parse_config(const std::string& text, const std::string& origin) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string where = origin + ":" + std::to_string(lineno);
        std::string stripped = trim(strip_comment(line));
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(where + ": expected key = value");
        }
        std::string key = trim(stripped.substr(0, eq));
        TomlValue value = parse_value(stripped.substr(eq + 1), where);

        if (key == "min_players") cfg.min_players = expect_integer(value, where);
        else if (key == "max_tags") cfg.max_tags = static_cast<int>(expect_integer(value, where));
        else if (key == "bins") cfg.bins = static_cast<int>(expect_integer(value, where));
        else if (key == "low_median_max") cfg.low_median_max = expect_number(value, where);
        else if (key == "high_median_min") cfg.high_median_min = expect_number(value, where);
        else if (key == "high_peak_min") cfg.high_peak_min = expect_number(value, where);
        else if (key == "min_genre_games") cfg.min_genre_games = expect_integer(value, where);
        else if (key == "non_game_tags") {
            cfg.non_game_tags = expect_array(value, where);
            cfg.use_default_non_game_tags = false;
        } else if (key == "misc_tags") {
            cfg.misc_tags = expect_array(value, where);
            cfg.use_default_misc_tags = false;
        } else if (key == "medium_genre_overrides") {
            cfg.medium_genre_overrides = expect_array(value, where);
            cfg.use_default_medium_genre_overrides = false;
        } else if (key == "global_min") cfg.global_min = expect_number(value, where);
        else if (key == "local_min_meronomy") cfg.local_min_meronomy = expect_number(value, where);
        else if (key == "local_min_synonymy") cfg.local_min_synonymy = expect_number(value, where);
        else if (key == "indegree_min") cfg.indegree_min = static_cast<int>(expect_integer(value, where));
        else if (key == "presence_mode") cfg.presence_mode = expect_bool(value, where);
        else if (key == "synonym_extra_excluded") {
            cfg.synonym_extra_excluded = expect_array(value, where);
            cfg.use_default_synonym_extra_excluded = false;
        } else if (key == "exclude_capital") cfg.exclude_capital = expect_bool(value, where);
        else if (key == "cross_taxon_keep") {
            cfg.cross_taxon_keep = expect_array(value, where);
            cfg.use_default_cross_taxon_keep = false;
        } else if (key == "exact_budget") cfg.exact_budget = static_cast<int>(expect_integer(value, where));
        else if (key == "extend_k") cfg.extend_k = static_cast<int>(expect_integer(value, where));
        else if (key == "cache_dir") cfg.cache_dir = expect_string(value, where);
        else if (key == "fetch_retries") cfg.fetch_retries = static_cast<int>(expect_integer(value, where));
        else if (key == "fetch_delay_ms") cfg.fetch_delay_ms = expect_integer(value, where);
        else {
            throw std::runtime_error(where + ": unknown config key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    return parse_config(read_file(path), path);
}

}  // namespace tagtaxa
