#include "tagtaxa/fetch.hpp"

#include <filesystem>
#include <stdexcept>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "tagtaxa/util.hpp"

namespace fs = std::filesystem;

namespace tagtaxa {

namespace {

struct ParsedUrl {
    std::string base;           // scheme://host[:port]
    std::string path_query;     // /path[?query]
};

ParsedUrl parse_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw std::invalid_argument("endpoint must include a scheme: " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {url, "/"};
    }
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

FetchReport fetch_snapshot(const std::string& endpoint, int first_page, int last_page,
                           const std::string& cache_dir, const FetchOptions& options) {
    FetchReport report;
    if (first_page > last_page) return report;  // empty range, no requests

    fs::create_directories(cache_dir);
    ParsedUrl url = parse_url(endpoint);
    httplib::Client client(url.base);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(60);

    bool requested_before = false;
    for (int page = first_page; page <= last_page; ++page) {
        fs::path file = fs::path(cache_dir) / ("page_" + std::to_string(page) + ".json");
        report.files.push_back(file.string());
        if (fs::exists(file)) {
            report.cached_pages.push_back(page);
            continue;
        }
        std::string target = url.path_query;
        target += (target.find('?') == std::string::npos) ? '?' : '&';
        target += "page=" + std::to_string(page);

        std::string body;
        bool ok = false;
        std::string last_error;
        for (int attempt = 0; attempt < options.retries; ++attempt) {
            if (requested_before) std::this_thread::sleep_for(options.delay);
            requested_before = true;
            auto res = client.Get(target);
            if (res && res->status >= 200 && res->status < 300) {
                body = res->body;
                ok = true;
                break;
            }
            last_error = res ? ("HTTP " + std::to_string(res->status))
                             : ("transport error: " + httplib::to_string(res.error()));
        }
        if (!ok) {
            throw std::runtime_error("fetch failed for page " + std::to_string(page) +
                                     " after " + std::to_string(options.retries) +
                                     " attempts (" + last_error + ")");
        }
        report.requested_pages.push_back(page);
        // write via temp + rename so a crash never leaves a partial page
        fs::path tmp = file;
        tmp += ".part";
        write_file(tmp.string(), body);
        fs::rename(tmp, file);
    }
    return report;
}

}  // namespace tagtaxa
