#ifndef TAGTAXA_FETCH_HPP
#define TAGTAXA_FETCH_HPP

#include <chrono>
#include <string>
#include <vector>

namespace tagtaxa {

struct FetchOptions {
    int retries = 3;                               // total attempts per page
    std::chrono::milliseconds delay{1000};         // minimum gap between requests
};

struct FetchReport {
    std::vector<int> requested_pages;  // pages actually fetched over the wire
    std::vector<int> cached_pages;     // pages served from existing files
    std::vector<std::string> files;    // one path per page, in page order
};

// Downloads pages [first_page, last_page] of a paged snapshot endpoint into
// cache_dir as page_<N>.json. Existing files are never re-fetched or
// rewritten; refreshing requires deleting them. An empty range (first >
// last) performs no requests. Throws after `retries` failed attempts,
// naming the page; pages fetched before the failure stay in the cache.
FetchReport fetch_snapshot(const std::string& endpoint, int first_page, int last_page,
                           const std::string& cache_dir, const FetchOptions& options = {});

}  // namespace tagtaxa

#endif
