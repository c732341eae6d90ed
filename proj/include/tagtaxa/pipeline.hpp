#ifndef TAGTAXA_PIPELINE_HPP
#define TAGTAXA_PIPELINE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "tagtaxa/config.hpp"
#include "tagtaxa/corpus.hpp"
#include "tagtaxa/meronomy.hpp"
#include "tagtaxa/priority.hpp"
#include "tagtaxa/synonymy.hpp"
#include "tagtaxa/taxonomy.hpp"

namespace tagtaxa {

inline constexpr const char* kToolVersion = "0.1.0";

struct TaxaRow {
    TagId tag;
    Taxon taxon = Taxon::Medium;
    std::string subtaxon;  // empty unless High
    double median = 0;
    double peak = 0;
    int64_t n_games = 0;
};

std::vector<TaxaRow> taxa_rows(const PriorityMatrix& m, const TaxonAssignment& ta, int bins);

// report serialisers; all output is deterministic, floats fixed to 9 digits
std::string matrix_to_csv(const PriorityMatrix& m);
std::string taxa_rows_to_csv(const std::vector<TaxaRow>& rows);
std::string coverage_to_csv(const std::vector<CoverageRow>& rows);
std::string ratio_report_to_json(const RatioReport& r);
std::string groups_to_json(const std::vector<SynonymGroup>& groups);
std::string capital_to_json(const CapitalResult& cap, int indegree_min,
                            const TagGraph& hasse, const ReductionReport& removed);
std::string stats_to_json(const CorpusStats& cs, const PriorityStats& ps);
std::string clean_report_to_json(const CleanReport& report);

// CSV of bin_left,count plus a .json sidecar carrying the summary numbers.
void export_histogram(const DistributionSummary& summary, const std::string& out_path);

struct StageOutput {
    std::string stage;
    std::string file;    // basename inside outdir
    std::string digest;  // fnv1a64 of the bytes written
};

struct RunManifest {
    std::string tool_version;
    std::string input_digest;
    std::string config_digest;
    std::string created_utc;
    std::vector<StageOutput> outputs;
    std::string failed_stage;  // empty on success
    std::string error;
};

std::string manifest_to_json(const RunManifest& m);

struct StageError : std::runtime_error {
    StageError(std::string stage_name, const std::string& message)
        : std::runtime_error(stage_name + ": " + message), stage(std::move(stage_name)) {}
    std::string stage;
};

// Runs the whole pipeline on a snapshot (or csv) input and emits every
// report plus manifest.json into outdir. On a stage failure the partial
// manifest is still written and a StageError thrown.
RunManifest analyze(const std::string& input, const PipelineConfig& config,
                    const std::string& outdir, int jobs = 1,
                    std::vector<std::string>* warnings = nullptr);

// .csv/.json detection used by the CLI for corpus inputs
CorpusFormat detect_format(const std::string& path);

}  // namespace tagtaxa

#endif
