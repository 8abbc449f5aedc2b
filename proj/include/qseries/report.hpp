#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qseries/catalog.hpp"

namespace qs {

using Json = nlohmann::ordered_json;

/// {id, status, mode, caps, witness: {label, exponents, lhs, rhs} | null, note, elapsed_ms}.
/// Keys keep this order; elapsed_ms is left out when `with_elapsed` is false.
Json outcome_json(const VerificationOutcome& o, bool with_elapsed = true);

/// {status, results: [...]} with the aggregate status.
Json report_json(const std::vector<VerificationOutcome>& outcomes, bool with_elapsed = true);

/// Aligned columns, one row per outcome, followed by witness and note lines.
std::string report_text(const std::vector<VerificationOutcome>& outcomes, bool with_elapsed = true);

Json record_json(const IdentityRecord& r);
std::string catalog_text(const std::vector<IdentityRecord>& records);

/// "q=20, a=8"
std::string caps_text(const std::map<std::string, int>& caps);

// ---------------------------------------------------------------- regression manifests

/// One manifest line: "id q_cap param_caps mode expected_status".
/// q_cap and param_caps may be "-"; param_caps reads "a=8,b=8"; mode is
/// series, sample, or either with ":mutate-rhs" appended.
struct ManifestEntry {
    int line = 0;
    std::string id;
    std::optional<int> q_cap;
    std::map<std::string, int> caps;
    Mode mode = Mode::Series;
    bool mutate_rhs = false;
    Status expected = Status::Pass;
};

struct ManifestError : std::runtime_error {
    ManifestError(int line, const std::string& what);
    int line;
};

std::optional<Status> parse_status(std::string_view text) noexcept;

/// Blank lines and "#" comments are skipped. Throws ManifestError on malformed lines and unknown ids.
std::vector<ManifestEntry> parse_manifest(std::istream& in);

/// Options for one manifest entry on top of shared defaults (samples, seed).
VerifyOptions entry_options(const ManifestEntry& e, const VerifyOptions& base);

struct RegressionResult {
    ManifestEntry entry;
    VerificationOutcome outcome;
    bool matched() const noexcept { return outcome.status == entry.expected; }
};

Json regression_json(const std::vector<RegressionResult>& results, bool with_elapsed = true);
std::string regression_text(const std::vector<RegressionResult>& results);

}  // namespace qs
