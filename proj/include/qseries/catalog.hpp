#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qseries/catalog_builders.hpp"
#include "qseries/outcome.hpp"
#include "qseries/ratfun.hpp"
#include "qseries/series.hpp"

namespace qs {

enum class Mode { Series, Sample };

std::string_view to_string(Mode m) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;

struct UnknownIdentity : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Both sides of one comparison: truncated series, or exact rational functions.
using RationalSides = std::pair<RationalFunction, RationalFunction>;
using Sides = std::variant<builders::SeriesSides, RationalSides>;

struct Instance {
    /// e.g. "n=3", empty for a single comparison.
    std::string label;
    std::function<Sides()> build;
};

/// What a record's instance generator sees.
struct BuildContext {
    /// q followed by the parameters that stay formal.
    Registry reg;
    /// Caps of the registry variables.
    TruncationProfile profile;
    /// Every resolved cap, including depth caps such as "n" that are not variables.
    std::map<std::string, int> caps;
    /// Each parameter as its formal variable or as a sampled rational.
    std::map<std::string, SparsePoly> params;
    /// Multiplier for every truncated sum's term bound; 1 is the tight bound.
    int bound_scale = 1;

    int cap(std::string_view name) const;
    const SparsePoly& param(std::string_view name) const;
};

struct IdentityRecord {
    std::string id;
    std::string title;
    /// Where the statement comes from, in words.
    std::string reference;
    /// Formal parameters besides q.
    std::vector<std::string> params;
    std::map<std::string, int> default_caps;
    std::map<std::string, int> min_caps;
    /// Parameters sample mode replaces by rationals; empty when the record has no sample mode.
    std::vector<std::string> sample_params;
    /// Values a sampled parameter must avoid.
    std::vector<ExactScalar> excluded_values;
    bool experimental = false;
    std::function<std::vector<Instance>(const BuildContext&)> instances;

    bool supports_sample() const noexcept { return !sample_params.empty(); }
};

/// Adds coeff * monomial to every right-hand side; exponents name registry variables.
struct RhsMutation {
    std::map<std::string, int> exponents{{"q", 1}};
    ExactScalar coeff = 1;
};

struct VerifyOptions {
    /// Per-variable (or depth) overrides; names a record does not use are ignored.
    std::map<std::string, int> caps;
    std::optional<int> q_cap;
    Mode mode = Mode::Series;
    int samples = 3;
    std::uint64_t seed = 0;
    std::optional<RhsMutation> mutation;
    /// Lowers the exact cap of series right-hand sides per variable (a negative cap empties the region).
    std::map<std::string, int> restrict_exact;
    int bound_scale = 1;
};

/// The fixed catalog in its canonical order.
const std::vector<IdentityRecord>& catalog();

/// Throws UnknownIdentity.
const IdentityRecord& find_record(std::string_view id);

/// Caps a run uses: defaults, then q_cap, then explicit overrides. Throws std::invalid_argument below min_caps.
std::map<std::string, int> resolve_caps(const IdentityRecord& record, const VerifyOptions& options);

/// The mode actually used: sample falls back to series for records without a sample mode.
Mode effective_mode(const IdentityRecord& record, Mode requested) noexcept;

/// The sampled parameter values, one map per sample.
std::vector<std::map<std::string, ExactScalar>> draw_samples(const IdentityRecord& record, int count,
                                                             std::uint64_t seed);

/// Every comparison a run performs, labelled; sample labels read "c=3/7; n=3".
std::vector<Instance> expand_instances(const IdentityRecord& record, const VerifyOptions& options);

/// Applies a mutation to the right-hand side of built sides. Throws std::invalid_argument
/// when the mutation names a variable the sides do not carry.
Sides mutate_rhs(Sides sides, const RhsMutation& mutation);

/// PASS iff every instance passes; the first failure (in instance order) is reported.
VerificationOutcome compare_sides(const Sides& sides);
VerificationOutcome verify(const IdentityRecord& record, const VerifyOptions& options = {});
VerificationOutcome verify(std::string_view id, const VerifyOptions& options = {});

struct VerifyJob {
    const IdentityRecord* record = nullptr;
    VerifyOptions options;
};

/// Runs jobs on `jobs` threads (0 means hardware concurrency); outcome i belongs to job i.
/// An exception inside a job becomes an INCONCLUSIVE outcome carrying the message.
std::vector<VerificationOutcome> run_jobs(const std::vector<VerifyJob>& jobs, unsigned threads = 0);

/// Every record (or the given ones) on `jobs` worker threads; results in catalog order.
/// `mutate_ids` receive options.mutation, the others run unmutated.
std::vector<VerificationOutcome> verify_all(const VerifyOptions& options, unsigned jobs = 0,
                                            const std::vector<std::string>& ids = {},
                                            const std::vector<std::string>& mutate_ids = {});

Status aggregate_status(const std::vector<VerificationOutcome>& outcomes) noexcept;

}  // namespace qs
