#include "qseries/report.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>

namespace qs {

namespace {

std::string elapsed_text(double ms)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << ms << " ms";
    return os.str();
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

std::optional<int> parse_int(std::string_view s)
{
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

/// Rows padded to the widest entry of each column.
std::string table(const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], r[i].size());
        }
    std::string out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

}  // namespace

std::string caps_text(const std::map<std::string, int>& caps)
{
    std::string out;
    for (const auto& [k, v] : caps) out += (out.empty() ? "" : ", ") + k + "=" + std::to_string(v);
    return out;
}

Json outcome_json(const VerificationOutcome& o, bool with_elapsed)
{
    Json j;
    j["id"] = o.id;
    j["status"] = std::string(to_string(o.status));
    j["mode"] = o.mode;
    j["caps"] = Json::object();
    for (const auto& [k, v] : o.caps) j["caps"][k] = v;
    if (o.witness) {
        Json w;
        w["label"] = o.witness->label;
        w["exponents"] = Json::object();
        for (const auto& [name, e] : o.witness->exponents) w["exponents"][name] = e;
        w["lhs"] = to_string(o.witness->lhs);
        w["rhs"] = to_string(o.witness->rhs);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    j["note"] = o.note;
    if (with_elapsed) j["elapsed_ms"] = o.elapsed_ms;
    return j;
}

Json report_json(const std::vector<VerificationOutcome>& outcomes, bool with_elapsed)
{
    Json j;
    j["status"] = std::string(to_string(aggregate_status(outcomes)));
    j["results"] = Json::array();
    for (const auto& o : outcomes) j["results"].push_back(outcome_json(o, with_elapsed));
    return j;
}

std::string report_text(const std::vector<VerificationOutcome>& outcomes, bool with_elapsed)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto& o : outcomes) {
        std::vector<std::string> r{o.id, std::string(to_string(o.status)), o.mode, caps_text(o.caps)};
        if (with_elapsed) r.push_back(elapsed_text(o.elapsed_ms));
        rows.push_back(std::move(r));
    }
    std::string out = table(rows);
    for (const auto& o : outcomes) {
        if (o.witness) out += o.id + " witness: " + format_witness(*o.witness) + "\n";
        if (!o.note.empty()) out += o.id + " note: " + o.note + "\n";
    }
    out += "overall: " + std::string(to_string(aggregate_status(outcomes))) + "\n";
    return out;
}

Json record_json(const IdentityRecord& r)
{
    Json j;
    j["id"] = r.id;
    j["title"] = r.title;
    j["reference"] = r.reference;
    j["params"] = r.params;
    j["default_caps"] = Json::object();
    for (const auto& [k, v] : r.default_caps) j["default_caps"][k] = v;
    j["modes"] = r.supports_sample() ? Json{"series", "sample"} : Json{"series"};
    j["sample_params"] = r.sample_params;
    j["experimental"] = r.experimental;
    return j;
}

std::string catalog_text(const std::vector<IdentityRecord>& records)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : records)
        rows.push_back({r.id, r.title + (r.experimental ? " [experimental]" : ""), caps_text(r.default_caps),
                        r.supports_sample() ? "series,sample" : "series"});
    return table(rows);
}

ManifestError::ManifestError(int l, const std::string& what)
    : std::runtime_error("line " + std::to_string(l) + ": " + what), line(l)
{
}

std::optional<Status> parse_status(std::string_view text) noexcept
{
    for (Status s : {Status::Pass, Status::Fail, Status::Inconclusive})
        if (to_string(s) == text) return s;
    return std::nullopt;
}

std::vector<ManifestEntry> parse_manifest(std::istream& in)
{
    std::vector<ManifestEntry> out;
    std::string raw;
    for (int line = 1; std::getline(in, raw); ++line) {
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream fields(raw);
        std::vector<std::string> f;
        for (std::string w; fields >> w;) f.push_back(w);
        if (f.empty()) continue;
        if (f.size() != 5) throw ManifestError(line, "expected 5 fields, got " + std::to_string(f.size()));

        ManifestEntry e;
        e.line = line;
        e.id = f[0];
        try {
            find_record(e.id);
        } catch (const UnknownIdentity&) {
            throw ManifestError(line, "unknown identity '" + e.id + "'");
        }
        if (f[1] != "-") {
            e.q_cap = parse_int(f[1]);
            if (!e.q_cap || *e.q_cap < 0) throw ManifestError(line, "bad q cap '" + f[1] + "'");
        }
        if (f[2] != "-")
            for (const auto& item : split(f[2], ',')) {
                const auto kv = split(item, '=');
                const auto v = kv.size() == 2 ? parse_int(kv[1]) : std::nullopt;
                if (!v || kv[0].empty() || *v < 0) throw ManifestError(line, "bad cap '" + item + "'");
                e.caps[kv[0]] = *v;
            }
        std::string_view mode = f[3];
        constexpr std::string_view suffix = ":mutate-rhs";
        if (mode.ends_with(suffix)) {
            e.mutate_rhs = true;
            mode.remove_suffix(suffix.size());
        }
        const auto m = parse_mode(mode);
        if (!m) throw ManifestError(line, "bad mode '" + f[3] + "'");
        e.mode = *m;
        const auto s = parse_status(f[4]);
        if (!s) throw ManifestError(line, "bad expected status '" + f[4] + "'");
        e.expected = *s;
        out.push_back(std::move(e));
    }
    return out;
}

VerifyOptions entry_options(const ManifestEntry& e, const VerifyOptions& base)
{
    VerifyOptions o = base;
    o.q_cap = e.q_cap;
    o.caps = e.caps;
    o.mode = e.mode;
    o.mutation.reset();
    if (e.mutate_rhs) o.mutation = RhsMutation{};
    return o;
}

Json regression_json(const std::vector<RegressionResult>& results, bool with_elapsed)
{
    Json j;
    const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.matched(); });
    j["matched"] = all;
    j["entries"] = Json::array();
    for (const auto& r : results) {
        Json e;
        e["line"] = r.entry.line;
        e["expected"] = std::string(to_string(r.entry.expected));
        e["matched"] = r.matched();
        e["outcome"] = outcome_json(r.outcome, with_elapsed);
        j["entries"].push_back(e);
    }
    return j;
}

std::string regression_text(const std::vector<RegressionResult>& results)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : results)
        rows.push_back({"line " + std::to_string(r.entry.line), r.entry.id,
                        "expected " + std::string(to_string(r.entry.expected)),
                        "got " + std::string(to_string(r.outcome.status)), r.matched() ? "ok" : "MISMATCH"});
    std::string out = table(rows);
    const auto bad = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.matched(); });
    out += bad == 0 ? "all expectations met\n" : std::to_string(bad) + " expectation(s) not met\n";
    return out;
}

}  // namespace qs
