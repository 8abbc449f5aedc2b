// qverify: list, verify and regress the identity catalog.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "qseries/report.hpp"

namespace {

using namespace qs;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInconclusive = 3 };

int exit_code(Status s)
{
    switch (s) {
    case Status::Pass: return kPass;
    case Status::Fail: return kFail;
    case Status::Inconclusive: return kInconclusive;
    }
    return kUsage;
}

struct Config {
    std::vector<std::string> ids;
    std::string manifest;
    int q_cap = -1;
    std::vector<std::string> caps;
    std::string mode = "series";
    int samples = 3;
    std::uint64_t seed = 0;
    std::string format = "text";
    unsigned jobs = 0;
    bool mutate_rhs = false;
    std::vector<std::string> restrict_exact;
    bool no_elapsed = false;
};

std::map<std::string, int> parse_assignments(const std::vector<std::string>& items, const char* flag)
{
    std::map<std::string, int> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        int v = 0;
        try {
            if (eq == std::string::npos || eq == 0) throw std::invalid_argument("");
            std::size_t used = 0;
            v = std::stoi(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw CLI::ValidationError(flag, "expected var=N, got '" + item + "'");
        }
        out[item.substr(0, eq)] = v;
    }
    return out;
}

VerifyOptions make_options(const Config& c)
{
    VerifyOptions o;
    if (c.q_cap >= 0) o.q_cap = c.q_cap;
    o.caps = parse_assignments(c.caps, "--cap");
    for (const auto& [k, v] : o.caps)
        if (v < 0) throw CLI::ValidationError("--cap", "caps must be non-negative");
    o.mode = *parse_mode(c.mode);
    o.samples = c.samples;
    o.seed = c.seed;
    if (c.mutate_rhs) o.mutation = RhsMutation{};
    o.restrict_exact = parse_assignments(c.restrict_exact, "--restrict-exact");
    return o;
}

void emit(const Config& c, const std::vector<VerificationOutcome>& outcomes)
{
    if (c.format == "json")
        std::cout << report_json(outcomes, !c.no_elapsed).dump(2) << "\n";
    else
        std::cout << report_text(outcomes, !c.no_elapsed);
}

int cmd_list(const Config& c)
{
    if (c.format == "json") {
        Json j = Json::array();
        for (const auto& r : catalog()) j.push_back(record_json(r));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << catalog_text(catalog());
    }
    return kPass;
}

int cmd_verify(const Config& c, bool all)
{
    const VerifyOptions o = make_options(c);
    const auto outcomes = verify_all(o, c.jobs, all ? std::vector<std::string>{} : c.ids);
    emit(c, outcomes);
    return exit_code(aggregate_status(outcomes));
}

int cmd_regress(const Config& c)
{
    std::ifstream in(c.manifest);
    if (!in) {
        std::cerr << "qverify: cannot open manifest '" << c.manifest << "'\n";
        return kUsage;
    }
    const auto entries = parse_manifest(in);
    const VerifyOptions base = make_options(c);
    std::vector<VerifyJob> jobs;
    for (const auto& e : entries) jobs.push_back({&find_record(e.id), entry_options(e, base)});
    const auto outcomes = run_jobs(jobs, c.jobs);

    std::vector<RegressionResult> results;
    for (std::size_t i = 0; i < entries.size(); ++i) results.push_back({entries[i], outcomes[i]});
    const Json report = regression_json(results, !c.no_elapsed);

    const std::filesystem::path out = std::filesystem::path(c.manifest).string() + ".report.json";
    std::ofstream(out) << report.dump(2) << "\n";
    if (c.format == "json")
        std::cout << report.dump(2) << "\n";
    else
        std::cout << regression_text(results) << "report: " << out.string() << "\n";
    const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.matched(); });
    return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact verification of a catalog of q-series identities"};
    app.require_subcommand(1);
    Config c;

    auto add_format = [&](CLI::App* s) {
        s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_run = [&](CLI::App* s) {
        add_format(s);
        s->add_option("--q-cap", c.q_cap, "Cap on the exponent of q")->check(CLI::NonNegativeNumber);
        s->add_option("--cap", c.caps, "Cap for a parameter or depth, var=N (repeatable)");
        s->add_option("--mode", c.mode, "Verification mode")->check(CLI::IsMember({"series", "sample"}));
        s->add_option("--samples", c.samples, "Samples per record in sample mode")->check(CLI::PositiveNumber);
        s->add_option("--seed", c.seed, "Seed for sample mode");
        s->add_option("--jobs", c.jobs, "Worker threads (0: all cores)");
        s->add_flag("--no-elapsed", c.no_elapsed, "Leave timings out of the report");
        s->add_flag("--mutate-rhs", c.mutate_rhs)->group("");
        s->add_option("--restrict-exact", c.restrict_exact)->group("");
    };

    auto* list = app.add_subcommand("list", "List the catalog");
    add_format(list);
    auto* verify = app.add_subcommand("verify", "Verify the given identities");
    verify->add_option("ids", c.ids, "Identity ids")->required();
    add_run(verify);
    auto* verify_all_cmd = app.add_subcommand("verify-all", "Verify every identity");
    add_run(verify_all_cmd);
    auto* regress = app.add_subcommand("regress", "Run a regression manifest");
    regress->add_option("manifest", c.manifest, "Manifest path")->required();
    add_run(regress);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*list) return cmd_list(c);
        if (*verify) return cmd_verify(c, false);
        if (*verify_all_cmd) return cmd_verify(c, true);
        return cmd_regress(c);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "qverify: " << e.what() << "\n";
        return kUsage;
    } catch (const ManifestError& e) {
        std::cerr << "qverify: malformed manifest, " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qverify: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "qverify: " << e.what() << "\n";
        return kInconclusive;
    }
}
