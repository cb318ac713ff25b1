#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "ransomtrace/campaign.hpp"
#include "ransomtrace/classify.hpp"
#include "ransomtrace/errors.hpp"
#include "ransomtrace/expand.hpp"
#include "ransomtrace/ingest.hpp"
#include "ransomtrace/ledger_store.hpp"
#include "ransomtrace/manifest.hpp"
#include "ransomtrace/price_series.hpp"
#include "ransomtrace/report.hpp"

namespace rt = ransomtrace;
namespace fs = std::filesystem;

namespace {

constexpr const char* kToolVersion = "ransomtrace 0.1.0";

// Stable, documented exit codes.
constexpr int kExitConfig = 2;
constexpr int kExitStageDependency = 3;
constexpr int kExitProvider = 4;
constexpr int kExitData = 5;

std::string utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Options {
    std::string campaign_path;
    std::string store_path;
    std::string prices_path;
    std::string provider_kind = "fixture";
    std::string fixture_dir;
    std::string api_base;
    std::string out_dir = "out";
    std::string cluster_path;  // defaults to <out>/cluster.csv
    double rate_limit = 4.0;
    int max_retries = 3;
    int page_size = 50;
    int parallelism = 1;
    int rounds = 0;        // 0: run to fixed point
    std::size_t max_size = 0;  // 0: unlimited
    bool no_shadow = false;
    std::size_t max_inputs = 0;  // 0: uncapped
    bool dense = false;
    std::string fee_band_mode;
};

rt::ProviderSpec provider_spec(const Options& opt) {
    rt::ProviderSpec spec;
    spec.rate_limit = opt.rate_limit;
    spec.max_retries = opt.max_retries;
    spec.page_size = opt.page_size;
    if (opt.provider_kind == "fixture") {
        spec.kind = rt::ProviderSpec::Kind::fixture;
        if (opt.fixture_dir.empty())
            throw rt::ConfigError("--fixture-dir is required with --provider fixture");
        spec.base_url_or_dir = opt.fixture_dir;
    } else if (opt.provider_kind == "http") {
        spec.kind = rt::ProviderSpec::Kind::http;
        std::string base = opt.api_base;
        if (base.empty())
            if (const char* env = std::getenv("RANSOMTRACE_API_BASE")) base = env;
        if (base.empty())
            throw rt::ConfigError(
                "http provider needs --api-base or the RANSOMTRACE_API_BASE env var");
        spec.base_url_or_dir = base;
    } else {
        throw rt::ConfigError("--provider must be 'http' or 'fixture'");
    }
    return spec;
}

std::string provider_label(const rt::ProviderSpec& spec) {
    return (spec.kind == rt::ProviderSpec::Kind::fixture ? "fixture:" : "http:") +
           spec.base_url_or_dir;
}

fs::path cluster_path(const Options& opt) {
    return opt.cluster_path.empty() ? fs::path(opt.out_dir) / "cluster.csv"
                                    : fs::path(opt.cluster_path);
}

void finish_manifest(const Options& opt, const std::string& stage, const std::string& provider,
                     const std::string& started_at) {
    rt::RunManifest manifest{stage,
                             fs::path(opt.campaign_path).stem().string(),
                             provider,
                             opt.store_path,
                             opt.prices_path,
                             rt::sha256_file(opt.campaign_path),
                             kToolVersion,
                             started_at,
                             utc_now()};
    rt::write_manifest(fs::path(opt.out_dir) / ("manifest_" + stage + ".json"), manifest);
}

int cmd_expand(const Options& opt) {
    std::string started = utc_now();
    rt::CampaignConfig config = rt::load_campaign_config(opt.campaign_path);
    rt::ProviderSpec spec = provider_spec(opt);
    auto provider = rt::make_provider(spec);

    rt::ExpansionConfig expansion;
    if (opt.rounds > 0) expansion.max_rounds = opt.rounds;
    if (opt.max_size > 0) expansion.max_cluster_size = opt.max_size;
    expansion.shadow_detection = !opt.no_shadow;
    if (opt.max_inputs > 0) expansion.max_inputs_per_tx = opt.max_inputs;
    expansion.parallelism = opt.parallelism;

    fs::create_directories(opt.out_dir);
    try {
        rt::ClusterSet cluster = rt::expand(config.seeds, *provider, expansion, config.name);
        rt::save_cluster_csv(cluster_path(opt), cluster);
        std::cout << "expanded " << config.name << " to " << cluster.members.size()
                  << " addresses -> " << cluster_path(opt).string() << "\n";
    } catch (const rt::ClusterSizeExceeded& e) {
        rt::save_cluster_csv(cluster_path(opt), e.partial());
        std::cerr << "error: " << e.what() << " (partial cluster written to "
                  << cluster_path(opt).string() << ")\n";
        finish_manifest(opt, "expand", provider_label(spec), started);
        return kExitData;
    }
    finish_manifest(opt, "expand", provider_label(spec), started);
    return 0;
}

int cmd_ingest(const Options& opt) {
    std::string started = utc_now();
    rt::CampaignConfig config = rt::load_campaign_config(opt.campaign_path);
    if (opt.store_path.empty()) throw rt::ConfigError("--store is required for ingest");
    if (!fs::exists(cluster_path(opt)))
        throw rt::StageDependencyMissing("cluster CSV missing at " + cluster_path(opt).string() +
                                         "; run `ransomtrace expand` first");
    rt::ClusterSet cluster = rt::load_cluster_csv(cluster_path(opt), config.name);
    rt::ProviderSpec spec = provider_spec(opt);
    auto provider = rt::make_provider(spec);

    rt::LedgerStore store(opt.store_path, rt::StoreMode::read_write);
    rt::IngestReport report = rt::ingest_cluster(*provider, store, cluster, opt.parallelism);
    std::cout << "ingested " << cluster.members.size() << " addresses: " << report.tx_seen
              << " tx seen, " << report.tx_new << " new, " << report.payments_new
              << " new payments -> " << opt.store_path << "\n";
    fs::create_directories(opt.out_dir);
    finish_manifest(opt, "ingest", provider_label(spec), started);
    return 0;
}

int cmd_classify(const Options& opt) {
    std::string started = utc_now();
    rt::CampaignConfig config = rt::load_campaign_config(opt.campaign_path);
    if (!opt.fee_band_mode.empty())
        config.fee_band_mode = rt::fee_band_mode_from_string(opt.fee_band_mode);
    if (opt.store_path.empty()) throw rt::ConfigError("--store is required for classify");
    if (!fs::exists(opt.store_path))
        throw rt::StageDependencyMissing("store missing at " + opt.store_path +
                                         "; run `ransomtrace ingest` first");
    if (!fs::exists(cluster_path(opt)))
        throw rt::StageDependencyMissing("cluster CSV missing at " + cluster_path(opt).string() +
                                         "; run `ransomtrace expand` first");
    if (opt.prices_path.empty()) throw rt::ConfigError("--prices is required for classify");

    rt::ClusterSet cluster = rt::load_cluster_csv(cluster_path(opt), config.name);
    rt::LedgerStore store(opt.store_path, rt::StoreMode::read_only);
    rt::PriceSeries prices = rt::load_price_series(opt.prices_path);

    rt::ClassificationResult result = rt::classify_cluster(store, cluster, config, prices);
    fs::create_directories(opt.out_dir);
    rt::save_classification(fs::path(opt.out_dir) / "classification.json", result);
    rt::write_classified_csv(fs::path(opt.out_dir) / "classified.csv", result);
    rt::write_unclassifiable_csv(fs::path(opt.out_dir) / "unclassifiable.csv", result);
    std::cout << "classified " << result.total_count() << " payments: " << result.ransoms.size()
              << " ransom, " << result.non_ransom_count << " non-ransom, "
              << result.unclassifiable.size() << " unclassifiable\n";
    finish_manifest(opt, "classify", "", started);
    return 0;
}

int cmd_report(const Options& opt) {
    std::string started = utc_now();
    rt::CampaignConfig config = rt::load_campaign_config(opt.campaign_path);
    fs::path classification = fs::path(opt.out_dir) / "classification.json";
    if (!fs::exists(classification))
        throw rt::StageDependencyMissing("classification output missing at " +
                                         classification.string() +
                                         "; run `ransomtrace classify` first");
    rt::ClassificationResult result = rt::load_classification(classification);

    rt::CampaignSummary summary = rt::summarize(result, config.rules);
    rt::write_summary_csv(fs::path(opt.out_dir) / "summary.csv", summary);
    rt::write_per_rule_csv(fs::path(opt.out_dir) / "per_rule.csv", summary);
    rt::write_daily_csv(fs::path(opt.out_dir) / "daily.csv",
                        rt::daily_series(result, opt.dense));
    auto aggregates = rt::per_address(result);
    rt::write_per_address_csv(fs::path(opt.out_dir) / "per_address.csv", aggregates);
    if (!aggregates.empty()) {
        rt::write_cdf_csv(fs::path(opt.out_dir) / "cdf_count.csv",
                          rt::cdf(aggregates, rt::CdfMetric::count), rt::CdfMetric::count);
        rt::write_cdf_csv(fs::path(opt.out_dir) / "cdf_btc.csv",
                          rt::cdf(aggregates, rt::CdfMetric::btc), rt::CdfMetric::btc);
    }
    std::cout << "report written to " << opt.out_dir << " (ransom payments: "
              << summary.ransom.payments << ", BTC " << summary.ransom.btc.to_btc(4) << ", USD "
              << summary.ransom.usd_avg.display() << ")\n";
    finish_manifest(opt, "report", "", started);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ransomtrace: expand ransomware wallet clusters, ingest their transaction "
                 "histories, classify ransom payments, and emit report data"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--campaign", opt.campaign_path, "Campaign config JSON")->required();
        cmd->add_option("--out", opt.out_dir, "Output directory for stage artifacts");
        return cmd;
    };
    auto add_provider = [&](CLI::App* cmd) {
        cmd->add_option("--provider", opt.provider_kind, "Provider kind: http|fixture");
        cmd->add_option("--fixture-dir", opt.fixture_dir, "Fixture snapshot directory");
        cmd->add_option("--api-base", opt.api_base,
                        "HTTP provider base URL (or env RANSOMTRACE_API_BASE)");
        cmd->add_option("--rate-limit", opt.rate_limit, "HTTP requests per second");
        cmd->add_option("--retries", opt.max_retries, "Retries after a failed request");
        cmd->add_option("--page-size", opt.page_size, "Transactions per page");
        cmd->add_option("--parallelism", opt.parallelism, "Concurrent per-address fetches");
    };

    CLI::App* expand = add_common(app.add_subcommand("expand", "Expand seed addresses into a "
                                                               "wallet cluster"));
    add_provider(expand);
    expand->add_option("--rounds", opt.rounds, "Stop after N expansion rounds");
    expand->add_option("--max-size", opt.max_size, "Abort when the cluster exceeds N members");
    expand->add_flag("--no-shadow", opt.no_shadow, "Disable change-address detection");
    expand->add_option("--max-inputs", opt.max_inputs,
                       "Ignore the multi-input heuristic on transactions with more distinct "
                       "inputs than this (mixer damper)");

    CLI::App* ingest = add_common(app.add_subcommand("ingest", "Fetch and store cluster "
                                                               "transaction histories"));
    add_provider(ingest);
    ingest->add_option("--store", opt.store_path, "Ledger store path")->required();
    ingest->add_option("--cluster", opt.cluster_path, "Cluster CSV (default <out>/cluster.csv)");

    CLI::App* classify = add_common(app.add_subcommand("classify", "Classify stored payments "
                                                                   "against the campaign "
                                                                   "schedule"));
    classify->add_option("--store", opt.store_path, "Ledger store path")->required();
    classify->add_option("--prices", opt.prices_path, "Daily price CSV (date,low,avg,high)")
        ->required();
    classify->add_option("--cluster", opt.cluster_path,
                         "Cluster CSV (default <out>/cluster.csv)");
    classify->add_option("--fee-band-mode", opt.fee_band_mode,
                         "USD fee handling: fee_to_usd|value_plus_fee");

    CLI::App* report = add_common(app.add_subcommand("report", "Aggregate a classification into "
                                                               "report CSVs"));
    report->add_flag("--dense", opt.dense, "Zero-fill gap days in the daily series");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand("expand")) return cmd_expand(opt);
        if (app.got_subcommand("ingest")) return cmd_ingest(opt);
        if (app.got_subcommand("classify")) return cmd_classify(opt);
        if (app.got_subcommand("report")) return cmd_report(opt);
        std::cerr << "error: no subcommand\n";
        return kExitConfig;
    } catch (const rt::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const rt::StageDependencyMissing& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStageDependency;
    } catch (const rt::ProviderUnavailable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitProvider;
    } catch (const rt::RateLimited& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitProvider;
    } catch (const rt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
