#include <CLI11.hpp>

#include "ait/catalog.hpp"
#include "ait/conservation.hpp"
#include "ait/continuous.hpp"
#include "ait/enumeration.hpp"
#include "ait/errors.hpp"
#include "ait/machine.hpp"
#include "ait/measures.hpp"
#include "ait/report.hpp"
#include "ait/staged.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ait;

constexpr int kExitOk = 0;
constexpr int kExitHardAssert = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoProgram = 3;
constexpr int kExitIo = 4;
constexpr int kExitMissingCache = 5;

// Relative cache paths resolve inside AITLAB_CACHE_DIR when it is set;
// absolute paths and unset environments pass through untouched.
std::string resolve_cache_path(const std::string& path) {
    if (path.empty() || path.front() == '/')
        return path;
    const char* dir = std::getenv("AITLAB_CACHE_DIR");
    if (dir == nullptr || *dir == '\0')
        return path;
    std::string base(dir);
    if (base.back() != '/')
        base.push_back('/');
    return base + path;
}

EnumerationTable load_cache(const std::string& path, const char* role) {
    if (path.empty())
        throw Error(Error::Kind::MissingCache,
                    std::string("the ") + role +
                        " cache is required; harness commands never enumerate on "
                        "their own");
    return read_cache(resolve_cache_path(path));
}

BitString aux_from_spec(const std::string& spec, const std::string& source_path) {
    if (spec == "eps" || spec.empty())
        return BitString();
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw Error(Error::Kind::MalformedCode,
                    "aux must be eps, omega:<c> or halting:<n>, got " + spec);
    std::string kind = spec.substr(0, colon);
    int arg = 0;
    try {
        arg = std::stoi(spec.substr(colon + 1));
    } catch (const std::logic_error&) {
        throw Error(Error::Kind::MalformedCode, "bad aux argument in " + spec);
    }
    EnumerationTable source = load_cache(source_path, "aux source");
    if (kind == "omega")
        return omega_prefix(arg, source).bits;
    if (kind == "halting")
        return halting_oracle(source, arg);
    throw Error(Error::Kind::MalformedCode, "unknown aux kind in " + spec);
}

void echo_config(ConservationReport& report,
                 const std::vector<std::pair<std::string, std::string>>& config) {
    for (const auto& [k, v] : config)
        report.add_header(k, v);
}

int emit(const ConservationReport& report, const std::string& out_stem) {
    if (out_stem.empty())
        report.write_text(std::cout);
    else
        report.save(out_stem);
    return report.all_pass() ? kExitOk : kExitHardAssert;
}

std::vector<std::pair<BitString, BitString>> pair_grid(int max_len) {
    std::vector<std::pair<BitString, BitString>> pairs;
    for (const BitString& x : all_strings_upto(max_len))
        for (const BitString& y : all_strings_upto(max_len))
            pairs.emplace_back(x, y);
    return pairs;
}

// Row pairs whose complexity terms are all finite in both tables; the
// calibration domain stays the full grid.
std::vector<std::pair<BitString, BitString>> finite_rows(
    const TotalFunction& B, const std::vector<std::pair<BitString, BitString>>& pairs,
    const EnumerationTable& plain, const EnumerationTable& with_oracle) {
    std::vector<std::pair<BitString, BitString>> rows;
    for (const auto& [x, y] : pairs) {
        BitString bx = B.eval(x);
        if (mutual_info(bx, y, plain) && mutual_info(x, y, plain) &&
            info_with_oracle(pair_encode(x, y), plain, with_oracle))
            rows.emplace_back(x, y);
    }
    return rows;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"exact resource-bounded algorithmic information laboratory"};
    app.require_subcommand(1);

    // --- enumerate ---
    auto* cmd_enum = app.add_subcommand("enumerate", "build and persist a table");
    int max_len = 12;
    long max_steps = 1000;
    std::string aux_spec = "eps";
    std::string aux_source;
    std::string out_path;
    cmd_enum->add_option("--max-len", max_len, "program length bound");
    cmd_enum->add_option("--max-steps", max_steps, "per-run step budget");
    cmd_enum->add_option("--aux", aux_spec, "eps | omega:<c> | halting:<n>");
    cmd_enum->add_option("--aux-source", aux_source,
                         "cache the aux bits are derived from");
    cmd_enum->add_option("--out", out_path, "cache file to write")->required();

    // --- complexity ---
    auto* cmd_complexity = app.add_subcommand("complexity", "query one string");
    std::string x_text;
    std::string cache_path;
    std::string measure_label;
    cmd_complexity->add_option("--x", x_text, "the string, eps for empty")
        ->required();
    cmd_complexity->add_option("--cache", cache_path, "enumeration cache")
        ->required();
    cmd_complexity->add_option("--measure", measure_label,
                               "measure label for the deficiency");

    // --- conserve ---
    auto* cmd_conserve = app.add_subcommand("conserve", "discrete checks");
    std::string which;
    std::string oracle_cache_path;
    std::string function_label = "identity";
    std::string p_label = "uniform:4";
    std::string conserve_out;
    int domain_len = 6;
    int pairs_len = 4;
    int b_param = 4;
    int c_param = 3;
    std::optional<long> slack_override;
    long slack_value = 0;
    cmd_conserve->add_option("which", which, "prop1|thm1|thm2|thm3|thm4")
        ->required()
        ->check(CLI::IsMember({"prop1", "thm1", "thm2", "thm3", "thm4"}));
    cmd_conserve->add_option("--cache", cache_path, "plain cache")->required();
    cmd_conserve->add_option("--oracle-cache", oracle_cache_path,
                             "with-oracle cache");
    cmd_conserve->add_option("--function", function_label, "total function label");
    cmd_conserve->add_option("--measure", p_label, "source measure label");
    cmd_conserve->add_option("--domain-len", domain_len,
                             "row domain: strings up to this length");
    cmd_conserve->add_option("--pairs-len", pairs_len,
                             "pair grid bound for thm3");
    cmd_conserve->add_option("--b", b_param, "head length for thm2");
    cmd_conserve->add_option("--c", c_param, "omega prefix length for thm2");
    auto* slack_opt =
        cmd_conserve->add_option("--slack", slack_value, "slack override");
    cmd_conserve->add_option("--out", conserve_out, "report stem (.txt/.tsv)");

    // --- continuous ---
    auto* cmd_continuous = app.add_subcommand("continuous", "tree layer checks");
    std::string cwhich;
    int depth = 12;
    std::string tree_label = "uniform";
    std::string map_label = "identity";
    int m_max = 6;
    int row_len = 4;
    std::string continuous_out;
    cmd_continuous->add_option("which", cwhich, "ratio|thm5|thm6")
        ->required()
        ->check(CLI::IsMember({"ratio", "thm5", "thm6"}));
    cmd_continuous->add_option("--depth", depth, "working tree depth");
    cmd_continuous->add_option("--measure", tree_label, "tree measure label");
    cmd_continuous->add_option("--function", map_label, "monotone map label");
    cmd_continuous->add_option("--m", m_max, "largest ratio threshold exponent");
    cmd_continuous->add_option("--row-len", row_len, "reported prefix length");
    cmd_continuous->add_option("--out", continuous_out, "report stem (.txt/.tsv)");

    // --- catalog ---
    auto* cmd_catalog = app.add_subcommand("catalog", "list registered objects");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (slack_opt->count() > 0)
        slack_override = slack_value;

    if (cmd_enum->parsed()) {
        Budget budget{max_len, max_steps, aux_from_spec(aux_spec, aux_source)};
        EnumerationTable table = enumerate(budget);
        write_cache(table, resolve_cache_path(out_path));
        std::cout << "version " << table.version_id() << '\n'
                  << "budget " << budget.display() << '\n'
                  << "records " << table.records().size() << '\n'
                  << "kraft " << rat_str(table.kraft_sum()) << '\n';
        return kExitOk;
    }

    if (cmd_complexity->parsed()) {
        EnumerationTable table = load_cache(cache_path, "enumeration");
        BitString x = BitString::parse(x_text);
        auto k = K_approx(x, table);
        Rat m = m_approx(x, table);
        std::cout << "x " << x.display() << '\n'
                  << "K " << (k ? std::to_string(*k) : "Infinite") << '\n'
                  << "m " << rat_str(m) << '\n';
        if (sgn(m) > 0)
            std::cout << "neglog_m " << ceil_neg_log2(m) << '\n';
        if (!measure_label.empty()) {
            DiscreteSemiMeasure p = measure_by_label(measure_label);
            std::cout << "deficiency " << deficiency(p, x, table) << '\n';
        }
        return k ? kExitOk : kExitNoProgram;
    }

    if (cmd_conserve->parsed()) {
        EnumerationTable plain = load_cache(cache_path, "plain");
        EnumerationTable oracle = load_cache(oracle_cache_path, "with-oracle");
        std::vector<std::pair<std::string, std::string>> config = {
            {"cache", cache_path},
            {"oracle_cache", oracle_cache_path},
        };
        ConservationReport report;
        if (which == "prop1") {
            config.emplace_back("domain_len", std::to_string(domain_len));
            report = check_prop1(all_strings_upto(domain_len), plain, oracle);
        } else if (which == "thm1") {
            TotalFunction B = total_function_by_label(function_label);
            DiscreteSemiMeasure p = measure_by_label(p_label);
            std::vector<BitString> X;
            for (const auto& [s, mass] : p.entries())
                X.push_back(s);
            report = check_thm1(B, p, X, plain, oracle, slack_override);
        } else if (which == "thm2") {
            report = thm2_report(
                thm2_pipeline(b_param, c_param, plain, oracle, slack_override));
        } else if (which == "thm3") {
            TotalFunction B = total_function_by_label(function_label);
            auto grid = pair_grid(pairs_len);
            report = check_thm3(B, finite_rows(B, grid, plain, oracle), grid,
                                plain, oracle);
            config.emplace_back("pairs_len", std::to_string(pairs_len));
        } else {
            TotalFunction f = total_function_by_label(function_label);
            config.emplace_back("domain_len", std::to_string(domain_len));
            report = check_thm4(f, all_strings_upto(domain_len), plain, oracle);
        }
        echo_config(report, config);
        return emit(report, conserve_out);
    }

    if (cmd_continuous->parsed()) {
        TreeSemiMeasure M = mixture_M(tree_measure_catalog(depth));
        std::vector<std::pair<std::string, std::string>> config = {
            {"depth", std::to_string(depth)},
        };
        ConservationReport report;
        if (cwhich == "ratio") {
            TreeSemiMeasure P = tree_measure_by_label(tree_label, depth);
            report.experiment = "ratio";
            config.emplace_back("P", P.label());
            config.emplace_back("m_max", std::to_string(m_max));
            report.columns = {"m", "exceed_mass", "antichain", "pass"};
            bool all = true;
            for (int m = 1; m <= m_max; ++m) {
                RatioCheck check = ratio_test_check(P, M, depth, m);
                all = all && check.pass;
                report.add_row({std::to_string(m), rat_str(check.exceed_mass),
                                std::to_string(check.antichain.size()),
                                check.pass ? "yes" : "no"});
            }
            report.add_assertion("exceed_mass_below_threshold", all,
                                 "P{M/P > 2^m} < 2^-m for every m");
        } else if (cwhich == "thm5") {
            MonotoneMap map = monotone_map_by_label(map_label);
            config.emplace_back("map", map.label);
            config.emplace_back("row_len", std::to_string(row_len));
            Thm5Result r = check_thm5(map, default_test_catalog(depth), M,
                                      all_strings(std::min(row_len, depth)));
            report.experiment = "thm5";
            report.add_assertion("catalog_and_pullbacks_validate", r.hard_pass,
                                 "2^-k scaled pullbacks, k = " +
                                     std::to_string(r.domination_log2));
            report.add_summary("domination_log2",
                               std::to_string(r.domination_log2));
            report.add_summary("max_domination_ratio",
                               rat_str(r.max_domination_ratio));
            report.columns = {"x", "inf_at_x", "inf_at_image", "ratio",
                              "ratio_log2_floor"};
            for (const Thm5Row& row : r.rows)
                report.add_row({row.x.display(), rat_str(row.sum_at_x),
                                rat_str(row.sum_at_image), rat_str(row.ratio),
                                std::to_string(row.ratio_log2_floor)});
        } else {
            MonotoneMap map = monotone_map_by_label(map_label);
            TreeSemiMeasure P = tree_measure_by_label(tree_label, depth);
            config.emplace_back("map", map.label);
            config.emplace_back("P", P.label());
            config.emplace_back("row_len", std::to_string(row_len));
            Thm6Result r = check_thm6(map, P, M, default_test_catalog(depth),
                                      std::min(row_len, depth));
            report.experiment = "thm6";
            report.add_assertion("conserved_test_validates",
                                 r.validation.pass,
                                 "thresholds 0.." +
                                     std::to_string(r.validation.max_m));
            report.add_assertion("covering_inequality", r.covering_pass,
                                 "M(S) <= 2^-m sum M(x) t(x), every m");
            report.add_summary("test_is_one", r.test_is_one ? "yes" : "no");
            report.columns = {"x", "D_P_log2", "D_image_log2", "diff_log2",
                              "inf_log2"};
            for (const Thm6Row& row : r.rows)
                report.add_row({row.x.display(), std::to_string(row.d_p.log2_floor),
                                std::to_string(row.d_image.log2_floor),
                                std::to_string(row.diff_log2_floor),
                                std::to_string(row.inf.log2_floor)});
        }
        echo_config(report, config);
        return emit(report, continuous_out);
    }

    if (cmd_catalog->parsed()) {
        std::cout << catalog_manifest();
        std::cout << "machine " << MachineSpec::version_id() << '\n';
        return kExitOk;
    }

    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case Error::Kind::NoProgram:
            return kExitNoProgram;
        case Error::Kind::Io:
        case Error::Kind::BadCache:
            return kExitIo;
        case Error::Kind::MissingCache:
            return kExitMissingCache;
        default:
            return kExitUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
