#include "ait/conservation.hpp"

#include "ait/errors.hpp"

#include <algorithm>
#include <string>

namespace ait {

namespace {

long require_K(const BitString& x, const EnumerationTable& table,
               const char* which) {
    std::optional<long> k = K_approx(x, table);
    if (!k)
        throw Error(Error::Kind::NoProgram, std::string(which) + " table has no program for " +
                                                x.display());
    return *k;
}

long require_info(const BitString& x, const EnumerationTable& plain,
                  const EnumerationTable& with_oracle) {
    std::optional<long> i = info_with_oracle(x, plain, with_oracle);
    if (!i)
        throw Error(Error::Kind::NoProgram,
                    "information term undefined, no program for " + x.display());
    return *i;
}

long require_mutual(const BitString& x, const BitString& y,
                    const EnumerationTable& table) {
    std::optional<long> i = mutual_info(x, y, table);
    if (!i)
        throw Error(Error::Kind::NoProgram,
                    "mutual information undefined on (" + x.display() + ", " +
                        y.display() + ")");
    return *i;
}

void fill_header(ConservationReport& report, const EnumerationTable& plain,
                 const EnumerationTable& with_oracle) {
    report.add_header("version_id", plain.version_id());
    report.add_header("budget", plain.budget().display());
    report.add_header("budget_oracle", with_oracle.budget().display());
}

std::string num(long v) { return std::to_string(v); }

struct Extrema {
    long lo = 0;
    long hi = 0;
    bool seen = false;
    void feed(long v) {
        lo = seen ? std::min(lo, v) : v;
        hi = seen ? std::max(hi, v) : v;
        seen = true;
    }
    void summarize(ConservationReport& report, const std::string& name) const {
        report.add_summary(name + "_min", seen ? num(lo) : "none");
        report.add_summary(name + "_max", seen ? num(hi) : "none");
    }
};

} // namespace

ConservationReport check_prop1(const std::vector<BitString>& X,
                               const EnumerationTable& plain,
                               const EnumerationTable& with_oracle) {
    ConservationReport report;
    report.experiment = "prop1";
    fill_header(report, plain, with_oracle);
    report.add_header("domain_size", num(static_cast<long>(X.size())));
    report.columns = {"x", "K", "K_H", "neglog_m", "I", "d_m", "gap"};

    bool identity_ok = true;
    bool coding_ok = true;
    Extrema gaps;
    for (const BitString& x : X) {
        long k = require_K(x, plain, "plain");
        long k_h = require_K(x, with_oracle, "oracle");
        long neglog_m = ceil_neg_log2(m_approx(x, plain));
        long info = k - k_h;
        long d_m = neglog_m - k_h;
        long gap = d_m - info;
        identity_ok = identity_ok && (gap == neglog_m - k);
        coding_ok = coding_ok && (gap <= 0);
        gaps.feed(gap);
        report.add_row({x.display(), num(k), num(k_h), num(neglog_m), num(info),
                        num(d_m), num(gap)});
    }
    report.add_assertion("gap_identity", identity_ok,
                         "d_m - I vs neglog_m - K on every row");
    report.add_assertion("coding_lemma_gap", coding_ok, "gap <= 0 on every row");
    gaps.summarize(report, "gap");
    return report;
}

ConservationReport check_thm1(const TotalFunction& B, const DiscreteSemiMeasure& p,
                              const std::vector<BitString>& X,
                              const EnumerationTable& plain,
                              const EnumerationTable& with_oracle,
                              std::optional<long> slack_override) {
    ConservationReport report;
    report.experiment = "thm1";
    fill_header(report, plain, with_oracle);
    report.add_header("B", B.label);
    report.add_header("p", p.label());
    report.add_header("domain_size", num(static_cast<long>(X.size())));
    long slack = slack_override.value_or(
        static_cast<long>(B.description_cost + p.description_cost()) + 8);
    report.add_header("slack", num(slack));
    report.columns = {"x", "Bx", "d_p", "d_Bp", "I", "diff", "gap", "flag"};

    Thm1Test attached = thm1_test(p, B, plain);

    std::vector<BitString> domain;
    domain.reserve(p.entries().size());
    for (const auto& [x, mass] : p.entries())
        domain.push_back(x);
    TestCheck sum_check =
        verify_test(measure_from_table(plain), attached.test, domain);
    report.add_assertion("test_sum_le_1", sum_check.pass, rat_str(sum_check.sum));

    Rat conserved = attached.image.measure.total_mass() + attached.image.lost_mass;
    bool mass_ok = conserved == p.total_mass();
    report.add_assertion("image_mass_conservation", mass_ok,
                         rat_str(conserved) + " vs " + rat_str(p.total_mass()));

    Extrema diffs, gaps;
    long over_slack = 0;
    for (const BitString& x : X) {
        BitString bx = B.eval(x);
        long d_p = deficiency(p, x, plain);
        long d_bp = bx.empty() ? 0 : deficiency(attached.image.measure, bx, plain);
        long info = require_info(x, plain, with_oracle);
        long diff = d_bp - d_p;
        long gap = diff - info;
        diffs.feed(diff);
        gaps.feed(gap);
        std::string flag = bx.empty() ? "bottom" : "-";
        if (gap > slack) {
            ++over_slack;
            flag = flag == "-" ? "over_slack" : flag + ",over_slack";
        }
        report.add_row({x.display(), bx.display(), num(d_p), num(d_bp), num(info),
                        num(diff), num(gap), flag});
    }
    diffs.summarize(report, "diff");
    gaps.summarize(report, "gap");
    report.add_summary("rows_over_slack", num(over_slack));
    report.add_summary("zero_denominator_entries",
                       num(static_cast<long>(attached.zero_denominator.size())));
    return report;
}

ConservationReport check_thm1(const StagedFunction& B, int stage,
                              const DiscreteSemiMeasure& p,
                              const std::vector<BitString>& X,
                              const EnumerationTable& plain,
                              const EnumerationTable& with_oracle,
                              std::optional<long> slack_override) {
    return check_thm1(at_stage(B, stage), p, X, plain, with_oracle, slack_override);
}

ConservationReport check_thm3(const TotalFunction& B,
                              const std::vector<std::pair<BitString, BitString>>& pairs,
                              const std::vector<std::pair<BitString, BitString>>& test_domain,
                              const EnumerationTable& plain,
                              const EnumerationTable& with_oracle) {
    ConservationReport report;
    report.experiment = "thm3";
    fill_header(report, plain, with_oracle);
    report.add_header("B", B.label);
    report.add_header("row_pairs", num(static_cast<long>(pairs.size())));
    report.add_header("test_pairs", num(static_cast<long>(test_domain.size())));
    report.columns = {"x", "y", "Bx", "I_Bx_y", "I_x_y", "I_pair_H", "diff", "gap"};

    Thm3Test attached = thm3_test(B, test_domain, plain);
    Rat weighted(0);
    for (const auto& xy : test_domain)
        weighted += m_approx(pair_encode(xy.first, xy.second), plain) *
                    attached.values.at(xy);
    report.add_assertion("calibrated_sum_eq_1", weighted == 1, rat_str(weighted));
    report.add_summary("calibration", rat_str(attached.calibration));
    report.add_summary("zero_denominator_entries",
                       num(static_cast<long>(attached.zero_denominator.size())));

    Extrema diffs, gaps;
    for (const auto& [x, y] : pairs) {
        BitString bx = B.eval(x);
        long i_bxy = require_mutual(bx, y, plain);
        long i_xy = require_mutual(x, y, plain);
        long i_pair = require_info(pair_encode(x, y), plain, with_oracle);
        long diff = i_bxy - i_xy;
        long gap = diff - i_pair;
        diffs.feed(diff);
        gaps.feed(gap);
        report.add_row({x.display(), y.display(), bx.display(), num(i_bxy),
                        num(i_xy), num(i_pair), num(diff), num(gap)});
    }
    diffs.summarize(report, "diff");
    gaps.summarize(report, "gap");
    return report;
}

ConservationReport check_thm4(const TotalFunction& f, const std::vector<BitString>& X,
                              const EnumerationTable& plain,
                              const EnumerationTable& with_oracle) {
    ConservationReport report;
    report.experiment = "thm4";
    fill_header(report, plain, with_oracle);
    report.add_header("f", f.label);
    report.add_header("domain_size", num(static_cast<long>(X.size())));
    report.columns = {"x", "fx", "I_fx_H", "I_x_H", "gap"};

    Thm4Semimeasure attached = thm4_semimeasure(f, plain, with_oracle, X);
    Rat total = attached.measure.total_mass();
    report.add_assertion("calibrated_sum_eq_1", total == 1, rat_str(total));
    report.add_summary("calibration", rat_str(attached.calibration));
    report.add_summary("zero_denominator_entries",
                       num(static_cast<long>(attached.zero_denominator.size())));

    Extrema gaps;
    for (const BitString& x : X) {
        BitString fx = f.eval(x);
        long i_fx = require_info(fx, plain, with_oracle);
        long i_x = require_info(x, plain, with_oracle);
        long gap = i_fx - i_x;
        gaps.feed(gap);
        report.add_row({x.display(), fx.display(), num(i_fx), num(i_x), num(gap)});
    }
    gaps.summarize(report, "gap");
    return report;
}

namespace {

std::string opt_num(const std::optional<long>& v) {
    return v ? num(*v) : "undef";
}

} // namespace

ConservationReport thm2_report(const Thm2Result& r) {
    ConservationReport report;
    report.experiment = "thm2";
    report.add_header("b", num(r.b));
    report.add_header("c", num(r.c));
    report.add_header("omega_bits", r.omega_bits.display());
    report.add_header("omega_converged", r.omega_converged ? "yes" : "no");
    report.add_header("x", r.x.display());
    report.add_header("B_stable", r.stable_B ? "yes" : "no");

    report.add_assertion("image_mass_conservation", r.mass_conserved,
                         "lost " + rat_str(r.lost_mass) + ", expected " +
                             rat_str(r.expected_lost_mass));
    report.add_assertion("difference_identity", r.identity_holds,
                         "deficiency route vs complexity route");

    report.add_summary("K_x", opt_num(r.k_x));
    report.add_summary("K_head", opt_num(r.k_head));
    report.add_summary("d_p", opt_num(r.d_p));
    report.add_summary("d_Bp", opt_num(r.d_Bp));
    report.add_summary("I_x_H", opt_num(r.info_oracle));
    report.add_summary("measured_diff", opt_num(r.measured_diff));
    report.add_summary("predicted_diff", num(r.predicted_diff));
    report.add_summary("slack", num(r.slack));
    report.add_summary("within_slack", r.within_slack ? "yes" : "no");
    report.add_summary("lost_mass", rat_str(r.lost_mass));
    return report;
}

} // namespace ait
