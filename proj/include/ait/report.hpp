#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ait {

// One experiment's record: a key-value header echoing every parameter
// that affects the output, the stage-exact identity results, a summary
// of reported gaps, and a rectangular table of rows. Both surfaces are
// byte-deterministic: exact values only, no timestamps, no addresses,
// no floats.
struct ConservationReport {
    struct Assertion {
        std::string name;
        bool pass = false;
        std::string detail;  // the exact sum or count behind the verdict
    };

    // Rows beyond this count are summarized in the text surface; the
    // TSV surface always carries every row.
    static constexpr std::size_t kInlineRows = 512;

    std::string experiment;
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<Assertion> assertions;
    std::vector<std::pair<std::string, std::string>> summary;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_header(std::string key, std::string value);
    void add_assertion(std::string name, bool pass, std::string detail = "");
    void add_summary(std::string key, std::string value);
    void add_row(std::vector<std::string> row);

    bool all_pass() const;
    // Value of a summary key; throws std::out_of_range when absent.
    const std::string& summary_value(const std::string& key) const;

    // Line-oriented structured text: header, assert verdicts, summary,
    // and the aligned row table when it fits inline.
    void write_text(std::ostream& os) const;
    // Columnar surface: '#'-prefixed header lines, then one tab
    // separated line per row.
    void write_tsv(std::ostream& os) const;

    // Both surfaces next to each other: <stem>.txt and <stem>.tsv.
    void save(const std::string& stem) const;
};

} // namespace ait
