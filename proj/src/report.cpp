#include "ait/report.hpp"

#include "ait/errors.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ait {

void ConservationReport::add_header(std::string key, std::string value) {
    header.emplace_back(std::move(key), std::move(value));
}

void ConservationReport::add_assertion(std::string name, bool pass,
                                       std::string detail) {
    assertions.push_back(Assertion{std::move(name), pass, std::move(detail)});
}

void ConservationReport::add_summary(std::string key, std::string value) {
    summary.emplace_back(std::move(key), std::move(value));
}

void ConservationReport::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("report row width differs from the column set");
    rows.push_back(std::move(row));
}

bool ConservationReport::all_pass() const {
    return std::all_of(assertions.begin(), assertions.end(),
                       [](const Assertion& a) { return a.pass; });
}

const std::string& ConservationReport::summary_value(const std::string& key) const {
    for (const auto& [k, v] : summary)
        if (k == key)
            return v;
    throw std::out_of_range("no summary entry named " + key);
}

void ConservationReport::write_text(std::ostream& os) const {
    os << "== " << experiment << " ==\n";
    for (const auto& [k, v] : header)
        os << k << ": " << v << '\n';
    for (const Assertion& a : assertions) {
        os << "assert " << a.name << ": " << (a.pass ? "PASS" : "FAIL");
        if (!a.detail.empty())
            os << " (" << a.detail << ")";
        os << '\n';
    }
    for (const auto& [k, v] : summary)
        os << k << " = " << v << '\n';
    if (columns.empty())
        return;
    os << "rows: " << rows.size() << '\n';
    if (rows.size() > kInlineRows) {
        os << "(table omitted, see the tsv surface)\n";
        return;
    }
    std::vector<std::size_t> width(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        width[c] = columns[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].size());
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            os << cells[c];
            if (c + 1 < cells.size())
                os << std::string(width[c] - cells[c].size() + 2, ' ');
        }
        os << '\n';
    };
    emit(columns);
    for (const auto& row : rows)
        emit(row);
}

void ConservationReport::write_tsv(std::ostream& os) const {
    os << "# experiment\t" << experiment << '\n';
    for (const auto& [k, v] : header)
        os << "# " << k << '\t' << v << '\n';
    for (const Assertion& a : assertions)
        os << "# assert\t" << a.name << '\t' << (a.pass ? "PASS" : "FAIL") << '\t'
           << a.detail << '\n';
    for (const auto& [k, v] : summary)
        os << "# " << k << '\t' << v << '\n';
    if (columns.empty())
        return;
    for (std::size_t c = 0; c < columns.size(); ++c)
        os << columns[c] << (c + 1 < columns.size() ? '\t' : '\n');
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            os << row[c] << (c + 1 < row.size() ? '\t' : '\n');
}

void ConservationReport::save(const std::string& stem) const {
    std::ofstream text(stem + ".txt", std::ios::binary);
    if (!text)
        throw Error(Error::Kind::Io, "cannot open " + stem + ".txt for writing");
    write_text(text);
    if (!text.flush())
        throw Error(Error::Kind::Io, "write failed on " + stem + ".txt");
    std::ofstream tsv(stem + ".tsv", std::ios::binary);
    if (!tsv)
        throw Error(Error::Kind::Io, "cannot open " + stem + ".tsv for writing");
    write_tsv(tsv);
    if (!tsv.flush())
        throw Error(Error::Kind::Io, "write failed on " + stem + ".tsv");
}

} // namespace ait
