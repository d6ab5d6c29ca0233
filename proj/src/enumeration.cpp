#include "ait/enumeration.hpp"

#include "ait/errors.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <sstream>

namespace ait {

std::string Budget::display() const {
    std::ostringstream os;
    os << "max_len=" << max_len << " max_steps=" << max_steps
       << " aux=" << aux.display();
    return os.str();
}

EnumerationTable::EnumerationTable(std::string version_id, Budget budget,
                                   std::vector<Record> records)
    : version_id_(std::move(version_id)), budget_(budget),
      records_(std::move(records)), kraft_(0) {
    std::sort(records_.begin(), records_.end(), [](const Record& a, const Record& b) {
        return BitString::canonical_less(a.program, b.program);
    });
    for (const Record& r : records_) {
        Rat w = pow2(-static_cast<long>(r.program.size()));
        kraft_ += w;
        // Canonical record order visits shorter programs first, so the
        // first emplace already carries the minimal length.
        auto [it, fresh] = outputs_.try_emplace(
            r.output, OutputInfo{static_cast<int>(r.program.size()), w});
        if (!fresh)
            it->second.mass += w;
    }
}

EnumerationTable EnumerationTable::filtered_by_steps(long max_steps) const {
    std::vector<Record> kept;
    for (const Record& r : records_)
        if (r.steps <= max_steps)
            kept.push_back(r);
    Budget b = budget_;
    b.max_steps = std::min(b.max_steps, max_steps);
    return EnumerationTable(version_id_, b, std::move(kept));
}

bool EnumerationTable::contains_program(const BitString& program) const {
    auto it = std::lower_bound(
        records_.begin(), records_.end(), program,
        [](const Record& r, const BitString& p) {
            return BitString::canonical_less(r.program, p);
        });
    return it != records_.end() && it->program == program;
}

EnumerationTable enumerate(const Budget& budget) {
    if (budget.max_len < 0 || budget.max_steps < 0)
        throw Error(Error::Kind::ResourceLimit, "budget fields must be nonnegative");
    std::vector<Record> records;
    BitString prefix;
    RunOptions opts;
    opts.detect_cycles = true;

    // Depth-first over the program prefix tree. A node is explored only
    // when the run on it consumed every supplied bit, which is exactly
    // when an extension can behave differently. Halting nodes are done;
    // budget-exhausted nodes stay exhausted under every extension since
    // the extra bits were never reached.
    auto explore = [&](auto&& self) -> void {
        RunResult r = run(prefix, budget.aux, budget.max_steps, opts);
        switch (r.outcome) {
        case Outcome::Halted:
            assert(r.bits_consumed == prefix.size());
            if (records.size() >= kMaxRecords)
                throw Error(Error::Kind::ResourceLimit,
                            "enumeration exceeded the record cap");
            records.push_back(Record{prefix, r.output, r.steps});
            return;
        case Outcome::BudgetExhausted:
            return;
        case Outcome::RanOffProgram:
            if (static_cast<int>(prefix.size()) >= budget.max_len)
                return;
            prefix.push_back(0);
            self(self);
            prefix.pop_back();
            prefix.push_back(1);
            self(self);
            prefix.pop_back();
            return;
        }
    };
    explore(explore);
    return EnumerationTable(MachineSpec::version_id(), budget, std::move(records));
}

std::optional<long> K_approx(const BitString& x, const EnumerationTable& table) {
    auto it = table.outputs().find(x);
    if (it == table.outputs().end())
        return std::nullopt;
    return it->second.min_len;
}

Rat m_approx(const BitString& x, const EnumerationTable& table) {
    auto it = table.outputs().find(x);
    return it == table.outputs().end() ? Rat(0) : it->second.mass;
}

Rat omega_approx(const EnumerationTable& table) {
    auto it = table.outputs().find(BitString());
    Rat empty_mass = it == table.outputs().end() ? Rat(0) : it->second.mass;
    return table.kraft_sum() - empty_mass;
}

namespace {

BitString first_binary_digits(const Rat& q, int c) {
    // q in [0, 1); the digits are floor(q * 2^c) over c bits.
    mpz_class scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), q.get_num().get_mpz_t(),
                 static_cast<mp_bitcnt_t>(c));
    mpz_class digits = scaled / q.get_den();
    BitString out;
    for (int i = c - 1; i >= 0; --i)
        out.push_back(mpz_tstbit(digits.get_mpz_t(), static_cast<mp_bitcnt_t>(i)));
    return out;
}

} // namespace

OmegaPrefix omega_prefix(int c, const EnumerationTable& table) {
    if (c < 1)
        throw Error(Error::Kind::BadLength, "omega_prefix needs c >= 1");
    Rat omega = omega_approx(table);
    assert(omega >= 0 && omega < 1);
    OmegaPrefix result;
    result.bits = first_binary_digits(omega, c);
    Rat earlier = omega_approx(table.filtered_by_steps(table.budget().max_steps / 2));
    result.converged = first_binary_digits(earlier, c) == result.bits;
    return result;
}

BitString halting_oracle(const EnumerationTable& table, int prefix_len) {
    BitString out;
    for (int i = 0; i < prefix_len; ++i)
        out.push_back(
            table.contains_program(BitString::at_index(static_cast<std::uint64_t>(i))));
    return out;
}

std::optional<long> joint_K(const BitString& x, const BitString& y,
                            const EnumerationTable& table) {
    return K_approx(pair_encode(x, y), table);
}

std::optional<long> mutual_info(const BitString& x, const BitString& y,
                                const EnumerationTable& table) {
    auto kx = K_approx(x, table);
    auto ky = K_approx(y, table);
    auto kxy = joint_K(x, y, table);
    if (!kx || !ky || !kxy)
        return std::nullopt;
    return *kx + *ky - *kxy;
}

std::optional<long> info_with_oracle(const BitString& x,
                                     const EnumerationTable& table_plain,
                                     const EnumerationTable& table_with_oracle) {
    if (table_plain.version_id() != table_with_oracle.version_id() ||
        table_plain.budget().max_len != table_with_oracle.budget().max_len ||
        table_plain.budget().max_steps != table_with_oracle.budget().max_steps)
        throw Error(Error::Kind::BadCache,
                    "oracle comparison needs tables differing only in aux");
    auto k = K_approx(x, table_plain);
    auto k_oracle = K_approx(x, table_with_oracle);
    if (!k || !k_oracle)
        return std::nullopt;
    return *k - *k_oracle;
}

namespace {
constexpr const char* kCacheMagic = "aitlab-cache";
constexpr const char* kCacheRevision = "1";
}

void write_cache_stream(const EnumerationTable& table, std::ostream& os) {
    os << kCacheMagic << ' ' << kCacheRevision << ' ' << table.version_id() << ' '
       << table.budget().max_len << ' ' << table.budget().max_steps << ' '
       << table.budget().aux.display() << ' ' << table.records().size() << '\n';
    for (const Record& r : table.records())
        os << r.program.display() << ' ' << r.output.display() << ' ' << r.steps << '\n';
}

void write_cache(const EnumerationTable& table, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error(Error::Kind::Io, "cannot open cache for writing: " + path);
    write_cache_stream(table, os);
    os.flush();
    if (!os)
        throw Error(Error::Kind::Io, "failed writing cache: " + path);
}

EnumerationTable read_cache_stream(std::istream& is, const std::string& name) {
    auto bad = [&](const std::string& why) {
        return Error(Error::Kind::BadCache, name + ": " + why);
    };
    std::string line;
    if (!std::getline(is, line))
        throw bad("missing header");
    std::istringstream header(line);
    std::string magic, revision, version, aux_text;
    Budget budget;
    std::size_t count = 0;
    if (!(header >> magic >> revision >> version >> budget.max_len >>
          budget.max_steps >> aux_text >> count))
        throw bad("malformed header");
    if (magic != kCacheMagic || revision != kCacheRevision)
        throw bad("not an aitlab cache of this revision");
    if (version != MachineSpec::version_id())
        throw bad("machine version " + version + " does not match this build " +
                  MachineSpec::version_id());
    budget.aux = BitString::parse(aux_text);
    std::vector<Record> records;
    records.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(is, line))
            throw bad("record count shorter than header claims");
        std::istringstream row(line);
        std::string program, output;
        long steps = 0;
        if (!(row >> program >> output >> steps))
            throw bad("malformed record line: " + line);
        records.push_back(
            Record{BitString::parse(program), BitString::parse(output), steps});
    }
    if (std::getline(is, line) && !line.empty())
        throw bad("trailing content after the declared records");
    return EnumerationTable(version, budget, std::move(records));
}

EnumerationTable read_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw Error(Error::Kind::MissingCache, "cache not found: " + path);
    return read_cache_stream(is, path);
}

} // namespace ait
