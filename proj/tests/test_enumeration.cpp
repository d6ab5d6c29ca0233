#include "ait/enumeration.hpp"

#include "ait/errors.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace ait;
using ait::testfix::check_kind;
using ait::testfix::oracle18;
using ait::testfix::table12;
using ait::testfix::table14;
using ait::testfix::table18;

namespace {

// Brute force: every single program of every length, no tree pruning,
// no cycle detection. Slow and obviously correct; the enumerator must
// match it record for record.
std::vector<Record> brute_force(const Budget& budget) {
    std::vector<Record> records;
    for (int len = 0; len <= budget.max_len; ++len)
        for (const BitString& p : all_strings(len)) {
            RunResult r = run(p, budget.aux, budget.max_steps);
            if (r.outcome == Outcome::Halted && r.bits_consumed == p.size())
                records.push_back(Record{p, r.output, r.steps});
        }
    return records;
}

void check_equal(const EnumerationTable& table, const std::vector<Record>& oracle) {
    REQUIRE(table.records().size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        CHECK(table.records()[i].program == oracle[i].program);
        CHECK(table.records()[i].output == oracle[i].output);
        CHECK(table.records()[i].steps == oracle[i].steps);
    }
}

} // namespace

TEST_CASE("enumeration equals the unpruned brute-force sweep") {
    for (Budget budget : {Budget{8, 100, BitString()}, Budget{12, 1000, BitString()},
                          Budget{10, 500, BitString::parse("101")}}) {
        EnumerationTable table = enumerate(budget);
        check_equal(table, brute_force(budget));
    }
}

TEST_CASE("the halting domain is prefix-free") {
    std::set<std::string> programs;
    for (const Record& r : table12().records())
        programs.insert(r.program.str());
    for (const Record& r : table12().records())
        for (std::size_t cut = 0; cut < r.program.size(); ++cut)
            CHECK(programs.count(r.program.take(cut).str()) == 0);
}

TEST_CASE("pinned table values at max_len 12, budget 1000") {
    const EnumerationTable& t = table12();
    CHECK(t.records().size() == 161);
    CHECK(t.kraft_sum() == Rat(139, 512));
    CHECK(t.kraft_sum() <= 1);
    CHECK(omega_approx(t) == Rat(5, 64));
    CHECK(K_approx(BitString(), t) == 3);
    CHECK(m_approx(BitString(), t) == Rat(99, 512));
    CHECK(K_approx(BitString::parse("0"), t) == 6);
    CHECK(m_approx(BitString::parse("0"), t) == Rat(63, 2048));
    CHECK(!K_approx(BitString::parse("000000000"), t));
    CHECK(m_approx(BitString::parse("000000000"), t) == 0);
}

TEST_CASE("pinned table values at max_len 14, budget 10000") {
    const EnumerationTable& t = table14();
    CHECK(t.records().size() == 317);
    CHECK(t.kraft_sum() == Rat(577, 2048));
    CHECK(omega_approx(t) == Rat(175, 2048));
    CHECK(m_approx(BitString(), t) == Rat(201, 1024));
}

TEST_CASE("pinned table values at max_len 18, budget 100000") {
    const EnumerationTable& t = table18();
    CHECK(t.records().size() == 7323);
    CHECK(t.kraft_sum() == Rat(21799, 65536));
    CHECK(omega_approx(t) == Rat(2025, 16384));
    CHECK(m_approx(BitString(), t) == Rat(13699, 65536));
    CHECK(m_approx(BitString::parse("0"), t) == Rat(5167, 131072));
    CHECK(m_approx(BitString::parse("1"), t) == Rat(10321, 262144));
    CHECK(m_approx(BitString::parse("000"), t) == Rat(143, 131072));
    CHECK(K_approx(BitString::parse("100101"), t) == 16);
    CHECK(m_approx(BitString::parse("100101"), t) == Rat(3, 131072));
}

TEST_CASE("the two shortest coding routes decide K on short strings") {
    // Bit-by-bit costs 3n+3; one echo block costs n+10 up to eight bits.
    // At this budget the minimum of the two is exact for every x up to
    // length 8, and nothing of length 9 is reachable at all.
    const EnumerationTable& t = table18();
    for (int n = 0; n <= 9; ++n)
        for (const BitString& x : all_strings(n)) {
            auto k = K_approx(x, t);
            long expected = std::min(3L * n + 3, n + 10L);
            if (expected <= 18) {
                REQUIRE(k);
                CHECK(*k == expected);
            } else {
                CHECK(!k);
            }
        }
}

TEST_CASE("mass dominates the minimal program weight everywhere") {
    for (const EnumerationTable* t : {&table12(), &table14(), &table18()})
        for (const auto& [x, info] : t->outputs()) {
            CHECK(info.mass >= pow2(-info.min_len));
            CHECK(m_approx(x, *t) == info.mass);
        }
}

TEST_CASE("filtering by steps reproduces enumeration at the smaller budget") {
    EnumerationTable filtered = table12().filtered_by_steps(100);
    EnumerationTable direct = enumerate({12, 100, BitString()});
    REQUIRE(filtered.records().size() == direct.records().size());
    for (std::size_t i = 0; i < direct.records().size(); ++i) {
        CHECK(filtered.records()[i].program == direct.records()[i].program);
        CHECK(filtered.records()[i].output == direct.records()[i].output);
        CHECK(filtered.records()[i].steps == direct.records()[i].steps);
    }
    CHECK(filtered.budget().max_steps == 100);
    CHECK(filtered.budget().max_len == 12);
    CHECK(filtered.kraft_sum() == direct.kraft_sum());
}

TEST_CASE("contains_program distinguishes members from extensions") {
    const EnumerationTable& t = table12();
    CHECK(t.contains_program(BitString::parse("111")));
    CHECK(t.contains_program(BitString::parse("011111")));
    CHECK(!t.contains_program(BitString::parse("1111")));
    CHECK(!t.contains_program(BitString::parse("11")));
    CHECK(!t.contains_program(BitString()));
}

TEST_CASE("omega equals the kraft sum minus the silent mass") {
    for (const EnumerationTable* t : {&table12(), &table14(), &table18()})
        CHECK(omega_approx(*t) == t->kraft_sum() - m_approx(BitString(), *t));
}

TEST_CASE("omega digits and their convergence probe") {
    OmegaPrefix p3 = omega_prefix(3, table18());
    CHECK(p3.bits == BitString::parse("000"));
    CHECK(p3.converged);
    // 5/64 = 0.000101 in binary, exactly.
    OmegaPrefix p6 = omega_prefix(6, table12());
    CHECK(p6.bits == BitString::parse("000101"));
    check_kind([] { omega_prefix(0, table12()); }, Error::Kind::BadLength);
}

TEST_CASE("omega is nondecreasing along the budget ladder") {
    Rat prev(0);
    for (const EnumerationTable* t :
         {&table12(), &table14(), &table18()}) {
        Rat omega = omega_approx(*t);
        CHECK(omega >= prev);
        prev = omega;
    }
}

TEST_CASE("the halting oracle prefix marks exactly the member programs") {
    BitString h = halting_oracle(table18(), 64);
    REQUIRE(h.size() == 64);
    for (int i = 0; i < 64; ++i)
        CHECK((h.bit(i) == 1) ==
              table18().contains_program(BitString::at_index(i)));
    // "111" is the 14th string in canonical order and the only member
    // this early in the enumeration.
    CHECK(h.bit(14) == 1);
    for (int i = 0; i < 64; ++i)
        if (i != 14)
            CHECK(h.bit(i) == 0);
}

TEST_CASE("joint and mutual information reduce to pair-code complexity") {
    const EnumerationTable& t = table18();
    BitString zero = BitString::parse("0");
    BitString one = BitString::parse("1");
    CHECK(joint_K(zero, one, t) == K_approx(pair_encode(zero, one), t));
    CHECK(joint_K(zero, one, t) == 16);
    CHECK(mutual_info(zero, one, t) == 6 + 6 - 16);
    CHECK(!mutual_info(BitString::parse("000000000"), one, t));
}

TEST_CASE("oracle information needs matching budgets and is zero here") {
    const EnumerationTable& plain = table18();
    const EnumerationTable& oracle = oracle18();
    CHECK(oracle.records().size() == 7373);
    CHECK(oracle.kraft_sum() == Rat(87261, 262144));
    for (const BitString& x : all_strings_upto(3))
        CHECK(info_with_oracle(x, plain, oracle) == 0);
    check_kind([&] { info_with_oracle(BitString(), plain, table12()); },
               Error::Kind::BadCache);
}

TEST_CASE("cache round trips preserve the table and its bytes") {
    std::ostringstream first, second;
    write_cache_stream(table12(), first);
    write_cache_stream(table12(), second);
    CHECK(first.str() == second.str());

    std::istringstream in(first.str());
    EnumerationTable back = read_cache_stream(in, "roundtrip");
    CHECK(back.version_id() == table12().version_id());
    CHECK(back.budget() == table12().budget());
    REQUIRE(back.records().size() == table12().records().size());
    for (std::size_t i = 0; i < back.records().size(); ++i) {
        CHECK(back.records()[i].program == table12().records()[i].program);
        CHECK(back.records()[i].output == table12().records()[i].output);
        CHECK(back.records()[i].steps == table12().records()[i].steps);
    }
    std::ostringstream rewritten;
    write_cache_stream(back, rewritten);
    CHECK(rewritten.str() == first.str());
}

TEST_CASE("cache reading rejects what it cannot trust") {
    check_kind([] { read_cache("/nonexistent/aitlab.cache"); },
               Error::Kind::MissingCache);
    check_kind(
        [] {
            std::istringstream in("not a cache\n");
            read_cache_stream(in, "garbage");
        },
        Error::Kind::BadCache);
    check_kind(
        [] {
            std::istringstream in("aitlab-cache 1 deadbeef 4 10 eps 0\n");
            read_cache_stream(in, "foreign");
        },
        Error::Kind::BadCache);
    check_kind(
        [] {
            std::istringstream in("aitlab-cache 1 " + MachineSpec::version_id() +
                                  " 4 10 eps 2\n111 eps 0\n");
            read_cache_stream(in, "short");
        },
        Error::Kind::BadCache);
    check_kind(
        [] {
            std::istringstream in("aitlab-cache 1 " + MachineSpec::version_id() +
                                  " 4 10 eps 1\n111 eps 0\ntrailing junk here\n");
            read_cache_stream(in, "long");
        },
        Error::Kind::BadCache);
}

TEST_CASE("enumeration is deterministic") {
    EnumerationTable again = enumerate({12, 1000, BitString()});
    std::ostringstream a, b;
    write_cache_stream(table12(), a);
    write_cache_stream(again, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("the record cap is the documented constant") {
    CHECK(kMaxRecords == std::size_t(1) << 24);
    check_kind([] { enumerate({-1, 10, BitString()}); }, Error::Kind::ResourceLimit);
    check_kind([] { enumerate({4, -1, BitString()}); }, Error::Kind::ResourceLimit);
}
