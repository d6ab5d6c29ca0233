#include "ait/measures.hpp"

#include "ait/errors.hpp"

#include <ostream>
#include <utility>

namespace ait {

namespace {
const Rat kZero(0);
}

DiscreteSemiMeasure::DiscreteSemiMeasure(Entries entries, Rat bottom_mass,
                                         std::string label, int description_cost)
    : entries_(std::move(entries)), bottom_mass_(std::move(bottom_mass)), mass_(0),
      label_(std::move(label)), description_cost_(description_cost) {
    if (sgn(bottom_mass_) < 0)
        throw Error(Error::Kind::ZeroMass, "negative bottom mass in " + label_);
    for (const auto& [x, v] : entries_) {
        if (x.empty())
            throw Error(Error::Kind::ZeroMass,
                        "bottom mass must be passed separately in " + label_);
        if (sgn(v) <= 0)
            throw Error(Error::Kind::ZeroMass,
                        "support values must be positive in " + label_);
        mass_ += v;
    }
    if (mass_ > 1)
        throw Error(Error::Kind::ZeroMass,
                    "semi-measure mass exceeds 1 in " + label_);
}

const Rat& DiscreteSemiMeasure::at(const BitString& x) const {
    if (x.empty())
        return bottom_mass_;
    auto it = entries_.find(x);
    return it == entries_.end() ? kZero : it->second;
}

void DiscreteSemiMeasure::write(std::ostream& os) const {
    for (const auto& [x, v] : entries_)
        os << x.display() << ' ' << v.get_num().get_str() << ' '
           << v.get_den().get_str() << '\n';
    if (sgn(bottom_mass_) > 0)
        os << "eps " << bottom_mass_.get_num().get_str() << ' '
           << bottom_mass_.get_den().get_str() << '\n';
}

DiscreteSemiMeasure uniform_n(int n) {
    if (n < 1)
        throw Error(Error::Kind::BadLength, "uniform_n needs n >= 1");
    if (n > 24)
        throw Error(Error::Kind::ResourceLimit, "uniform_n capped at n = 24");
    DiscreteSemiMeasure::Entries entries;
    Rat w = pow2(-n);
    auto hint = entries.end();
    for (const BitString& x : all_strings(n))
        hint = entries.emplace_hint(hint, x, w);
    return DiscreteSemiMeasure(std::move(entries), 0, "uniform:" + std::to_string(n),
                               2 + n / 4);
}

DiscreteSemiMeasure geometric_measure(int cutoff) {
    if (cutoff < 1 || cutoff > 16)
        throw Error(Error::Kind::BadLength, "geometric cutoff must be in 1..16");
    DiscreteSemiMeasure::Entries entries;
    for (int len = 1; len <= cutoff; ++len) {
        Rat w = pow2(-2 * len);  // 2^-len shared by 2^len strings
        for (const BitString& x : all_strings(len))
            entries.emplace(x, w);
    }
    return DiscreteSemiMeasure(std::move(entries), 0,
                               "geom:" + std::to_string(cutoff), 3);
}

DiscreteSemiMeasure point_measure(const BitString& x) {
    if (x.empty())
        throw Error(Error::Kind::ZeroMass, "point measure needs a nonempty string");
    DiscreteSemiMeasure::Entries entries;
    entries.emplace(x, Rat(1));
    return DiscreteSemiMeasure(std::move(entries), 0, "point:" + x.display(),
                               static_cast<int>(x.size()) + 2);
}

DiscreteSemiMeasure measure_from_table(const EnumerationTable& table) {
    DiscreteSemiMeasure::Entries entries;
    Rat bottom(0);
    for (const auto& [x, info] : table.outputs()) {
        if (x.empty())
            bottom = info.mass;
        else
            entries.emplace(x, info.mass);
    }
    return DiscreteSemiMeasure(std::move(entries), bottom,
                               "m[" + table.budget().display() + "]", 0);
}

DiscreteTest::DiscreteTest(Entries entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {
    for (const auto& [x, v] : entries_) {
        if (x.empty())
            throw Error(Error::Kind::ZeroMass,
                        "tests are defined over nonempty strings: " + label_);
        if (sgn(v) < 0)
            throw Error(Error::Kind::ZeroMass,
                        "test values must be nonnegative: " + label_);
    }
}

const Rat& DiscreteTest::at(const BitString& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? kZero : it->second;
}

void DiscreteTest::write(std::ostream& os) const {
    for (const auto& [x, v] : entries_)
        os << x.display() << ' ' << v.get_num().get_str() << ' '
           << v.get_den().get_str() << '\n';
}

ImageResult image_measure(const TotalFunction& f, const DiscreteSemiMeasure& p) {
    DiscreteSemiMeasure::Entries entries;
    Rat lost(0);
    for (const auto& [x, v] : p.entries()) {
        BitString y = f.eval(x);
        if (y.empty()) {
            lost += v;
            continue;
        }
        auto [it, fresh] = entries.emplace(y, v);
        if (!fresh)
            it->second += v;
    }
    DiscreteSemiMeasure image(std::move(entries), p.bottom_mass(),
                              f.label + "(" + p.label() + ")",
                              f.description_cost + p.description_cost());
    return ImageResult{std::move(image), std::move(lost)};
}

long deficiency(const DiscreteSemiMeasure& p, const BitString& x,
                const EnumerationTable& table) {
    if (x.empty())
        return 0;
    const Rat& px = p.at(x);
    if (sgn(px) == 0)
        throw Error(Error::Kind::ZeroMass,
                    "deficiency undefined at zero mass under " + p.label());
    auto k = K_approx(x, table);
    if (!k)
        throw Error(Error::Kind::NoProgram,
                    "no program for " + x.display() + " within " +
                        table.budget().display());
    return ceil_neg_log2(px) - *k;
}

TestCheck verify_test(const DiscreteSemiMeasure& p, const DiscreteTest& t,
                      const std::vector<BitString>& domain) {
    Rat sum(0);
    for (const BitString& x : domain) {
        if (x.empty())
            continue;
        const Rat& px = p.at(x);
        if (sgn(px) != 0)
            sum += px * t.at(x);
    }
    return TestCheck{sum, sum <= 1};
}

Thm1Test thm1_test(const DiscreteSemiMeasure& p, const TotalFunction& B,
                   const EnumerationTable& table) {
    ImageResult image = image_measure(B, p);
    DiscreteTest::Entries values;
    std::vector<BitString> zero_denominator;
    for (const auto& [x, px] : p.entries()) {
        BitString y = B.eval(x);
        if (y.empty()) {
            values.emplace(x, Rat(0));
            continue;
        }
        Rat mx = m_approx(x, table);
        const Rat& bpy = image.measure.at(y);
        if (sgn(mx) == 0 || sgn(bpy) == 0) {
            // bpy > 0 is automatic (px itself feeds it); mx can vanish.
            zero_denominator.push_back(x);
            values.emplace(x, Rat(0));
            continue;
        }
        values.emplace(x, m_approx(y, table) * px / (mx * bpy));
    }
    DiscreteTest test(std::move(values), "thm1[" + B.label + "," + p.label() + "]");
    return Thm1Test{std::move(test), std::move(image), std::move(zero_denominator)};
}

Thm3Test thm3_test(const TotalFunction& B,
                   const std::vector<std::pair<BitString, BitString>>& domain,
                   const EnumerationTable& table) {
    Thm3Test result;
    result.domain = domain;
    result.uncalibrated_sum = 0;
    std::map<std::pair<BitString, BitString>, Rat, PairCanonicalLess> raw;
    for (const auto& pr : domain) {
        const auto& [x, y] = pr;
        Rat mxy = m_approx(pair_encode(x, y), table);
        BitString bx = B.eval(x);
        Rat mbx = m_approx(bx, table);
        if (sgn(mxy) == 0 || sgn(mbx) == 0) {
            result.zero_denominator.push_back(pr);
            raw.emplace(pr, Rat(0));
            continue;
        }
        Rat u = m_approx(pair_encode(bx, y), table) * m_approx(x, table) / (mxy * mbx);
        result.uncalibrated_sum += mxy * u;
        raw.emplace(pr, std::move(u));
    }
    if (sgn(result.uncalibrated_sum) == 0)
        throw Error(Error::Kind::ZeroDenominator,
                    "thm3 calibration sum vanished over the domain");
    result.calibration = Rat(1) / result.uncalibrated_sum;
    for (auto& [pr, u] : raw)
        result.values.emplace(pr, u * result.calibration);
    return result;
}

Thm4Semimeasure thm4_semimeasure(const TotalFunction& f,
                                 const EnumerationTable& table_plain,
                                 const EnumerationTable& table_with_oracle,
                                 const std::vector<BitString>& domain) {
    Thm4Semimeasure result;
    result.uncalibrated_sum = 0;
    std::map<BitString, Rat, CanonicalLess> raw;
    for (const BitString& x : domain) {
        if (x.empty())
            continue;
        BitString fx = f.eval(x);
        if (fx.empty())
            continue;  // s(x) = 0 by the case split
        Rat mfx = m_approx(fx, table_plain);
        if (sgn(mfx) == 0) {
            result.zero_denominator.push_back(x);
            continue;
        }
        Rat u = m_approx(fx, table_with_oracle) * m_approx(x, table_plain) / mfx;
        if (sgn(u) == 0)
            continue;
        result.uncalibrated_sum += u;
        raw.emplace(x, std::move(u));
    }
    if (sgn(result.uncalibrated_sum) == 0)
        throw Error(Error::Kind::ZeroDenominator,
                    "thm4 calibration sum vanished over the domain");
    result.calibration = Rat(1) / result.uncalibrated_sum;
    DiscreteSemiMeasure::Entries entries;
    for (auto& [x, u] : raw)
        entries.emplace(x, u * result.calibration);
    result.measure = DiscreteSemiMeasure(std::move(entries), 0,
                                         "thm4[" + f.label + "]",
                                         f.description_cost);
    return result;
}

} // namespace ait
