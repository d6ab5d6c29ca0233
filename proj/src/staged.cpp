#include "ait/staged.hpp"

#include "ait/errors.hpp"

#include <utility>

namespace ait {

StagedValue eval_staged(const StagedFunction& B, const BitString& x, int max_stage,
                        int window) {
    if (window < 1 || max_stage < window)
        throw Error(Error::Kind::BadLength,
                    "eval_staged needs max_stage >= window >= 1");
    StagedValue result;
    result.value = B.eval(x, max_stage);
    result.stable = true;
    for (int s = max_stage - window + 1; s < max_stage; ++s)
        if (B.eval(x, s) != result.value) {
            result.stable = false;
            break;
        }
    return result;
}

TotalFunction at_stage(const StagedFunction& B, int stage) {
    return TotalFunction{
        [eval = B.eval, stage](const BitString& x) { return eval(x, stage); },
        B.label + "@" + std::to_string(stage), B.description_cost};
}

StagedFunction staged_constant(const TotalFunction& f) {
    return StagedFunction{
        [eval = f.eval](const BitString& x, int) { return eval(x); },
        f.label, f.description_cost};
}

StagedFunction thm2_B(int b, int c, std::function<BitString(int)> omega_bits_by_stage) {
    if (b < 1 || c < 1)
        throw Error(Error::Kind::BadLength, "thm2_B needs b >= 1 and c >= 1");
    auto eval = [b, c, source = std::move(omega_bits_by_stage)](const BitString& x,
                                                                int stage) {
        BitString w = source(stage);
        if (static_cast<int>(w.size()) != c)
            throw Error(Error::Kind::BadLength,
                        "stage " + std::to_string(stage) + " delivered " +
                            std::to_string(w.size()) + " omega bits, want " +
                            std::to_string(c));
        if (static_cast<int>(x.size()) != b + c)
            return BitString();
        BitString tail = x.drop(static_cast<std::size_t>(b));
        if (numeric_less(tail, w))
            return x;
        if (tail == w)
            return x.take(static_cast<std::size_t>(b));
        return BitString();
    };
    return StagedFunction{std::move(eval),
                          "thm2_B[b=" + std::to_string(b) + ",c=" + std::to_string(c) + "]",
                          4};
}

long default_slack(int b, int c) {
    long bc = static_cast<long>(b) * c;
    long log_floor = 0;
    while ((1L << (log_floor + 1)) <= bc)
        ++log_floor;
    long log_ceil = (1L << log_floor) == bc ? log_floor : log_floor + 1;
    return 2 * log_ceil + 8;
}

Thm2Result thm2_pipeline(int b, int c, const EnumerationTable& table_plain,
                         const EnumerationTable& table_with_oracle,
                         std::optional<long> slack_override) {
    if (b < 1 || c < 1 || b + c > 20)
        throw Error(Error::Kind::BadLength, "thm2_pipeline needs b, c >= 1, b + c <= 20");

    Thm2Result r;
    r.b = b;
    r.c = c;

    // Stages realize the limit computation: the same enumeration watched
    // at a quarter, half and all of its step budget.
    const long full = table_plain.budget().max_steps;
    const std::vector<long> stage_steps = {full / 4, full / 2, full};
    std::vector<BitString> omega_by_stage;
    for (long steps : stage_steps)
        omega_by_stage.push_back(
            omega_prefix(c, table_plain.filtered_by_steps(steps)).bits);

    OmegaPrefix final_omega = omega_prefix(c, table_plain);
    r.omega_bits = final_omega.bits;
    r.omega_converged = final_omega.converged;
    r.x = BitString::zeros(static_cast<std::size_t>(b)) + r.omega_bits;

    StagedFunction B = thm2_B(b, c, [omega_by_stage](int stage) {
        return omega_by_stage.at(static_cast<std::size_t>(stage - 1));
    });
    const int stages = static_cast<int>(stage_steps.size());
    r.stable_B = eval_staged(B, r.x, stages, 2).stable;
    TotalFunction B_final = at_stage(B, stages);

    DiscreteSemiMeasure p = uniform_n(b + c);
    ImageResult image = image_measure(B_final, p);
    r.lost_mass = image.lost_mass;

    // Exactly the tails numerically above the omega prefix lose their
    // mass; each head contributes one string per such tail.
    unsigned long above =
        (1ul << c) - 1ul - static_cast<unsigned long>(r.omega_bits.to_uint());
    r.expected_lost_mass = Rat(static_cast<long>(above)) * pow2(-c);
    r.mass_conserved =
        image.measure.total_mass() + r.lost_mass == p.total_mass();

    r.k_x = K_approx(r.x, table_plain);
    BitString head = r.x.take(static_cast<std::size_t>(b));
    r.k_head = K_approx(head, table_plain);

    try {
        r.d_p = deficiency(p, r.x, table_plain);
    } catch (const Error&) {
        r.d_p = std::nullopt;
    }
    BitString bx = B_final.eval(r.x);  // the head, by construction
    try {
        r.d_Bp = deficiency(image.measure, bx, table_plain);
    } catch (const Error&) {
        r.d_Bp = std::nullopt;
    }
    r.info_oracle = info_with_oracle(r.x, table_plain, table_with_oracle);

    if (r.d_p && r.d_Bp)
        r.measured_diff = *r.d_Bp - *r.d_p;
    r.predicted_diff = c;
    r.slack = slack_override.value_or(default_slack(b, c));
    r.within_slack = r.measured_diff &&
                     *r.measured_diff >= r.predicted_diff - r.slack &&
                     *r.measured_diff <= r.predicted_diff + r.slack;

    // The two routes to the measured difference must agree exactly:
    // (ceil(-log Bp(head)) - K(head)) - ((b+c) - K(x))
    //  == (K(x) - K(head)) + (ceil(-log Bp(head)) - (b+c)).
    if (r.measured_diff && r.k_x && r.k_head) {
        long bp_log = ceil_neg_log2(image.measure.at(bx));
        long lhs = *r.measured_diff;
        long rhs = (*r.k_x - *r.k_head) + (bp_log - (b + c));
        r.identity_holds = lhs == rhs;
    }
    return r;
}

} // namespace ait
