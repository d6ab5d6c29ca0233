#include "ait/machine.hpp"

#include <cstdint>
#include <vector>

namespace ait {

namespace detail {
const char* machine_spec_text();  // generated from docs/machine.txt
}

const std::string& MachineSpec::semantics() {
    static const std::string text = detail::machine_spec_text();
    return text;
}

const std::string& MachineSpec::version_id() {
    static const std::string id = [] {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64 offset basis
        for (unsigned char c : semantics()) {
            h ^= c;
            h *= 1099511628211ull;  // FNV-1a 64 prime
        }
        static const char* hex = "0123456789abcdef";
        std::string out;
        for (int i = 15; i >= 8; --i)
            out.push_back(hex[(h >> (4 * i)) & 0xf]);
        return out;
    }();
    return id;
}

const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::Halted:          return "halted";
    case Outcome::BudgetExhausted: return "budget-exhausted";
    case Outcome::RanOffProgram:   return "ran-off-program";
    }
    return "unknown";
}

namespace {

constexpr int OP_NOOP = 0;
constexpr int OP_READ_PROGRAM = 1;
constexpr int OP_READ_AUX = 2;
constexpr int OP_OUTPUT_0 = 3;
constexpr int OP_OUTPUT_1 = 4;
constexpr int OP_SKIP = 5;
constexpr int OP_LOOP = 6;
constexpr int OP_HALT = 7;

enum class StopReason { Halted, Budget, RanOff, Suspended, Cycle };

struct Engine {
    const std::string& prog;
    const std::string& aux;
    long budget;
    bool monotone;
    bool detect_cycles;

    std::size_t pc = 0;
    std::size_t frontier = 0;
    int B = 0;
    int F = 0;
    std::size_t A = 0;
    std::string out;
    long steps = 0;
    StopReason stop = StopReason::RanOff;

    // Cycle stamps: one slot per (pc, B, F, clamped A). A never moves
    // backward and behaves identically once past the aux end, so the
    // clamp keeps the configuration space finite and the proof sound.
    std::vector<std::uint8_t> seen;

    Engine(const std::string& p, const std::string& a, long b, bool mono, bool detect)
        : prog(p), aux(a), budget(b), monotone(mono), detect_cycles(detect) {
        if (detect_cycles)
            seen.assign((prog.size() + 1) * 4 * (aux.size() + 2), 0);
    }

    // Ensure bits [0, target) are consumed; false means the program ended first.
    bool fetch_to(std::size_t target) {
        if (target > prog.size()) {
            frontier = prog.size();
            return false;
        }
        if (target > frontier)
            frontier = target;
        return true;
    }

    int bits_value(std::size_t at, int width) const {
        int v = 0;
        for (int i = 0; i < width; ++i)
            v = (v << 1) | (prog[at + static_cast<std::size_t>(i)] == '1' ? 1 : 0);
        return v;
    }

    bool mark_configuration() {
        std::size_t a_clamped = A <= aux.size() ? A : aux.size() + 1;
        std::size_t idx = ((pc * 2 + static_cast<std::size_t>(B)) * 2 +
                           static_cast<std::size_t>(F)) *
                              (aux.size() + 2) +
                          a_clamped;
        if (seen[idx])
            return true;
        seen[idx] = 1;
        return false;
    }

    void execute() {
        for (;;) {
            if (detect_cycles && mark_configuration()) {
                stop = StopReason::Cycle;
                return;
            }
            if (!fetch_to(pc + 3)) {
                stop = StopReason::RanOff;
                return;
            }
            int op = bits_value(pc, 3);
            pc += 3;
            if (op == OP_HALT) {
                stop = StopReason::Halted;
                return;
            }
            if (steps == budget) {
                stop = StopReason::Budget;
                return;
            }
            ++steps;
            switch (op) {
            case OP_NOOP:
                break;
            case OP_READ_PROGRAM: {
                if (!fetch_to(pc + 1)) { stop = StopReason::RanOff; return; }
                int mode = bits_value(pc, 1);
                pc += 1;
                if (mode == 0) {
                    if (!fetch_to(pc + 1)) { stop = StopReason::RanOff; return; }
                    B = bits_value(pc, 1);
                    pc += 1;
                } else {
                    if (!fetch_to(pc + 3)) { stop = StopReason::RanOff; return; }
                    int n = bits_value(pc, 3);
                    pc += 3;
                    for (int i = 0; i <= n; ++i) {
                        if (!fetch_to(pc + 1)) { stop = StopReason::RanOff; return; }
                        B = bits_value(pc, 1);
                        pc += 1;
                        out.push_back(B ? '1' : '0');
                    }
                }
                break;
            }
            case OP_READ_AUX:
                if (A < aux.size()) {
                    B = aux[A] == '1' ? 1 : 0;
                    F = 0;
                    ++A;
                } else if (monotone) {
                    // Reading past the supplied input suspends the run. The
                    // step charge is rolled back and the cursor stays put, so
                    // a longer input resumes from this exact configuration.
                    --steps;
                    stop = StopReason::Suspended;
                    return;
                } else {
                    B = 0;
                    F = 1;
                    ++A;
                }
                break;
            case OP_OUTPUT_0:
                out.push_back('0');
                break;
            case OP_OUTPUT_1:
                out.push_back('1');
                break;
            case OP_SKIP: {
                if (!fetch_to(pc + 3)) { stop = StopReason::RanOff; return; }
                int operand = bits_value(pc, 3);
                pc += 3;
                int source = (operand & 4) ? F : B;
                bool fire = ((operand & 2) ? !source : source) != 0;
                if (fire) {
                    std::size_t dist = (operand & 1) ? 9 : 3;
                    if (!fetch_to(pc + dist)) { stop = StopReason::RanOff; return; }
                    pc += dist;
                }
                break;
            }
            case OP_LOOP: {
                if (!fetch_to(pc + 3)) { stop = StopReason::RanOff; return; }
                int n = bits_value(pc, 3);
                pc += 3;
                std::size_t back = 6 * (static_cast<std::size_t>(n) + 1);
                pc = pc >= back ? pc - back : 0;
                break;
            }
            default:
                break;
            }
        }
    }
};

} // namespace

RunResult run(const BitString& program, const BitString& aux, long budget,
              const RunOptions& options) {
    Engine e(program.str(), aux.str(), budget, false, options.detect_cycles);
    e.execute();
    RunResult r;
    r.output = BitString::parse(e.out);
    r.steps = e.steps;
    switch (e.stop) {
    case StopReason::Halted:
        r.outcome = Outcome::Halted;
        r.bits_consumed = e.frontier;
        break;
    case StopReason::Budget:
        r.outcome = Outcome::BudgetExhausted;
        r.bits_consumed = e.frontier;
        break;
    case StopReason::Cycle:
        r.outcome = Outcome::BudgetExhausted;
        r.bits_consumed = e.frontier;
        r.certified_nonhalting = true;
        break;
    case StopReason::RanOff:
        r.outcome = Outcome::RanOffProgram;
        r.bits_consumed = program.size();
        break;
    case StopReason::Suspended:
        r.outcome = Outcome::BudgetExhausted;  // unreachable outside monotone mode
        break;
    }
    return r;
}

RunResult run(const BitString& program, long budget) {
    return run(program, BitString(), budget);
}

MonotoneRun run_monotone(const BitString& code, const BitString& input, long budget) {
    Engine e(code.str(), input.str(), budget, true, false);
    e.execute();
    MonotoneRun r;
    r.input_consumed = input.take(e.A);
    r.output = BitString::parse(e.out);
    r.steps = e.steps;
    return r;
}

} // namespace ait
