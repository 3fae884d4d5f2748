#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cslow/isa.hpp"

namespace cslow::micro {

using isa::Address;
using isa::Word;
using MicroAddress = std::uint8_t;

inline constexpr MicroAddress kResetRow = 0;
inline constexpr MicroAddress kFetchRow = 1;
inline constexpr MicroAddress kHaltRow = 52;
inline constexpr std::size_t kRowCount = 53;

enum class Transfer : std::uint8_t {
  PcClear,        // pc <- 0
  MarFromPc,      // MAR <- pc
  IrFromMem,      // IR <- M(MAR)
  PcIncrement,    // pc <- pc + 1
  AComplement,    // A <- ~A
  AIncrement,     // A <- A + 1
  ADecrement,     // A <- A - 1
  AAndBuffer,     // A <- A & Buffer
  BufferFromMem,  // Buffer <- M(MAR)
  MarFromBuffer,  // MAR <- Buffer
  AFromBuffer,    // A <- Buffer
  MemFromA,       // M(MAR) <- A
  AAddBuffer,     // A <- A + Buffer
  ASubBuffer,     // A <- A - Buffer
  PcFromMem,      // pc <- M(MAR)
  Nop,
};

enum class Condition : std::uint8_t { Always, I3, XC0, XC1, XC2, I0Clear, I0Set, Zero, Carry };

struct Control {
  enum class Kind : std::uint8_t { Next, Goto, If };

  Kind kind = Kind::Next;
  Condition condition = Condition::Always;
  MicroAddress target = 0;

  static Control next() { return {}; }
  static Control go(MicroAddress t) { return {Kind::Goto, Condition::Always, t}; }
  static Control when(Condition c, MicroAddress t) { return {Kind::If, c, t}; }

  bool operator==(const Control&) const = default;
};

/// One control-store row: up to two register transfers performed in parallel
/// within one clock, then a next-address decision.
struct MicroInstruction {
  std::string_view label;
  std::vector<Transfer> transfers;
  Control control;
};

using MicroProgram = std::array<MicroInstruction, kRowCount>;

/// The 53-row control store, rows 0 (reset) to 52 (HALT self-loop).
const MicroProgram& microprogram();

std::string_view to_string(Transfer t);

/// Architectural plus sequencer state of one hardware thread.
struct CoreState {
  Address pc = 0;
  Word a = 0;
  Address mar = 0;
  Word ir = 0;
  Word buffer = 0;
  bool z = false;
  bool c = false;
  MicroAddress micro_pc = kResetRow;
  std::uint64_t cycles = 0;

  bool halted() const { return micro_pc == kHaltRow; }
  bool operator==(const CoreState&) const = default;
};

using MemoryView = std::span<Word, isa::kMemoryWords>;

/// Executes the current row for one clock. All transfer sources are sampled
/// from the pre-step state, conditions included. Memory accesses go through
/// `mem` at address MAR.
void step(CoreState& state, MemoryView mem);

struct TraceRecord {
  std::uint64_t cycle;  // 1-based count after this step
  MicroAddress row;     // row executed during this cycle
  CoreState after;
};

std::string format_trace_line(const TraceRecord& rec);
std::string format_trace(std::span<const TraceRecord> trace);

class CycleLimitExceeded : public std::runtime_error {
 public:
  CycleLimitExceeded(std::uint64_t limit, const std::string& detail)
      : std::runtime_error("cycle limit " + std::to_string(limit) + " exceeded: " + detail),
        limit_(limit) {}
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
};

struct RunResult {
  CoreState state;
  isa::MemoryImage memory;
  std::vector<TraceRecord> trace;  // empty unless requested
};

/// Baseline single-thread executor: steps from reset until the step that
/// enters the HALT row. Throws CycleLimitExceeded if that takes more than
/// `max_cycles` steps.
RunResult run(const isa::MemoryImage& image, std::uint64_t max_cycles, bool record_trace = false);

/// Clock cycles one instruction occupies, fetch included, derived by walking
/// the control store. `taken` must be given exactly for JOZ and JOC. For HALT
/// this is the count up to and including the step entering the HALT row.
std::uint64_t instruction_cycle_cost(isa::Mnemonic m, std::optional<bool> taken = std::nullopt);

/// One executed instruction recovered from a trace.
struct InstructionSample {
  isa::Mnemonic mnemonic;
  std::optional<bool> taken;
  std::uint64_t cycles;
};

/// Splits a trace (reset row excluded) at fetch boundaries.
std::vector<InstructionSample> instruction_profile(std::span<const TraceRecord> trace);

/// Text block of final registers, the cycle count and changed memory cells.
std::string format_summary(const CoreState& state, const isa::MemoryImage& before,
                           const isa::MemoryImage& after);

}  // namespace cslow::micro
