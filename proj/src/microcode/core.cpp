#include <cassert>

#include "cslow/microcode.hpp"

namespace cslow::micro {

namespace {

bool evaluate(Condition cond, const CoreState& s) {
  const auto sig = isa::DecodeSignals::from_word(s.ir);
  switch (cond) {
    case Condition::Always: return true;
    case Condition::I3: return sig.i3;
    case Condition::XC0: return sig.xc0();
    case Condition::XC1: return sig.xc1();
    case Condition::XC2: return sig.xc2();
    case Condition::I0Clear: return !sig.i0;
    case Condition::I0Set: return sig.i0;
    case Condition::Zero: return s.z;
    case Condition::Carry: return s.c;
  }
  return false;
}

}  // namespace

void step(CoreState& state, MemoryView mem) {
  const CoreState pre = state;
  const MicroInstruction& row = microprogram()[pre.micro_pc];

  for (Transfer t : row.transfers) {
    switch (t) {
      case Transfer::PcClear: state.pc = 0; break;
      case Transfer::MarFromPc: state.mar = pre.pc; break;
      case Transfer::IrFromMem: state.ir = mem[pre.mar]; break;
      case Transfer::PcIncrement: state.pc = static_cast<Address>(pre.pc + 1); break;
      case Transfer::AComplement: state.a = static_cast<Word>(~pre.a); break;
      case Transfer::AIncrement: {
        const unsigned sum = pre.a + 1u;
        state.a = static_cast<Word>(sum);
        state.z = state.a == 0;
        state.c = sum > 0xff;
        break;
      }
      case Transfer::ADecrement: {
        state.a = static_cast<Word>(pre.a - 1);
        state.z = state.a == 0;
        state.c = pre.a >= 1;  // no borrow
        break;
      }
      case Transfer::AAndBuffer: state.a = pre.a & pre.buffer; break;
      case Transfer::BufferFromMem: state.buffer = mem[pre.mar]; break;
      case Transfer::MarFromBuffer: state.mar = pre.buffer; break;
      case Transfer::AFromBuffer: state.a = pre.buffer; break;
      case Transfer::MemFromA: mem[pre.mar] = pre.a; break;
      case Transfer::AAddBuffer: {
        const unsigned sum = unsigned{pre.a} + pre.buffer;
        state.a = static_cast<Word>(sum);
        state.z = state.a == 0;
        state.c = sum > 0xff;
        break;
      }
      case Transfer::ASubBuffer: {
        state.a = static_cast<Word>(pre.a - pre.buffer);
        state.z = state.a == 0;
        state.c = pre.a >= pre.buffer;  // no borrow
        break;
      }
      case Transfer::PcFromMem: state.pc = mem[pre.mar]; break;
      case Transfer::Nop: break;
    }
  }

  switch (row.control.kind) {
    case Control::Kind::Next:
      state.micro_pc = static_cast<MicroAddress>(pre.micro_pc + 1);
      break;
    case Control::Kind::Goto:
      state.micro_pc = row.control.target;
      break;
    case Control::Kind::If:
      state.micro_pc = evaluate(row.control.condition, pre)
                           ? row.control.target
                           : static_cast<MicroAddress>(pre.micro_pc + 1);
      break;
  }
  assert(state.micro_pc < kRowCount);
  ++state.cycles;
}

RunResult run(const isa::MemoryImage& image, std::uint64_t max_cycles, bool record_trace) {
  RunResult result;
  result.memory = image;
  CoreState& s = result.state;
  while (!s.halted()) {
    if (s.cycles >= max_cycles) {
      throw CycleLimitExceeded(max_cycles, "program did not reach HALT");
    }
    const MicroAddress row = s.micro_pc;
    step(s, result.memory.span());
    if (record_trace) result.trace.push_back({s.cycles, row, s});
  }
  return result;
}

std::uint64_t instruction_cycle_cost(isa::Mnemonic m, std::optional<bool> taken) {
  const bool branch = m == isa::Mnemonic::JOZ || m == isa::Mnemonic::JOC;
  if (branch != taken.has_value()) {
    throw std::invalid_argument("taken must be supplied exactly for JOZ and JOC");
  }
  isa::MemoryImage scratch;
  scratch[0] = isa::encode(m);
  CoreState s;
  s.micro_pc = kFetchRow;
  s.z = s.c = taken.value_or(false);
  std::uint64_t count = 0;
  do {
    step(s, scratch.span());
    ++count;
  } while (s.micro_pc != kFetchRow && !s.halted());
  return count;
}

std::vector<InstructionSample> instruction_profile(std::span<const TraceRecord> trace) {
  std::vector<InstructionSample> samples;
  for (const TraceRecord& rec : trace) {
    if (rec.row == kResetRow) continue;
    if (rec.row == kFetchRow || samples.empty()) {
      samples.push_back({isa::Mnemonic::HALT, std::nullopt, 0});
    }
    InstructionSample& cur = samples.back();
    ++cur.cycles;
    if (rec.row == 2) {
      cur.mnemonic = isa::decode(rec.after.ir).mnemonic;
      if (cur.mnemonic == isa::Mnemonic::JOZ || cur.mnemonic == isa::Mnemonic::JOC) {
        cur.taken = false;
      }
    }
    if (rec.row == 50) cur.taken = true;
  }
  return samples;
}

}  // namespace cslow::micro
