#include <cstdio>

#include "cslow/microcode.hpp"

namespace cslow::micro {

std::string format_trace_line(const TraceRecord& rec) {
  const CoreState& s = rec.after;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%llu %u %02x %02x %02x %02x %02x %d %d",
                static_cast<unsigned long long>(rec.cycle), unsigned{rec.row}, s.pc, s.a, s.mar,
                s.ir, s.buffer, s.z ? 1 : 0, s.c ? 1 : 0);
  return buf;
}

std::string format_trace(std::span<const TraceRecord> trace) {
  std::string out;
  for (const auto& rec : trace) {
    out += format_trace_line(rec);
    out += '\n';
  }
  return out;
}

std::string format_summary(const CoreState& state, const isa::MemoryImage& before,
                           const isa::MemoryImage& after) {
  char buf[128];
  std::string out;
  std::snprintf(buf, sizeof buf, "cycles=%llu halted=%d\n",
                static_cast<unsigned long long>(state.cycles), state.halted() ? 1 : 0);
  out += buf;
  std::snprintf(buf, sizeof buf, "pc=%02x a=%02x mar=%02x ir=%02x buffer=%02x z=%d c=%d upc=%u\n",
                state.pc, state.a, state.mar, state.ir, state.buffer, state.z ? 1 : 0,
                state.c ? 1 : 0, unsigned{state.micro_pc});
  out += buf;
  int changed = 0;
  for (std::size_t i = 0; i < isa::kMemoryWords; ++i) {
    const auto a = static_cast<isa::Address>(i);
    if (before[a] != after[a]) {
      std::snprintf(buf, sizeof buf, "mem[%02x] %02x -> %02x\n", a, before[a], after[a]);
      out += buf;
      ++changed;
    }
  }
  if (changed == 0) out += "memory unchanged\n";
  return out;
}

}  // namespace cslow::micro
