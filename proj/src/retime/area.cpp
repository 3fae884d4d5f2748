#include <limits>

#include "cslow/retime.hpp"

namespace cslow::retime {

AreaModel area_report(const Netlist& before, const Netlist& after) {
  AreaModel m;
  m.registers_before = before.total_registers();
  m.registers_after = after.total_registers();
  m.gates = after.gate_count();
  if (m.registers_before == 0) {
    m.ratio = m.registers_after == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    m.ratio = static_cast<double>(m.registers_after) / static_cast<double>(m.registers_before);
  }
  return m;
}

}  // namespace cslow::retime
