#include <stdexcept>

#include "cslow/netlist.hpp"

namespace cslow::net {

Simulator::Simulator(const Netlist& n)
    : n_(n),
      order_(n.combinational_order()),
      inputs_(n.inputs()),
      outputs_(n.outputs()),
      value_(n.node_count(), 0),
      ring_offset_(n.edge_count(), 0),
      ring_head_(n.edge_count(), 0) {
  std::size_t total = 0;
  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    ring_offset_[e] = total;
    total += static_cast<std::size_t>(n.edge(e).weight);
  }
  ring_.assign(total, 0);
}

std::vector<std::uint8_t> Simulator::cycle(const std::vector<std::uint8_t>& inputs) {
  if (inputs.size() != inputs_.size()) {
    throw std::invalid_argument("simulate: wrong number of input values");
  }
  for (std::size_t i = 0; i < inputs_.size(); ++i) value_[inputs_[i]] = inputs[i] ? 1 : 0;

  auto pin_value = [&](EdgeId e) -> bool {
    const Edge& edge = n_.edge(e);
    if (edge.weight == 0) return value_[edge.from] != 0;
    return ring_[ring_offset_[e] + ring_head_[e]] != 0;
  };

  for (NodeId v : order_) {
    const NodeKind kind = n_.node(v).kind;
    if (kind == NodeKind::Input) continue;
    bool pins[2] = {false, false};
    for (EdgeId e : n_.fanin(v)) pins[n_.edge(e).pin] = pin_value(e);
    value_[v] = evaluate_gate(kind, pins[0], pins[1]) ? 1 : 0;
  }

  std::vector<std::uint8_t> out;
  out.reserve(outputs_.size());
  for (NodeId v : outputs_) out.push_back(value_[v]);

  // Clock edge: every register stage shifts at once. The oldest slot is read
  // and then overwritten with the driver's settled value.
  for (EdgeId e = 0; e < n_.edge_count(); ++e) {
    const auto w = static_cast<std::size_t>(n_.edge(e).weight);
    if (w == 0) continue;
    std::size_t& head = ring_head_[e];
    ring_[ring_offset_[e] + head] = value_[n_.edge(e).from];
    head = head + 1 == w ? 0 : head + 1;
  }
  return out;
}

BitStreams simulate(const Netlist& n, const BitStreams& inputs, std::size_t cycles) {
  const auto input_ids = n.inputs();
  std::vector<std::size_t> column(input_ids.size());
  for (std::size_t i = 0; i < input_ids.size(); ++i) {
    const std::string& name = n.node(input_ids[i]).name;
    std::size_t j = 0;
    while (j < inputs.names.size() && inputs.names[j] != name) ++j;
    if (j == inputs.names.size()) throw std::invalid_argument("simulate: no stream for " + name);
    if (inputs.bits[j].size() < cycles) {
      throw std::invalid_argument("simulate: stream for " + name + " is too short");
    }
    column[i] = j;
  }

  BitStreams out;
  for (NodeId v : n.outputs()) out.names.push_back(n.node(v).name);
  out.bits.assign(out.names.size(), std::vector<std::uint8_t>(cycles));

  Simulator sim(n);
  std::vector<std::uint8_t> in(input_ids.size());
  for (std::size_t t = 0; t < cycles; ++t) {
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = inputs.bits[column[i]][t];
    const auto values = sim.cycle(in);
    for (std::size_t k = 0; k < values.size(); ++k) out.bits[k][t] = values[k];
  }
  return out;
}

}  // namespace cslow::net
