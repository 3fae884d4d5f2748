#include "cslow/netlist.hpp"

namespace cslow::net {

Netlist random_netlist(const RandomNetlistParams& p, std::mt19937_64& rng) {
  static constexpr NodeKind kAll[] = {NodeKind::And,  NodeKind::Or,   NodeKind::Not,
                                      NodeKind::Xor,  NodeKind::Nand, NodeKind::Nor,
                                      NodeKind::Buf,  NodeKind::Const0, NodeKind::Const1};
  static constexpr NodeKind kZeroPreserving[] = {NodeKind::And, NodeKind::Or, NodeKind::Xor,
                                                 NodeKind::Buf, NodeKind::Const0};

  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  Netlist n;
  std::vector<NodeId> ins, gates;
  for (int i = 0; i < p.inputs; ++i) ins.push_back(n.add_node("i" + std::to_string(i), NodeKind::Input));
  for (int g = 0; g < p.gates; ++g) {
    NodeKind kind = p.zero_preserving ? kZeroPreserving[uniform(0, 4)] : kAll[uniform(0, 8)];
    // Constants are rare in real logic and starve the graph of edges.
    if (arity(kind) == 0 && uniform(0, 3) != 0) kind = NodeKind::Buf;
    gates.push_back(n.add_node("g" + std::to_string(g), kind, uniform(0, p.max_delay)));
  }

  for (int g = 0; g < p.gates; ++g) {
    const NodeId v = gates[static_cast<std::size_t>(g)];
    for (int pin = 0; pin < arity(n.node(v).kind); ++pin) {
      // Candidate drivers: every input, plus gates before g (forward) or any
      // gate at all when feedback is allowed.
      const int forward = p.inputs + g;
      const int total = p.feedback ? p.inputs + p.gates : forward;
      if (total == 0) {
        throw std::invalid_argument("random_netlist: gate has no possible driver");
      }
      const int pick = uniform(0, total - 1);
      const NodeId driver = pick < p.inputs ? ins[static_cast<std::size_t>(pick)]
                                            : gates[static_cast<std::size_t>(pick - p.inputs)];
      const bool backward = pick >= forward;
      const int weight = backward ? uniform(1, std::max(1, p.max_weight)) : uniform(0, p.max_weight);
      n.add_edge(driver, v, pin, weight);
    }
  }

  for (int o = 0; o < p.outputs; ++o) {
    const NodeId v = n.add_node("o" + std::to_string(o), NodeKind::Output);
    const NodeId driver = gates.empty() ? ins.at(static_cast<std::size_t>(uniform(0, p.inputs - 1)))
                                        : gates[static_cast<std::size_t>(uniform(0, p.gates - 1))];
    n.add_edge(driver, v, 0, uniform(0, p.max_weight));
  }
  return n;
}

}  // namespace cslow::net
