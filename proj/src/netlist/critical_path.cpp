#include <algorithm>

#include "cslow/netlist.hpp"

namespace cslow::net {

CriticalPath critical_path(const Netlist& n) {
  CriticalPath result;
  if (n.node_count() == 0) return result;

  const auto order = n.combinational_order();
  // arrival[v]: longest register-free path ending at v, v's delay included.
  std::vector<int> arrival(n.node_count(), 0);
  std::vector<std::optional<NodeId>> pred(n.node_count());
  for (NodeId v : order) {
    int best = 0;
    for (EdgeId e : n.fanin(v)) {
      const Edge& edge = n.edge(e);
      if (edge.weight == 0 && arrival[edge.from] > best) {
        best = arrival[edge.from];
        pred[v] = edge.from;
      }
    }
    arrival[v] = best + n.node(v).delay;
  }

  const auto end = static_cast<NodeId>(
      std::max_element(arrival.begin(), arrival.end()) - arrival.begin());
  result.period = arrival[end];
  for (std::optional<NodeId> v = end; v; v = pred[*v]) result.witness.push_back(*v);
  std::reverse(result.witness.begin(), result.witness.end());
  return result;
}

}  // namespace cslow::net
