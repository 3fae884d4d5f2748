#include <algorithm>
#include <cctype>
#include <numeric>

#include "cslow/netlist.hpp"

namespace cslow::net {

namespace {

struct KindInfo {
  NodeKind kind;
  std::string_view name;
  int arity;
};

constexpr KindInfo kKinds[] = {
    {NodeKind::Input, "INPUT", 0},   {NodeKind::Output, "OUTPUT", 1},
    {NodeKind::And, "AND", 2},       {NodeKind::Or, "OR", 2},
    {NodeKind::Not, "NOT", 1},       {NodeKind::Xor, "XOR", 2},
    {NodeKind::Nand, "NAND", 2},     {NodeKind::Nor, "NOR", 2},
    {NodeKind::Buf, "BUF", 1},       {NodeKind::Const0, "CONST0", 0},
    {NodeKind::Const1, "CONST1", 0},
};

}  // namespace

std::string_view to_string(NodeKind kind) { return kKinds[static_cast<int>(kind)].name; }

std::optional<NodeKind> parse_gate_kind(std::string_view text) {
  std::string upper(text);
  for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (const auto& k : kKinds) {
    if (k.name == upper && is_gate(k.kind)) return k.kind;
  }
  return std::nullopt;
}

int arity(NodeKind kind) { return kKinds[static_cast<int>(kind)].arity; }

bool is_gate(NodeKind kind) { return kind != NodeKind::Input && kind != NodeKind::Output; }

bool evaluate_gate(NodeKind kind, bool a, bool b) {
  switch (kind) {
    case NodeKind::And: return a && b;
    case NodeKind::Or: return a || b;
    case NodeKind::Not: return !a;
    case NodeKind::Xor: return a != b;
    case NodeKind::Nand: return !(a && b);
    case NodeKind::Nor: return !(a || b);
    case NodeKind::Buf: return a;
    case NodeKind::Const0: return false;
    case NodeKind::Const1: return true;
    case NodeKind::Input:
    case NodeKind::Output: return a;
  }
  return false;
}

NetlistError::NetlistError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid netlist:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

NodeId Netlist::add_node(std::string name, NodeKind kind, int delay) {
  if (by_name_.count(name)) throw NetlistError({"duplicate node name '" + name + "'"});
  const NodeId id = nodes_.size();
  by_name_.emplace(name, id);
  nodes_.push_back({std::move(name), kind, delay});
  fanout_.emplace_back();
  fanin_.emplace_back();
  return id;
}

EdgeId Netlist::add_edge(NodeId from, NodeId to, int pin, int weight) {
  if (from >= nodes_.size() || to >= nodes_.size()) {
    throw NetlistError({"edge endpoint out of range"});
  }
  const EdgeId id = edges_.size();
  edges_.push_back({from, to, pin, weight});
  fanout_[from].push_back(id);
  fanin_[to].push_back(id);
  return id;
}

std::optional<NodeId> Netlist::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> Netlist::inputs() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v].kind == NodeKind::Input) out.push_back(v);
  }
  return out;
}

std::vector<NodeId> Netlist::outputs() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v].kind == NodeKind::Output) out.push_back(v);
  }
  return out;
}

std::size_t Netlist::gate_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return is_gate(n.kind); }));
}

long Netlist::total_registers() const {
  return std::accumulate(edges_.begin(), edges_.end(), 0L,
                         [](long acc, const Edge& e) { return acc + e.weight; });
}

int Netlist::max_delay() const {
  int best = 0;
  for (const auto& n : nodes_) best = std::max(best, n.delay);
  return best;
}

std::vector<std::string> Netlist::violations() const {
  std::vector<std::string> out;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    const Node& n = nodes_[v];
    if (n.delay < 0) out.push_back("node '" + n.name + "' has negative delay");
    if (!is_gate(n.kind) && n.delay != 0) {
      out.push_back("I/O node '" + n.name + "' must have delay 0");
    }
    if (n.kind == NodeKind::Output && !fanout_[v].empty()) {
      out.push_back("output '" + n.name + "' cannot drive other nodes");
    }
    const int pins = arity(n.kind);
    std::vector<int> drivers(static_cast<std::size_t>(pins), 0);
    for (EdgeId e : fanin_[v]) {
      const int pin = edges_[e].pin;
      if (pin < 0 || pin >= pins) {
        out.push_back("node '" + n.name + "' (" + std::string(to_string(n.kind)) +
                      ") has no pin " + std::to_string(pin));
      } else {
        ++drivers[static_cast<std::size_t>(pin)];
      }
    }
    for (int p = 0; p < pins; ++p) {
      const int d = drivers[static_cast<std::size_t>(p)];
      if (d == 0) {
        out.push_back("dangling pin " + std::to_string(p) + " on '" + n.name + "'");
      } else if (d > 1) {
        out.push_back("pin " + std::to_string(p) + " on '" + n.name + "' has " +
                      std::to_string(d) + " drivers");
      }
    }
  }
  for (const auto& e : edges_) {
    if (e.weight < 0) {
      out.push_back("wire " + nodes_[e.from].name + " -> " + nodes_[e.to].name +
                    " has negative weight");
    }
  }
  if (auto cycle = find_combinational_cycle()) {
    std::string msg = "combinational cycle:";
    for (NodeId v : *cycle) msg += " " + nodes_[v].name;
    msg += " " + nodes_[cycle->front()].name;
    out.push_back(msg);
  }
  return out;
}

std::optional<std::vector<NodeId>> Netlist::find_combinational_cycle() const {
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> color(nodes_.size(), White);
  std::vector<NodeId> parent(nodes_.size(), 0);

  // Iterative DFS over zero-weight edges.
  for (NodeId root = 0; root < nodes_.size(); ++root) {
    if (color[root] != White) continue;
    std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
    color[root] = Grey;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == fanout_[v].size()) {
        color[v] = Black;
        stack.pop_back();
        continue;
      }
      const Edge& e = edges_[fanout_[v][next++]];
      if (e.weight != 0) continue;
      const NodeId u = e.to;
      if (color[u] == Grey) {
        std::vector<NodeId> cycle{v};
        for (NodeId w = v; w != u;) {
          w = parent[w];
          cycle.push_back(w);
        }
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (color[u] == White) {
        color[u] = Grey;
        parent[u] = v;
        stack.push_back({u, 0});
      }
    }
  }
  return std::nullopt;
}

bool Netlist::has_feedback() const {
  std::vector<int> indegree(nodes_.size(), 0);
  for (const auto& e : edges_) ++indegree[e.to];
  std::vector<NodeId> ready;
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const NodeId v = ready.back();
    ready.pop_back();
    ++seen;
    for (EdgeId e : fanout_[v]) {
      if (--indegree[edges_[e].to] == 0) ready.push_back(edges_[e].to);
    }
  }
  return seen != nodes_.size();
}

std::vector<NodeId> Netlist::combinational_order() const {
  std::vector<int> indegree(nodes_.size(), 0);
  for (const auto& e : edges_) {
    if (e.weight == 0) ++indegree[e.to];
  }
  std::vector<NodeId> order;
  order.reserve(nodes_.size());
  for (NodeId v = 0; v < nodes_.size(); ++v) {
    if (indegree[v] == 0) order.push_back(v);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (EdgeId e : fanout_[order[i]]) {
      const Edge& edge = edges_[e];
      if (edge.weight == 0 && --indegree[edge.to] == 0) order.push_back(edge.to);
    }
  }
  if (order.size() != nodes_.size()) throw NetlistError({"combinational cycle"});
  return order;
}

}  // namespace cslow::net
