#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cslow::net {

using NodeId = std::size_t;
using EdgeId = std::size_t;

enum class NodeKind : std::uint8_t {
  Input,
  Output,
  And,
  Or,
  Not,
  Xor,
  Nand,
  Nor,
  Buf,
  Const0,
  Const1,
};

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_gate_kind(std::string_view text);

/// Number of input pins. Output nodes have one, inputs none.
int arity(NodeKind kind);
bool is_gate(NodeKind kind);
bool evaluate_gate(NodeKind kind, bool a, bool b);

struct Node {
  std::string name;
  NodeKind kind;
  int delay = 0;
};

/// Registers live on edges: `weight` is the number of flip-flops between
/// the driver and the pin.
struct Edge {
  NodeId from;
  NodeId to;
  int pin;
  int weight;
};

/// Synchronous gate-level circuit. Nodes and edges are appended in
/// declaration order; ids are stable indices.
class Netlist {
 public:
  NodeId add_node(std::string name, NodeKind kind, int delay = 0);
  EdgeId add_edge(NodeId from, NodeId to, int pin, int weight);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::optional<NodeId> find(std::string_view name) const;
  std::vector<NodeId> inputs() const;
  std::vector<NodeId> outputs() const;

  const std::vector<EdgeId>& fanout(NodeId id) const { return fanout_.at(id); }
  const std::vector<EdgeId>& fanin(NodeId id) const { return fanin_.at(id); }

  void set_weight(EdgeId e, int weight) { edges_.at(e).weight = weight; }

  std::size_t gate_count() const;
  long total_registers() const;
  int max_delay() const;

  /// Every structural violation, empty when valid: pin coverage, driver
  /// rules, negative weights or delays, I/O delays, combinational cycles.
  std::vector<std::string> violations() const;

  /// Nodes of one zero-weight directed cycle, if any exists.
  std::optional<std::vector<NodeId>> find_combinational_cycle() const;

  /// True when the graph, ignoring weights, has a directed cycle.
  bool has_feedback() const;

  /// Topological order of the zero-weight subgraph. Throws on a
  /// combinational cycle.
  std::vector<NodeId> combinational_order() const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> fanout_;
  std::vector<std::vector<EdgeId>> fanin_;
  std::unordered_map<std::string, NodeId> by_name_;
};

class NetlistError : public std::runtime_error {
 public:
  explicit NetlistError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Line format, `#` starts a comment:
///   input <name> | output <name> | gate <name> <kind> <delay>
///   wire <from> <to> <pin> <weight>
/// Throws NetlistError listing every syntax and structural problem.
Netlist parse_netlist(std::string_view text);
std::string to_text(const Netlist& n);

struct CriticalPath {
  int period = 0;
  std::vector<NodeId> witness;  // maximizing register-free path, in order
};

/// Longest register-free path, summing node delays.
CriticalPath critical_path(const Netlist& n);

/// One bit sequence per signal; all sequences have the same length.
struct BitStreams {
  std::vector<std::string> names;
  std::vector<std::vector<std::uint8_t>> bits;  // [signal][cycle]

  std::size_t length() const { return bits.empty() ? 0 : bits.front().size(); }
  bool operator==(const BitStreams&) const = default;
};

/// Streams file: one line per cycle, one 0/1 character per signal.
std::string to_streams_text(const BitStreams& s);
BitStreams parse_streams_text(std::string_view text, std::vector<std::string> names);

BitStreams random_streams(const std::vector<std::string>& names, std::size_t cycles,
                          std::uint64_t seed);

/// Cycle-by-cycle synchronous simulator. All registers start at 0.
class Simulator {
 public:
  explicit Simulator(const Netlist& n);

  /// `inputs` has one value per INPUT node in declaration order; returns one
  /// value per OUTPUT node sampled after settling, then clocks registers.
  std::vector<std::uint8_t> cycle(const std::vector<std::uint8_t>& inputs);

 private:
  const Netlist& n_;
  std::vector<NodeId> order_;
  std::vector<NodeId> inputs_;
  std::vector<NodeId> outputs_;
  std::vector<std::uint8_t> value_;
  // Per-edge shift register stored as a ring: slots [offset, offset + w).
  std::vector<std::size_t> ring_offset_;
  std::vector<std::size_t> ring_head_;
  std::vector<std::uint8_t> ring_;
};

/// Runs `cycles` cycles. `inputs` must name every INPUT node.
BitStreams simulate(const Netlist& n, const BitStreams& inputs, std::size_t cycles);

struct RandomNetlistParams {
  int inputs = 1;
  int outputs = 1;
  int gates = 4;
  int max_delay = 3;
  int max_weight = 2;
  bool feedback = true;
  /// Restrict gate kinds to those mapping all-zero inputs to zero.
  bool zero_preserving = false;
};

/// Random structurally valid netlist. Every back edge carries at least one
/// register, so every cycle does too.
Netlist random_netlist(const RandomNetlistParams& p, std::mt19937_64& rng);

}  // namespace cslow::net
