#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cslow/netlist.hpp"

namespace cslow::retime {

using net::Netlist;
using net::NodeId;

/// Integer lag per node, indexed by NodeId. A lag moves that many registers
/// from the node's outputs to its inputs: w_r(e) = w(e) + lag[to] - lag[from].
/// INPUT and OUTPUT nodes are pinned to lag 0.
struct Retiming {
  std::vector<int> lag;

  static Retiming identity(const Netlist& n) { return {std::vector<int>(n.node_count(), 0)}; }
  bool operator==(const Retiming&) const = default;
};

/// Retiming file: one `lag <node> <integer>` line per node with nonzero lag.
std::string to_text(const Netlist& n, const Retiming& r);
Retiming parse_retiming(const Netlist& n, std::string_view text);

class BadC : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IllegalRetiming : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFeedForward : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Replaces every register by C registers (every edge weight times C).
Netlist cslow_transform(const Netlist& n, int c);

/// The edge on which `r` would produce a negative weight, if any.
std::optional<net::EdgeId> first_illegal_edge(const Netlist& n, const Retiming& r);

/// Throws IllegalRetiming naming the violated edge, or when host lags are
/// nonzero.
Netlist apply_retiming(const Netlist& n, const Retiming& r);

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// All-pairs W (fewest registers on any u->v path) and D (largest delay sum
/// over the paths achieving W, both endpoints included). Row-major, n x n;
/// unreachable pairs hold kUnreachable in both.
struct WDMatrices {
  std::size_t n = 0;
  std::vector<int> w;
  std::vector<int> d;

  int W(NodeId u, NodeId v) const { return w[u * n + v]; }
  int D(NodeId u, NodeId v) const { return d[u * n + v]; }
  bool operator==(const WDMatrices&) const = default;
};

/// Floyd-Warshall over (registers, -delay) pairs ordered lexicographically.
/// compute_wd parallelizes each relaxation sweep over rows with OpenMP;
/// compute_wd_serial is the reference kept for testing.
WDMatrices compute_wd(const Netlist& n);
WDMatrices compute_wd_serial(const Netlist& n);

/// A legal retiming whose period is at most `period`, or nullopt when none
/// exists. Solves the difference-constraint system with Bellman-Ford.
std::optional<Retiming> feasible_retiming(const Netlist& n, const WDMatrices& wd, int period);

struct RetimeResult {
  Retiming retiming;
  int period = 0;
};

/// Minimum-period legal retiming: binary search over the distinct D values.
RetimeResult min_period_retime(const Netlist& n);

struct PipelineResult {
  Netlist netlist;
  Retiming retiming;
  int period = 0;
  int latency_added = 0;
};

/// Adds k registers on every edge leaving an INPUT, then retimes for
/// minimum period. Throws NotFeedForward on circuits with feedback.
PipelineResult pipeline(const Netlist& n, int k);

struct EquivalenceOptions {
  std::size_t trials = 100;
  std::size_t cycles = 256;
  std::size_t warmup = 0;
  /// b's output at cycle t is compared with a's output at cycle t - shift.
  std::size_t shift = 0;
  std::uint64_t seed = 0;
  bool parallel = true;
};

struct EquivalenceVerdict {
  bool pass = true;
  std::size_t trials_run = 0;
  std::size_t warmup = 0;
  // First mismatch (lowest trial index) when !pass.
  std::size_t trial = 0;
  std::size_t cycle = 0;
  std::string output;
};

class InterfaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Conservative flush bound for comparing a circuit with a retimed copy:
/// the larger register total plus the larger node count.
std::size_t retiming_warmup(const Netlist& a, const Netlist& b);

/// Drives both circuits with the same random input streams per trial.
EquivalenceVerdict check_equivalence(const Netlist& a, const Netlist& b,
                                     const EquivalenceOptions& opts);

/// `b` is expected to be a C-slowed `a`. Each trial feeds b the C-way
/// interleave of C independent random streams and checks that the
/// de-interleaved outputs equal C separate runs of a, from `opts.warmup`.
EquivalenceVerdict check_cslow_equivalence(const Netlist& a, const Netlist& b, int c,
                                           const EquivalenceOptions& opts);

/// Register and gate counts before and after a transformation.
struct AreaModel {
  long registers_before = 0;
  long registers_after = 0;
  std::size_t gates = 0;
  double ratio = 0.0;
};

/// Measured synthesis figures for an FPGA 3-slow processor, carried as an
/// external reference in reports. Never produced by the model.
struct ReferenceSynthesisDatum {
  static constexpr long kSimpleSliceRegisters = 2107;
  static constexpr long kThreeSlowSliceRegisters = 4270;
  static constexpr double ratio() {
    return static_cast<double>(kThreeSlowSliceRegisters) / kSimpleSliceRegisters;
  }
};

AreaModel area_report(const Netlist& before, const Netlist& after);

}  // namespace cslow::retime
