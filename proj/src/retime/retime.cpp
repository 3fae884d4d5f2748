#include <algorithm>
#include <sstream>

#include "cslow/retime.hpp"

namespace cslow::retime {

namespace {

bool is_host(const Netlist& n, NodeId v) { return !net::is_gate(n.node(v).kind); }

std::string describe(const Netlist& n, const net::Edge& e) {
  return n.node(e.from).name + " -> " + n.node(e.to).name + " pin " + std::to_string(e.pin);
}

}  // namespace

std::string to_text(const Netlist& n, const Retiming& r) {
  std::ostringstream out;
  for (NodeId v = 0; v < n.node_count(); ++v) {
    if (r.lag.at(v) != 0) out << "lag " << n.node(v).name << ' ' << r.lag[v] << '\n';
  }
  return out.str();
}

Retiming parse_retiming(const Netlist& n, std::string_view text) {
  Retiming r = Retiming::identity(n);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string keyword, name, value, extra;
    tokens >> keyword >> name >> value >> extra;
    if (keyword.empty()) continue;
    const auto where = "retiming line " + std::to_string(line_no) + ": ";
    if (keyword != "lag" || value.empty() || !extra.empty()) {
      throw std::invalid_argument(where + "expected 'lag <node> <integer>'");
    }
    auto v = n.find(name);
    if (!v) throw std::invalid_argument(where + "unknown node '" + name + "'");
    try {
      std::size_t used = 0;
      r.lag[*v] = std::stoi(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument(where + "bad lag '" + value + "'");
    }
  }
  return r;
}

Netlist cslow_transform(const Netlist& n, int c) {
  if (c < 1) throw BadC("C-slow factor must be at least 1, got " + std::to_string(c));
  Netlist out = n;
  for (net::EdgeId e = 0; e < out.edge_count(); ++e) out.set_weight(e, out.edge(e).weight * c);
  return out;
}

std::optional<net::EdgeId> first_illegal_edge(const Netlist& n, const Retiming& r) {
  for (net::EdgeId e = 0; e < n.edge_count(); ++e) {
    const auto& edge = n.edge(e);
    if (edge.weight + r.lag[edge.to] - r.lag[edge.from] < 0) return e;
  }
  return std::nullopt;
}

Netlist apply_retiming(const Netlist& n, const Retiming& r) {
  if (r.lag.size() != n.node_count()) {
    throw IllegalRetiming("retiming has " + std::to_string(r.lag.size()) + " lags for " +
                          std::to_string(n.node_count()) + " nodes");
  }
  for (NodeId v = 0; v < n.node_count(); ++v) {
    if (is_host(n, v) && r.lag[v] != 0) {
      throw IllegalRetiming("I/O node '" + n.node(v).name + "' must keep lag 0");
    }
  }
  if (auto bad = first_illegal_edge(n, r)) {
    const auto& e = n.edge(*bad);
    throw IllegalRetiming("negative register count on " + describe(n, e) + ": " +
                          std::to_string(e.weight + r.lag[e.to] - r.lag[e.from]));
  }
  Netlist out = n;
  for (net::EdgeId e = 0; e < out.edge_count(); ++e) {
    const auto& edge = out.edge(e);
    out.set_weight(e, edge.weight + r.lag[edge.to] - r.lag[edge.from]);
  }
  return out;
}

std::optional<Retiming> feasible_retiming(const Netlist& n, const WDMatrices& wd, int period) {
  const std::size_t size = n.node_count();
  const std::size_t host = size;

  // x[a] - x[b] <= bound, relaxed as an edge b -> a.
  struct Constraint {
    std::size_t a, b;
    long bound;
  };
  std::vector<Constraint> constraints;
  constraints.reserve(n.edge_count() + size * 2);
  for (const auto& e : n.edges()) constraints.push_back({e.from, e.to, e.weight});
  for (NodeId u = 0; u < size; ++u) {
    for (NodeId v = 0; v < size; ++v) {
      if (wd.W(u, v) == kUnreachable || wd.D(u, v) <= period) continue;
      constraints.push_back({u, v, static_cast<long>(wd.W(u, v)) - 1});
    }
    if (is_host(n, u)) {
      constraints.push_back({u, host, 0});
      constraints.push_back({host, u, 0});
    }
  }

  // Bellman-Ford from an implicit source joined to every variable by a
  // zero-weight edge.
  std::vector<long> dist(size + 1, 0);
  const std::size_t rounds = size + 1;
  for (std::size_t round = 0; round <= rounds; ++round) {
    bool changed = false;
    for (const auto& c : constraints) {
      if (dist[c.b] + c.bound < dist[c.a]) {
        dist[c.a] = dist[c.b] + c.bound;
        changed = true;
      }
    }
    if (!changed) {
      Retiming r;
      r.lag.resize(size);
      for (NodeId v = 0; v < size; ++v) r.lag[v] = static_cast<int>(dist[v] - dist[host]);
      return r;
    }
  }
  return std::nullopt;  // negative cycle
}

RetimeResult min_period_retime(const Netlist& n) {
  RetimeResult result{Retiming::identity(n), 0};
  if (n.node_count() == 0) return result;

  const WDMatrices wd = compute_wd(n);
  std::vector<int> candidates;
  for (int d : wd.d) {
    if (d != kUnreachable) candidates.push_back(d);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // The largest candidate is always met by the identity retiming.
  std::size_t lo = 0, hi = candidates.size() - 1;
  Retiming best = Retiming::identity(n);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto r = feasible_retiming(n, wd, candidates[mid])) {
      best = std::move(*r);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (first_illegal_edge(n, best)) {
    throw std::logic_error("retiming: solver produced an illegal retiming");
  }
  const Netlist retimed = apply_retiming(n, best);
  result.period = net::critical_path(retimed).period;
  if (result.period != candidates[lo]) {
    throw std::logic_error("retiming: achieved period " + std::to_string(result.period) +
                           " differs from target " + std::to_string(candidates[lo]));
  }
  result.retiming = std::move(best);
  return result;
}

PipelineResult pipeline(const Netlist& n, int k) {
  if (k < 0) throw std::invalid_argument("pipeline depth must be non-negative");
  if (n.has_feedback()) {
    throw NotFeedForward(
        "pipelining needs a feed-forward circuit; use C-slow for feedback loops");
  }
  Netlist deeper = n;
  for (net::EdgeId e = 0; e < deeper.edge_count(); ++e) {
    const auto& edge = deeper.edge(e);
    if (deeper.node(edge.from).kind == net::NodeKind::Input) {
      deeper.set_weight(e, edge.weight + k);
    }
  }
  RetimeResult rt = min_period_retime(deeper);
  PipelineResult out{apply_retiming(deeper, rt.retiming), std::move(rt.retiming), rt.period, k};
  return out;
}

}  // namespace cslow::retime
