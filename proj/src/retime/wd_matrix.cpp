#include "cslow/retime.hpp"

namespace cslow::retime {

namespace {

// Path key: (registers, -delay) compared lexicographically. The delay part
// accumulates the delay of every node on the path except the last.
struct Key {
  long w = std::numeric_limits<long>::max();
  long neg_d = 0;

  bool reachable() const { return w != std::numeric_limits<long>::max(); }
  bool operator<(const Key& o) const { return w != o.w ? w < o.w : neg_d < o.neg_d; }
};

std::vector<Key> initial_keys(const Netlist& n) {
  const std::size_t size = n.node_count();
  std::vector<Key> key(size * size);
  for (NodeId v = 0; v < size; ++v) key[v * size + v] = {0, 0};
  for (const auto& e : n.edges()) {
    const Key cand{e.weight, -static_cast<long>(n.node(e.from).delay)};
    Key& slot = key[e.from * size + e.to];
    if (cand < slot) slot = cand;
  }
  return key;
}

WDMatrices finish(const Netlist& n, const std::vector<Key>& key) {
  WDMatrices out;
  out.n = n.node_count();
  out.w.assign(out.n * out.n, kUnreachable);
  out.d.assign(out.n * out.n, kUnreachable);
  for (NodeId u = 0; u < out.n; ++u) {
    for (NodeId v = 0; v < out.n; ++v) {
      const Key& k = key[u * out.n + v];
      if (!k.reachable()) continue;
      out.w[u * out.n + v] = static_cast<int>(k.w);
      out.d[u * out.n + v] = static_cast<int>(n.node(v).delay - k.neg_d);
    }
  }
  return out;
}

}  // namespace

WDMatrices compute_wd_serial(const Netlist& n) {
  const std::size_t size = n.node_count();
  auto key = initial_keys(n);
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t i = 0; i < size; ++i) {
      const Key ik = key[i * size + k];
      if (!ik.reachable()) continue;
      for (std::size_t j = 0; j < size; ++j) {
        const Key& kj = key[k * size + j];
        if (!kj.reachable()) continue;
        const Key cand{ik.w + kj.w, ik.neg_d + kj.neg_d};
        if (cand < key[i * size + j]) key[i * size + j] = cand;
      }
    }
  }
  return finish(n, key);
}

WDMatrices compute_wd(const Netlist& n) {
  const auto size = static_cast<std::ptrdiff_t>(n.node_count());
  auto key = initial_keys(n);
  for (std::ptrdiff_t k = 0; k < size; ++k) {
    // Row k is fixed during sweep k (key[k][k] is the zero key), so rows can
    // be relaxed independently.
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < size; ++i) {
      const Key ik = key[i * size + k];
      if (!ik.reachable()) continue;
      const Key* row_k = &key[k * size];
      Key* row_i = &key[i * size];
      for (std::ptrdiff_t j = 0; j < size; ++j) {
        if (!row_k[j].reachable()) continue;
        const Key cand{ik.w + row_k[j].w, ik.neg_d + row_k[j].neg_d};
        if (cand < row_i[j]) row_i[j] = cand;
      }
    }
  }
  return finish(n, key);
}

}  // namespace cslow::retime
