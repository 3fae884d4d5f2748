#include <algorithm>
#include <set>

#include "cslow/retime.hpp"

namespace cslow::retime {

namespace {

std::vector<std::string> names_of(const Netlist& n, const std::vector<NodeId>& ids) {
  std::vector<std::string> out;
  for (NodeId v : ids) out.push_back(n.node(v).name);
  return out;
}

// Index into b's outputs for each of a's outputs.
std::vector<std::size_t> match_interfaces(const Netlist& a, const Netlist& b) {
  const auto a_in = names_of(a, a.inputs());
  const auto b_in = names_of(b, b.inputs());
  if (std::set(a_in.begin(), a_in.end()) != std::set(b_in.begin(), b_in.end())) {
    throw InterfaceMismatch("circuits have different INPUT names");
  }
  const auto a_out = names_of(a, a.outputs());
  const auto b_out = names_of(b, b.outputs());
  if (std::set(a_out.begin(), a_out.end()) != std::set(b_out.begin(), b_out.end())) {
    throw InterfaceMismatch("circuits have different OUTPUT names");
  }
  std::vector<std::size_t> map;
  for (const auto& name : a_out) {
    map.push_back(static_cast<std::size_t>(std::find(b_out.begin(), b_out.end(), name) -
                                           b_out.begin()));
  }
  return map;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  // splitmix64 step so neighbouring trials get unrelated streams.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Mismatch {
  bool found = false;
  std::size_t cycle = 0;
  std::string output;
};

template <class TrialFn>
EquivalenceVerdict run_trials(const EquivalenceOptions& opts, TrialFn&& trial_fn) {
  const auto trials = static_cast<std::ptrdiff_t>(opts.trials);
  std::vector<Mismatch> results(opts.trials);

#pragma omp parallel for schedule(dynamic) if (opts.parallel)
  for (std::ptrdiff_t i = 0; i < trials; ++i) {
    results[static_cast<std::size_t>(i)] = trial_fn(static_cast<std::size_t>(i));
  }

  EquivalenceVerdict verdict;
  verdict.trials_run = opts.trials;
  verdict.warmup = opts.warmup;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].found) {
      verdict.pass = false;
      verdict.trial = i;
      verdict.cycle = results[i].cycle;
      verdict.output = results[i].output;
      break;
    }
  }
  return verdict;
}

}  // namespace

std::size_t retiming_warmup(const Netlist& a, const Netlist& b) {
  return static_cast<std::size_t>(std::max(a.total_registers(), b.total_registers())) +
         std::max(a.node_count(), b.node_count());
}

EquivalenceVerdict check_equivalence(const Netlist& a, const Netlist& b,
                                     const EquivalenceOptions& opts) {
  const auto out_map = match_interfaces(a, b);
  const auto in_names = names_of(a, a.inputs());
  const std::size_t start = std::max(opts.warmup, opts.shift);

  return run_trials(opts, [&](std::size_t trial) {
    const auto stimulus = net::random_streams(in_names, opts.cycles, trial_seed(opts.seed, trial));
    const auto out_a = net::simulate(a, stimulus, opts.cycles);
    const auto out_b = net::simulate(b, stimulus, opts.cycles);
    Mismatch m;
    for (std::size_t t = start; t < opts.cycles && !m.found; ++t) {
      for (std::size_t k = 0; k < out_map.size(); ++k) {
        if (out_b.bits[out_map[k]][t] != out_a.bits[k][t - opts.shift]) {
          m = {true, t, out_a.names[k]};
          break;
        }
      }
    }
    return m;
  });
}

EquivalenceVerdict check_cslow_equivalence(const Netlist& a, const Netlist& b, int c,
                                           const EquivalenceOptions& opts) {
  if (c < 1) throw BadC("C-slow factor must be at least 1");
  const auto out_map = match_interfaces(a, b);
  const auto in_names = names_of(a, a.inputs());
  const auto slots = static_cast<std::size_t>(c);

  return run_trials(opts, [&](std::size_t trial) {
    std::vector<net::BitStreams> streams;
    std::vector<net::BitStreams> single;
    for (std::size_t j = 0; j < slots; ++j) {
      streams.push_back(
          net::random_streams(in_names, opts.cycles, trial_seed(opts.seed, trial * slots + j)));
      single.push_back(net::simulate(a, streams.back(), opts.cycles));
    }
    net::BitStreams interleaved;
    interleaved.names = in_names;
    interleaved.bits.assign(in_names.size(), std::vector<std::uint8_t>(opts.cycles * slots));
    for (std::size_t s = 0; s < in_names.size(); ++s) {
      for (std::size_t t = 0; t < opts.cycles; ++t) {
        for (std::size_t j = 0; j < slots; ++j) {
          interleaved.bits[s][t * slots + j] = streams[j].bits[s][t];
        }
      }
    }
    const auto out_b = net::simulate(b, interleaved, opts.cycles * slots);

    Mismatch m;
    for (std::size_t t = opts.warmup; t < opts.cycles && !m.found; ++t) {
      for (std::size_t j = 0; j < slots && !m.found; ++j) {
        for (std::size_t k = 0; k < out_map.size(); ++k) {
          if (out_b.bits[out_map[k]][t * slots + j] != single[j].bits[k][t]) {
            m = {true, t * slots + j, single[j].names[k]};
            break;
          }
        }
      }
    }
    return m;
  });
}

}  // namespace cslow::retime
