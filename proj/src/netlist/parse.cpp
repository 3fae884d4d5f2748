#include <random>
#include <sstream>

#include "cslow/netlist.hpp"

namespace cslow::net {

namespace {

std::optional<int> to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

Netlist parse_netlist(std::string_view text) {
  Netlist n;
  std::vector<std::string> problems;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;

  auto fail = [&](const std::string& msg) {
    problems.push_back("line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::vector<std::string> tok;
    for (std::string t; tokens >> t;) tok.push_back(std::move(t));
    if (tok.empty()) continue;

    const std::string& keyword = tok[0];
    try {
      if (keyword == "input" || keyword == "output") {
        if (tok.size() != 2) {
          fail("expected '" + keyword + " <name>'");
          continue;
        }
        n.add_node(tok[1], keyword == "input" ? NodeKind::Input : NodeKind::Output, 0);
      } else if (keyword == "gate") {
        if (tok.size() != 4) {
          fail("expected 'gate <name> <kind> <delay>'");
          continue;
        }
        auto kind = parse_gate_kind(tok[2]);
        auto delay = to_int(tok[3]);
        if (!kind) {
          fail("unknown gate kind '" + tok[2] + "'");
          continue;
        }
        if (!delay || *delay < 0) {
          fail("bad delay '" + tok[3] + "'");
          continue;
        }
        n.add_node(tok[1], *kind, *delay);
      } else if (keyword == "wire") {
        if (tok.size() != 5) {
          fail("expected 'wire <from> <to> <pin> <weight>'");
          continue;
        }
        auto from = n.find(tok[1]);
        auto to = n.find(tok[2]);
        auto pin = to_int(tok[3]);
        auto weight = to_int(tok[4]);
        if (!from) fail("unknown node '" + tok[1] + "'");
        if (!to) fail("unknown node '" + tok[2] + "'");
        if (!pin) fail("bad pin '" + tok[3] + "'");
        if (!weight || *weight < 0) fail("bad weight '" + tok[4] + "'");
        if (from && to && pin && weight && *weight >= 0) n.add_edge(*from, *to, *pin, *weight);
      } else {
        fail("unknown statement '" + keyword + "'");
      }
    } catch (const NetlistError& e) {
      for (const auto& p : e.problems()) fail(p);
    }
  }

  if (problems.empty()) problems = n.violations();
  if (!problems.empty()) throw NetlistError(std::move(problems));
  return n;
}

std::string to_text(const Netlist& n) {
  std::ostringstream out;
  for (const auto& node : n.nodes()) {
    switch (node.kind) {
      case NodeKind::Input: out << "input " << node.name << '\n'; break;
      case NodeKind::Output: out << "output " << node.name << '\n'; break;
      default:
        out << "gate " << node.name << ' ' << to_string(node.kind) << ' ' << node.delay << '\n';
    }
  }
  for (const auto& e : n.edges()) {
    out << "wire " << n.node(e.from).name << ' ' << n.node(e.to).name << ' ' << e.pin << ' '
        << e.weight << '\n';
  }
  return out.str();
}

std::string to_streams_text(const BitStreams& s) {
  std::string out;
  for (std::size_t t = 0; t < s.length(); ++t) {
    for (const auto& signal : s.bits) out += signal[t] ? '1' : '0';
    out += '\n';
  }
  return out;
}

BitStreams parse_streams_text(std::string_view text, std::vector<std::string> names) {
  BitStreams s;
  s.names = std::move(names);
  s.bits.assign(s.names.size(), {});
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (line.size() != s.names.size()) {
      throw std::invalid_argument("streams line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(s.names.size()) + " bits");
    }
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] != '0' && line[i] != '1') {
        throw std::invalid_argument("streams line " + std::to_string(line_no) +
                                    ": bits must be 0 or 1");
      }
      s.bits[i].push_back(line[i] == '1');
    }
  }
  return s;
}

BitStreams random_streams(const std::vector<std::string>& names, std::size_t cycles,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitStreams s;
  s.names = names;
  s.bits.assign(names.size(), std::vector<std::uint8_t>(cycles));
  for (auto& signal : s.bits) {
    for (auto& bit : signal) bit = static_cast<std::uint8_t>(rng() & 1u);
  }
  return s;
}

}  // namespace cslow::net
