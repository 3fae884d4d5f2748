#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "cslow/netlist.hpp"

using namespace cslow::net;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(CSLOW_CORPUS_DIR) + "/netlists/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> problems_of(const std::string& text) {
  try {
    parse_netlist(text);
  } catch (const NetlistError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  for (const auto& p : problems) {
    if (p.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::vector<std::string> input_names(const Netlist& n) {
  std::vector<std::string> names;
  for (NodeId v : n.inputs()) names.push_back(n.node(v).name);
  return names;
}

}  // namespace

TEST_CASE("parse the chain fixture") {
  const auto n = parse_netlist(read_fixture("chain.net"));
  CHECK(n.node_count() == 6);
  CHECK(n.edge_count() == 5);
  CHECK(n.gate_count() == 4);
  CHECK(n.total_registers() == 0);
  CHECK(n.inputs().size() == 1);
  CHECK(n.outputs().size() == 1);
  CHECK_FALSE(n.has_feedback());
  CHECK(n.find("g3").has_value());
  CHECK_FALSE(n.find("g9").has_value());
  CHECK(parse_netlist(to_text(n)).edges().size() == n.edge_count());
  CHECK(to_text(parse_netlist(to_text(n))) == to_text(n));
}

TEST_CASE("critical path examples") {
  const auto chain = critical_path(parse_netlist(read_fixture("chain.net")));
  CHECK(chain.period == 4);
  REQUIRE(chain.witness.size() == 4);  // zero-delay endpoints add nothing
  CHECK(chain.witness.front() == 1);
  CHECK(chain.witness.back() == 4);
  CHECK(critical_path(parse_netlist(read_fixture("chain_mid_register.net"))).period == 2);
  CHECK(critical_path(parse_netlist(read_fixture("ring.net"))).period == 4);
  CHECK(critical_path(parse_netlist("input a\noutput b\nwire a b 0 0\n")).period == 0);
  CHECK(critical_path(Netlist{}).period == 0);

  const auto ring = parse_netlist(read_fixture("ring.net"));
  CHECK(ring.has_feedback());
  const auto path = critical_path(ring);
  int sum = 0;
  for (NodeId v : path.witness) sum += ring.node(v).delay;
  CHECK(sum == path.period);
}

TEST_CASE("empty netlist is valid") {
  const auto n = parse_netlist("# nothing here\n\n");
  CHECK(n.node_count() == 0);
  CHECK(n.violations().empty());
}

TEST_CASE("structural errors are reported together") {
  const auto cyc = problems_of(
      "input i\ngate a AND 1\ngate b BUF 1\noutput o\n"
      "wire i a 0 0\nwire b a 1 0\nwire a b 0 0\nwire b o 0 0\n");
  CHECK(mentions(cyc, "combinational cycle"));

  const auto many = problems_of(
      "input i\ngate a AND 1\noutput o\noutput p\n"
      "wire i a 0 0\nwire i a 0 0\nwire a o 0 0\nwire o p 0 0\n");
  CHECK(mentions(many, "dangling pin 1 on 'a'"));
  CHECK(mentions(many, "pin 0 on 'a' has 2 drivers"));
  CHECK(mentions(many, "output 'o' cannot drive"));

  CHECK(mentions(problems_of("gate x FOO 1\n"), "line 1: unknown gate kind"));
  CHECK(mentions(problems_of("input a\ninput a\n"), "line 2: duplicate node name"));
  CHECK(mentions(problems_of("input a\noutput b\nwire a b 0 -1\n"), "bad weight"));
  CHECK(mentions(problems_of("input a\noutput b\nwire a c 0 0\n"), "unknown node 'c'"));
  CHECK(mentions(problems_of("input a\ngate n NOT 1\noutput b\nwire a n 1 0\nwire n b 0 0\n"),
                 "has no pin 1"));
  CHECK(mentions(problems_of("register r\n"), "unknown statement"));

  Netlist direct;
  const auto g = direct.add_node("g", NodeKind::Buf, 1);
  direct.add_edge(g, g, 0, 0);
  CHECK(direct.find_combinational_cycle().has_value());
  CHECK_THROWS_AS(direct.combinational_order(), NetlistError);
  direct.set_weight(0, 1);
  CHECK_FALSE(direct.find_combinational_cycle().has_value());
}

TEST_CASE("simulation examples") {
  BitStreams in{{"a"}, {{1, 0, 1, 1, 0, 0, 1}}};

  const auto wire = parse_netlist("input a\noutput b\nwire a b 0 0\n");
  CHECK(simulate(wire, in, 7).bits[0] == in.bits[0]);

  const auto delayed = parse_netlist("input a\noutput b\nwire a b 0 2\n");
  CHECK(simulate(delayed, in, 7).bits[0] == std::vector<std::uint8_t>{0, 0, 1, 0, 1, 1, 0});

  const auto toggle = parse_netlist(
      "input a\ngate t XOR 1\noutput q\nwire a t 0 0\nwire t t 1 1\nwire t q 0 1\n");
  BitStreams ones{{"a"}, {{1, 1, 1, 1, 1}}};
  CHECK(simulate(toggle, ones, 5).bits[0] == std::vector<std::uint8_t>{0, 1, 0, 1, 0});

  const auto inv = parse_netlist("input a\ngate n NOT 0\noutput b\nwire a n 0 0\nwire n b 0 0\n");
  CHECK(simulate(inv, in, 3).bits[0] == std::vector<std::uint8_t>{0, 1, 0});
  CHECK(simulate(inv, in, 3).names == std::vector<std::string>{"b"});

  CHECK_THROWS_AS(simulate(wire, BitStreams{{"x"}, {{0}}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(simulate(wire, in, 8), std::invalid_argument);
}

TEST_CASE("gate truth tables") {
  const bool t = true, f = false;
  CHECK(evaluate_gate(NodeKind::And, t, t));
  CHECK_FALSE(evaluate_gate(NodeKind::And, t, f));
  CHECK(evaluate_gate(NodeKind::Or, f, t));
  CHECK(evaluate_gate(NodeKind::Nand, t, f));
  CHECK_FALSE(evaluate_gate(NodeKind::Nor, f, t));
  CHECK(evaluate_gate(NodeKind::Xor, t, f));
  CHECK_FALSE(evaluate_gate(NodeKind::Xor, t, t));
  CHECK(evaluate_gate(NodeKind::Const1, f, f));
  CHECK_FALSE(evaluate_gate(NodeKind::Const0, t, t));
  CHECK(parse_gate_kind("xor") == NodeKind::Xor);
  CHECK_FALSE(parse_gate_kind("INPUT").has_value());
}

TEST_CASE("property: extra output registers shift the output stream") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    RandomNetlistParams p;
    p.inputs = 1 + trial % 3;
    p.outputs = 1 + trial % 2;
    p.gates = 2 + trial % 10;
    p.feedback = trial % 2 == 0;
    auto n = parse_netlist(to_text(random_netlist(p, rng)));
    const auto in = random_streams(input_names(n), 64, static_cast<std::uint64_t>(trial));
    const auto before = simulate(n, in, 64);

    const int k = 1 + trial % 4;
    const NodeId out0 = n.outputs().front();
    const EdgeId e = n.fanin(out0).front();
    n.set_weight(e, n.edge(e).weight + k);
    const auto after = simulate(n, in, 64);
    for (std::size_t t = 0; t < 64; ++t) {
      const std::uint8_t expected = t < static_cast<std::size_t>(k) ? 0 : before.bits[0][t - k];
      REQUIRE(after.bits[0][t] == expected);
    }
  }
}

TEST_CASE("property: random netlists are valid") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    RandomNetlistParams p;
    p.inputs = 1 + trial % 4;
    p.outputs = 1 + trial % 3;
    p.gates = trial % 30;
    p.max_weight = trial % 3;
    p.feedback = trial % 3 != 0;
    p.zero_preserving = trial % 5 == 0;
    const auto n = random_netlist(p, rng);
    CHECK(n.violations().empty());
    if (!p.feedback) CHECK_FALSE(n.has_feedback());
    if (p.zero_preserving) {
      for (const auto& node : n.nodes()) {
        CHECK_FALSE(evaluate_gate(node.kind, false, false));
      }
    }
  }
}

TEST_CASE("streams format") {
  const auto s = random_streams({"a", "b"}, 5, 3);
  CHECK(s.length() == 5);
  CHECK(random_streams({"a", "b"}, 5, 3) == s);
  const auto text = to_streams_text(s);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  CHECK(parse_streams_text(text, {"a", "b"}) == s);
  CHECK(parse_streams_text("10\n01\n", {"x", "y"}).bits[0] == std::vector<std::uint8_t>{1, 0});
  CHECK_THROWS_AS(parse_streams_text("101\n", {"x", "y"}), std::invalid_argument);
  CHECK_THROWS_AS(parse_streams_text("12\n", {"x", "y"}), std::invalid_argument);
}
