#include "oracles/table_walk.hpp"

#include <map>
#include <regex>
#include <stdexcept>
#include <string>

namespace oracle {

namespace {

struct Row {
  const char* label;
  const char* text;
};

// Address order, one entry per row.
const Row kTable[] = {
    {"", "pc <- 0"},
    {"Fetch", "MAR <- pc"},
    {"", "IR <- M(MAR) ; pc <- pc+1"},
    {"Decode", "I3 = 1? go to MEMREF"},
    {"", "XC0 = 1? Go to CMA"},
    {"", "XC1 = 1? Go to INCA"},
    {"", "XC2 = 1? Go to DCA"},
    {"", "go to HALT"},
    {"CMA", "A <- ~A"},
    {"", "go to Fetch"},
    {"INCA", "A <- A+1"},
    {"", "go to Fetch"},
    {"DCRA", "A <- A-1"},
    {"", "go to Fetch"},
    {"MEMREF", "if XC0 = 1, LDSTO"},
    {"", "if XC1 = 1, ADDSUB"},
    {"", "if XC2 = 1, JUMP"},
    {"AND", "MAR <- pc"},
    {"", "Buffer <- M(MAR), pc <- pc+1"},
    {"", "MAR <- Buffer"},
    {"", "Buffer <- M(MAR)"},
    {"", "A <- A & Buffer"},
    {"", "go to Fetch"},
    {"LDSTO", "MAR <- pc"},
    {"", "Buffer <- M(MAR); pc <- pc +1"},
    {"", "MAR <- Buffer"},
    {"", "if I0 = 1 go to STO"},
    {"LOAD", "Buffer <- M(MAR)"},
    {"", "A <- Buffer"},
    {"", "go to Fetch"},
    {"STO", "M(MAR) <- A"},
    {"", "go to Fetch"},
    {"ADSUB", "MAR <- pc"},
    {"", "Buffer <- M(MAR); pc <- pc+1"},
    {"", "MAR <- Buffer"},
    {"", "Buffer <- M(MAR)"},
    {"", "if I0 = 1, go to SUB"},
    {"ADD", "A <- A + Buffer"},
    {"", "go to Fetch"},
    {"SUB", "A <- A - Buffer"},
    {"", "go to Fetch"},
    {"JUMP", "MAR <- pc"},
    {"", "if I0 =0, go to JOZ"},
    {"", "if I0 =1, go to JOC"},
    {"JOZ", "if z=1 go to LOADPC"},
    {"", "pc <- pc+1"},
    {"", "go to Fetch"},
    {"JOC", "if c=1 go to LOADPC"},
    {"", "pc <- pc+1"},
    {"", "go to Fetch"},
    {"LOADPC", "pc <- M(MAR)"},
    {"", "go to Fetch"},
    {"HALT", "go to HALT"},
};
constexpr int kRows = sizeof(kTable) / sizeof(kTable[0]);
static_assert(kRows == 53);

int label_address(std::string name) {
  // The dispatch rows spell two targets differently from the row labels.
  static const std::map<std::string, std::string> aliases = {{"DCA", "DCRA"},
                                                             {"ADDSUB", "ADSUB"}};
  if (auto it = aliases.find(name); it != aliases.end()) name = it->second;
  for (int i = 0; i < kRows; ++i) {
    if (name == kTable[i].label) return i;
  }
  throw std::logic_error("oracle: unknown label " + name);
}

std::string squeeze(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch != ' ') out += ch;
  }
  return out;
}

bool signal(const WalkState& s, const std::string& name) {
  const bool i3 = s.ir & 8, i2 = s.ir & 4, i1 = s.ir & 2, i0 = s.ir & 1;
  if (name == "I3") return i3;
  if (name == "I0") return i0;
  if (name == "XC0") return !i2 && i1;
  if (name == "XC1") return i2 && !i1;
  if (name == "XC2") return i2 && i1;
  if (name == "z") return s.z;
  if (name == "c") return s.c;
  throw std::logic_error("oracle: unknown signal " + name);
}

// Evaluates one "dst <- expr" using only `pre`; writes into `post`.
void transfer(const std::string& stmt, const WalkState& pre, WalkState& post, Memory& mem) {
  const auto arrow = stmt.find("<-");
  const std::string dst = stmt.substr(0, arrow);
  const std::string expr = stmt.substr(arrow + 2);
  int value = 0;
  bool arith = false, carry = false;
  if (expr == "0") value = 0;
  else if (expr == "pc") value = pre.pc;
  else if (expr == "pc+1") value = (pre.pc + 1) & 0xff;
  else if (expr == "M(MAR)") value = mem[pre.mar];
  else if (expr == "Buffer") value = pre.buffer;
  else if (expr == "A") value = pre.a;
  else if (expr == "~A") value = ~pre.a & 0xff;
  else if (expr == "A&Buffer") value = pre.a & pre.buffer;
  else if (expr == "A+1") { value = pre.a + 1; arith = true; carry = value > 255; }
  else if (expr == "A-1") { value = pre.a - 1; arith = true; carry = pre.a >= 1; }
  else if (expr == "A+Buffer") { value = pre.a + pre.buffer; arith = true; carry = value > 255; }
  else if (expr == "A-Buffer") { value = pre.a - pre.buffer; arith = true; carry = pre.a >= pre.buffer; }
  else throw std::logic_error("oracle: unknown expression " + expr);
  value &= 0xff;

  if (dst == "pc") post.pc = value;
  else if (dst == "MAR") post.mar = value;
  else if (dst == "IR") post.ir = value;
  else if (dst == "Buffer") post.buffer = value;
  else if (dst == "A") post.a = value;
  else if (dst == "M(MAR)") mem[pre.mar] = static_cast<std::uint8_t>(value);
  else throw std::logic_error("oracle: unknown destination " + dst);

  if (arith) {
    post.z = value == 0;
    post.c = carry;
  }
}

void execute_row(WalkState& s, Memory& mem) {
  const WalkState pre = s;
  const std::string text = kTable[pre.upc].text;
  static const std::regex cond(R"(^(?:if\s*)?(\w+)\s*=\s*(\d)\s*[?,]?\s*(?:[Gg]o to\s*)?(\w+)$)");
  static const std::regex jump(R"(^[Gg]o to\s*(\w+)$)");
  std::smatch m;
  int next = pre.upc + 1;
  if (std::regex_match(text, m, jump)) {
    next = label_address(m[1]);
  } else if (std::regex_match(text, m, cond)) {
    const bool want = m[2] == "1";
    if (signal(pre, m[1]) == want) next = label_address(m[3]);
  } else {
    std::string rest = squeeze(text);
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t end = rest.find_first_of(";,", start);
      if (end == std::string::npos) end = rest.size();
      transfer(rest.substr(start, end - start), pre, s, mem);
      start = end + 1;
    }
  }
  s.upc = next;
  s.row = pre.upc;
  ++s.cycles;
}

}  // namespace

WalkRun walk_program(const Memory& memory, std::uint64_t max_cycles) {
  WalkRun run;
  run.memory = memory;
  while (run.state.upc != 52 && run.state.cycles < max_cycles) {
    execute_row(run.state, run.memory);
    run.trace.push_back(run.state);
  }
  run.halted = run.state.upc == 52;
  return run;
}

std::uint64_t walk_instruction_cost(std::uint8_t opcode, bool flag) {
  Memory mem{};
  mem[0] = opcode;
  WalkState s;
  s.upc = 1;
  s.z = s.c = flag;
  std::uint64_t n = 0;
  do {
    execute_row(s, mem);
    ++n;
  } while (s.upc != 1 && s.upc != 52);
  return n;
}

}  // namespace oracle
