#include "cslow/assembler.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

namespace cslow::isa {

AssemblyError::AssemblyError(AssemblyErrorKind kind, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      kind_(kind),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!std::isalpha(head) && head != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::optional<long> parse_number(std::string_view s) {
  long value = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    first += 2;
    base = 16;
  }
  if (first == last) return std::nullopt;
  auto [ptr, ec] = std::from_chars(first, last, value, base);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

std::string render_line(const SourceLine& line) {
  std::string out;
  if (line.label) out += *line.label + ":";
  if (!line.op.empty()) {
    out += '\t';
    out += line.op;
    if (line.operand) out += " " + *line.operand;
  }
  if (line.comment) {
    if (!out.empty()) out += ' ';
    out += ";" + *line.comment;
  }
  return out;
}

std::string hex_byte(int v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02x", v);
  return buf;
}

}  // namespace

SourceProgram parse_source(std::string_view text) {
  SourceProgram program;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_number;

    SourceLine line;
    line.line_number = line_number;
    if (auto semi = raw.find(';'); semi != std::string_view::npos) {
      line.comment = std::string(raw.substr(semi + 1));
      raw = raw.substr(0, semi);
    }
    std::string_view code = trim(raw);
    if (auto colon = code.find(':'); colon != std::string_view::npos) {
      std::string_view label = trim(code.substr(0, colon));
      if (!is_identifier(label)) {
        throw AssemblyError(AssemblyErrorKind::Syntax, line_number,
                            "bad label '" + std::string(label) + "'");
      }
      line.label = std::string(label);
      code = trim(code.substr(colon + 1));
    }
    std::istringstream tokens{std::string(code)};
    std::string op, operand, extra;
    tokens >> op >> operand >> extra;
    if (!extra.empty()) {
      throw AssemblyError(AssemblyErrorKind::Syntax, line_number,
                          "unexpected token '" + extra + "'");
    }
    line.op = op;
    if (!operand.empty()) line.operand = operand;

    if (line.label || !line.op.empty() || line.comment) {
      program.lines.push_back(std::move(line));
    }
    if (eol == text.size()) break;
  }
  return program;
}

std::string to_text(const SourceProgram& program) {
  std::string out;
  for (const auto& line : program.lines) {
    out += render_line(line);
    out += '\n';
  }
  return out;
}

AssemblyOutput assemble_with_listing(const SourceProgram& program, Address origin) {
  struct Statement {
    const SourceLine* line;
    int address;
    int size;
    std::optional<Mnemonic> mnemonic;
  };

  auto expect_value = [](const SourceLine& line, long min, long max) {
    auto value = parse_number(*line.operand);
    if (!value || *value < min || *value > max) {
      throw AssemblyError(AssemblyErrorKind::Syntax, line.line_number,
                          "bad numeric literal '" + *line.operand + "'");
    }
    return *value;
  };

  // Pass 1: sizes, placement and label addresses.
  std::map<std::string, int> labels;
  std::vector<Statement> statements;
  int counter = origin;
  for (const auto& line : program.lines) {
    if (line.label) {
      if (!labels.emplace(*line.label, counter).second) {
        throw AssemblyError(AssemblyErrorKind::DuplicateLabel, line.line_number,
                            "duplicate label '" + *line.label + "'");
      }
    }
    if (line.op.empty()) continue;

    if (line.op == ".org") {
      if (!line.operand) {
        throw AssemblyError(AssemblyErrorKind::MissingOperand, line.line_number,
                            ".org needs an address");
      }
      counter = static_cast<int>(expect_value(line, 0, 255));
      continue;
    }

    Statement st{&line, counter, 1, std::nullopt};
    if (line.op == ".word") {
      if (!line.operand) {
        throw AssemblyError(AssemblyErrorKind::MissingOperand, line.line_number,
                            ".word needs a value");
      }
    } else {
      auto m = parse_mnemonic(line.op);
      if (!m) {
        throw AssemblyError(AssemblyErrorKind::Syntax, line.line_number,
                            "unknown mnemonic '" + line.op + "'");
      }
      const bool memref = is_memory_reference(*m);
      if (memref && !line.operand) {
        throw AssemblyError(AssemblyErrorKind::MissingOperand, line.line_number,
                            std::string(to_string(*m)) + " needs an operand address");
      }
      if (!memref && line.operand) {
        throw AssemblyError(AssemblyErrorKind::UnexpectedOperand, line.line_number,
                            std::string(to_string(*m)) + " takes no operand");
      }
      st.mnemonic = m;
      st.size = memref ? 2 : 1;
    }
    if (counter + st.size > static_cast<int>(kMemoryWords)) {
      throw AssemblyError(AssemblyErrorKind::ImageOverflow, line.line_number,
                          "program does not fit below address 256");
    }
    statements.push_back(st);
    counter += st.size;
  }

  auto resolve = [&](const SourceLine& line) -> Word {
    const std::string& text = *line.operand;
    if (is_identifier(text)) {
      auto it = labels.find(text);
      if (it == labels.end()) {
        throw AssemblyError(AssemblyErrorKind::UndefinedLabel, line.line_number,
                            "undefined label '" + text + "'");
      }
      return static_cast<Word>(it->second);
    }
    return static_cast<Word>(expect_value(line, 0, 255));
  };

  // Pass 2: emit.
  AssemblyOutput out;
  std::array<bool, kMemoryWords> written{};
  auto put = [&](const SourceLine& line, int address, Word w) {
    if (written[address]) {
      throw AssemblyError(AssemblyErrorKind::OverlappingPlacement, line.line_number,
                          "cell " + hex_byte(address) + " written twice");
    }
    written[address] = true;
    out.image[static_cast<Address>(address)] = w;
  };

  for (const auto& st : statements) {
    const SourceLine& line = *st.line;
    ListingEntry entry{static_cast<Address>(st.address), {}, line.line_number, render_line(line)};
    if (!st.mnemonic) {
      entry.words.push_back(resolve(line));
    } else {
      entry.words.push_back(encode(*st.mnemonic));
      if (line.operand) entry.words.push_back(resolve(line));
    }
    for (std::size_t i = 0; i < entry.words.size(); ++i) {
      put(line, st.address + static_cast<int>(i), entry.words[i]);
    }
    out.listing.push_back(std::move(entry));
  }
  return out;
}

SourceProgram disassemble(const MemoryImage& image, Address start, int count) {
  SourceProgram program;
  const int end = std::min<int>(start + std::max(count, 0), static_cast<int>(kMemoryWords));
  int addr = start;
  while (addr < end) {
    const Word w = image[static_cast<Address>(addr)];
    SourceLine line;
    line.line_number = static_cast<int>(program.lines.size()) + 1;
    const DecodedWord d = decode(w);
    if (is_canonical(w) && (!d.operand_expected || addr + 1 < end)) {
      line.op = std::string(to_string(d.mnemonic));
      if (d.operand_expected) {
        line.operand = hex_byte(image[static_cast<Address>(addr + 1)]);
      }
      addr += d.operand_expected ? 2 : 1;
    } else {
      line.op = ".word";
      line.operand = hex_byte(w);
      addr += 1;
    }
    program.lines.push_back(std::move(line));
  }
  return program;
}

}  // namespace cslow::isa
