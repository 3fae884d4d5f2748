#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cslow/isa.hpp"

namespace cslow::isa {

/// One statement of assembly text. `op` is a mnemonic or a directive
/// (".org", ".word"); it is empty for label-only or comment-only lines.
struct SourceLine {
  std::optional<std::string> label;
  std::string op;
  std::optional<std::string> operand;
  std::optional<std::string> comment;
  int line_number = 0;

  bool operator==(const SourceLine&) const = default;
};

struct SourceProgram {
  std::vector<SourceLine> lines;
};

enum class AssemblyErrorKind {
  Syntax,
  DuplicateLabel,
  UndefinedLabel,
  ImageOverflow,
  UnexpectedOperand,
  MissingOperand,
  OverlappingPlacement,
};

class AssemblyError : public std::runtime_error {
 public:
  AssemblyError(AssemblyErrorKind kind, int line, const std::string& message);

  AssemblyErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  AssemblyErrorKind kind_;
  int line_;
};

/// Splits text into statements. Syntax: `[LABEL:] [OP [OPERAND]] [; comment]`.
SourceProgram parse_source(std::string_view text);

/// Renders statements one per line, with a tab before the op.
std::string to_text(const SourceProgram& program);

struct ListingEntry {
  Address address;
  std::vector<Word> words;
  int line_number;
  std::string source;
};

struct AssemblyOutput {
  MemoryImage image;
  std::vector<ListingEntry> listing;
};

/// Two-pass assembly. The placement counter starts at `origin`; `.org`
/// moves it. Everything emitted must fit below address 256 without wrap.
AssemblyOutput assemble_with_listing(const SourceProgram& program, Address origin = 0);

inline MemoryImage assemble(const SourceProgram& program, Address origin = 0) {
  return assemble_with_listing(program, origin).image;
}

inline MemoryImage assemble(std::string_view text, Address origin = 0) {
  return assemble(parse_source(text), origin);
}

/// Linear-sweep disassembly of `count` cells starting at `start`.
///
/// Canonical opcode words become instructions with a hex operand; anything
/// else, including a memory-reference opcode whose operand would fall past
/// the range, is rendered as `.word`. Reassembling the listing at `start`
/// reproduces the covered cells bit for bit.
SourceProgram disassemble(const MemoryImage& image, Address start, int count);

}  // namespace cslow::isa
