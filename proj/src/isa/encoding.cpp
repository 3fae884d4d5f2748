#include "cslow/isa.hpp"

#include <cctype>
#include <string>

namespace cslow::isa {

namespace {

struct EncodingRow {
  Mnemonic mnemonic;
  std::string_view name;
  Word code;
};

// (i3, i2, i1, i0) in the low nibble.
constexpr EncodingRow kEncoding[] = {
    {Mnemonic::CMA, "CMA", 0b0010},   {Mnemonic::INCA, "INCA", 0b0100},
    {Mnemonic::DCRA, "DCRA", 0b0110}, {Mnemonic::HALT, "HALT", 0b0000},
    {Mnemonic::AND, "AND", 0b1000},   {Mnemonic::LOAD, "LOAD", 0b1010},
    {Mnemonic::STO, "STO", 0b1011},   {Mnemonic::ADD, "ADD", 0b1100},
    {Mnemonic::SUB, "SUB", 0b1101},   {Mnemonic::JOZ, "JOZ", 0b1110},
    {Mnemonic::JOC, "JOC", 0b1111},
};

const EncodingRow& row_for(Mnemonic m) {
  return kEncoding[static_cast<std::size_t>(m)];
}

}  // namespace

std::string_view to_string(Mnemonic m) { return row_for(m).name; }

std::optional<Mnemonic> parse_mnemonic(std::string_view text) {
  std::string upper(text);
  for (char& ch : upper) {
    ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  // DCA is the spelling used on the decode row for the same instruction.
  if (upper == "DCA") return Mnemonic::DCRA;
  for (const auto& row : kEncoding) {
    if (row.name == upper) return row.mnemonic;
  }
  return std::nullopt;
}

bool is_memory_reference(Mnemonic m) { return (row_for(m).code & 0x8) != 0; }

Word encode(Mnemonic m) { return row_for(m).code; }

DecodedWord decode(Word w) {
  const DecodeSignals s = DecodeSignals::from_word(w);
  if (!s.i3) {
    if (s.xc0()) return {Mnemonic::CMA, false};
    if (s.xc1()) return {Mnemonic::INCA, false};
    if (s.xc2()) return {Mnemonic::DCRA, false};
    return {Mnemonic::HALT, false};
  }
  if (s.xc0()) return {s.i0 ? Mnemonic::STO : Mnemonic::LOAD, true};
  if (s.xc1()) return {s.i0 ? Mnemonic::SUB : Mnemonic::ADD, true};
  if (s.xc2()) return {s.i0 ? Mnemonic::JOC : Mnemonic::JOZ, true};
  // i0 is not inspected on the AND path either.
  return {Mnemonic::AND, true};
}

bool is_canonical(Word w) { return encode(decode(w).mnemonic) == w; }

}  // namespace cslow::isa
