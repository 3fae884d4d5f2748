#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace cslow::isa {

using Word = std::uint8_t;
using Address = std::uint8_t;

inline constexpr std::size_t kMemoryWords = 256;

enum class Mnemonic : std::uint8_t {
  CMA,
  INCA,
  DCRA,
  HALT,
  AND,
  LOAD,
  STO,
  ADD,
  SUB,
  JOZ,
  JOC,
};

inline constexpr std::array<Mnemonic, 11> kAllMnemonics = {
    Mnemonic::CMA, Mnemonic::INCA, Mnemonic::DCRA, Mnemonic::HALT,
    Mnemonic::AND, Mnemonic::LOAD, Mnemonic::STO,  Mnemonic::ADD,
    Mnemonic::SUB, Mnemonic::JOZ,  Mnemonic::JOC,
};

std::string_view to_string(Mnemonic m);
std::optional<Mnemonic> parse_mnemonic(std::string_view text);

/// True for the instructions followed by an operand-address word.
bool is_memory_reference(Mnemonic m);

/// Decode signals derived from the low nibble of an instruction word.
///
/// Layout is (i3, i2, i1, i0) in bits 3..0. The class code (i2, i1) drives
/// the mutually exclusive XC lines: 01 -> XC0, 10 -> XC1, 11 -> XC2. Class 00
/// raises none of them, which selects HALT (i3 = 0) or AND (i3 = 1) by falling
/// through the dispatch rows.
struct DecodeSignals {
  bool i3 = false;
  bool i2 = false;
  bool i1 = false;
  bool i0 = false;

  bool xc0() const { return !i2 && i1; }
  bool xc1() const { return i2 && !i1; }
  bool xc2() const { return i2 && i1; }

  static DecodeSignals from_word(Word w) {
    return {(w & 0x8) != 0, (w & 0x4) != 0, (w & 0x2) != 0, (w & 0x1) != 0};
  }
};

struct Instruction {
  Mnemonic mnemonic = Mnemonic::HALT;
  std::optional<Address> operand;

  bool operator==(const Instruction&) const = default;
};

/// Opcode word for a mnemonic. The upper nibble is always zero.
Word encode(Mnemonic m);
inline Word encode(const Instruction& instr) { return encode(instr.mnemonic); }

struct DecodedWord {
  Mnemonic mnemonic;
  bool operand_expected;

  bool operator==(const DecodedWord&) const = default;
};

/// Total over all words. The upper nibble is ignored. Non-memory-reference
/// patterns with i0 = 1 decode exactly like i0 = 0, because the control store
/// never inspects I0 unless I3 is set.
DecodedWord decode(Word w);

/// True when `w` is the canonical encoding of the mnemonic it decodes to.
bool is_canonical(Word w);

/// 256-word von Neumann store. Addresses are 8 bits, so indexing wraps.
class MemoryImage {
 public:
  MemoryImage() { cells_.fill(0); }

  Word& operator[](Address a) { return cells_[a]; }
  Word operator[](Address a) const { return cells_[a]; }

  std::span<Word, kMemoryWords> span() { return cells_; }
  std::span<const Word, kMemoryWords> span() const { return cells_; }

  bool operator==(const MemoryImage&) const = default;

 private:
  std::array<Word, kMemoryWords> cells_;
};

/// Image file text: 256 two-digit hex bytes, 16 per line.
std::string to_image_text(const MemoryImage& img);

/// Parses whitespace-separated two-digit hex bytes. Exactly 256 are required.
/// Throws std::invalid_argument on malformed tokens or a wrong count.
MemoryImage parse_image_text(std::string_view text);

}  // namespace cslow::isa
