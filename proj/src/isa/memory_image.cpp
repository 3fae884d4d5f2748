#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cslow/isa.hpp"

namespace cslow::isa {

std::string to_image_text(const MemoryImage& img) {
  std::string out;
  out.reserve(kMemoryWords * 3);
  char buf[4];
  for (std::size_t i = 0; i < kMemoryWords; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", img[static_cast<Address>(i)]);
    out += buf;
    out += (i % 16 == 15) ? '\n' : ' ';
  }
  return out;
}

namespace {

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

}  // namespace

MemoryImage parse_image_text(std::string_view text) {
  MemoryImage img;
  std::istringstream in{std::string(text)};
  std::string token;
  std::size_t count = 0;
  while (in >> token) {
    if (token.size() != 2 || hex_value(token[0]) < 0 || hex_value(token[1]) < 0) {
      throw std::invalid_argument("memory image: bad byte '" + token + "' at position " +
                                  std::to_string(count));
    }
    if (count >= kMemoryWords) {
      throw std::invalid_argument("memory image: more than 256 bytes");
    }
    img[static_cast<Address>(count)] =
        static_cast<Word>(hex_value(token[0]) * 16 + hex_value(token[1]));
    ++count;
  }
  if (count != kMemoryWords) {
    throw std::invalid_argument("memory image: expected 256 bytes, found " +
                                std::to_string(count));
  }
  return img;
}

}  // namespace cslow::isa
