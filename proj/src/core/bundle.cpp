#include <sstream>

#include "cslow/cslow_machine.hpp"

namespace cslow::core {

namespace {
constexpr std::string_view kMagic = "cslow-bundle";
}

bool looks_like_bundle(std::string_view text) { return text.substr(0, kMagic.size()) == kMagic; }

Bundle parse_bundle(std::string_view text) {
  const std::size_t eol = text.find('\n');
  std::istringstream header{std::string(text.substr(0, eol))};
  std::string magic, c_field, mode_field, extra;
  header >> magic >> c_field >> mode_field >> extra;
  if (magic != kMagic || c_field.rfind("C=", 0) != 0 || mode_field.rfind("mode=", 0) != 0 ||
      !extra.empty()) {
    throw std::invalid_argument("bundle: header must read 'cslow-bundle C=<n> mode=<m>'");
  }
  Bundle bundle;
  try {
    bundle.c = static_cast<unsigned>(std::stoul(c_field.substr(2)));
  } catch (const std::exception&) {
    throw std::invalid_argument("bundle: bad thread count '" + c_field + "'");
  }
  auto mode = parse_memory_mode(mode_field.substr(5));
  if (!mode) throw std::invalid_argument("bundle: unknown mode '" + mode_field + "'");
  bundle.mode = *mode;

  std::istringstream body{eol == std::string_view::npos ? std::string{}
                                                        : std::string(text.substr(eol + 1))};
  std::vector<std::string> tokens;
  for (std::string tok; body >> tok;) tokens.push_back(std::move(tok));
  const std::size_t per = isa::kMemoryWords;
  if (tokens.empty() || tokens.size() % per != 0) {
    throw std::invalid_argument("bundle: body must hold whole 256-byte images, found " +
                                std::to_string(tokens.size()) + " bytes");
  }
  for (std::size_t i = 0; i < tokens.size(); i += per) {
    std::string chunk;
    for (std::size_t j = i; j < i + per; ++j) chunk += tokens[j] + ' ';
    bundle.images.push_back(isa::parse_image_text(chunk));
  }
  const bool single_shared = bundle.mode == MemoryMode::Shared && bundle.images.size() == 1;
  if (bundle.images.size() != bundle.c && !single_shared) {
    throw std::invalid_argument("bundle: header says C=" + std::to_string(bundle.c) + " but " +
                                std::to_string(bundle.images.size()) + " images follow");
  }
  return bundle;
}

std::string to_bundle_text(const Bundle& bundle) {
  std::string out = std::string(kMagic) + " C=" + std::to_string(bundle.c) +
                    " mode=" + std::string(to_string(bundle.mode)) + "\n";
  for (const auto& img : bundle.images) out += isa::to_image_text(img);
  return out;
}

}  // namespace cslow::core
