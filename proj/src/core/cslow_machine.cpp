#include "cslow/cslow_machine.hpp"

#include <algorithm>
#include <cctype>

namespace cslow::core {

std::string_view to_string(MemoryMode mode) {
  switch (mode) {
    case MemoryMode::Private: return "private";
    case MemoryMode::Shared: return "shared";
    case MemoryMode::Tagged: return "tagged";
  }
  return "?";
}

std::optional<MemoryMode> parse_memory_mode(std::string_view text) {
  std::string lower(text);
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "private") return MemoryMode::Private;
  if (lower == "shared") return MemoryMode::Shared;
  if (lower == "tagged") return MemoryMode::Tagged;
  return std::nullopt;
}

CslowMachine::CslowMachine(CslowConfig config, std::vector<isa::MemoryImage> images)
    : config_(config) {
  if (config_.c < 1 || config_.c > kMaxThreads) {
    throw BadThreadCount("thread count must be in [1, 8], got " + std::to_string(config_.c));
  }
  const std::size_t words = isa::kMemoryWords;
  if (config_.mode == MemoryMode::Shared) {
    if (images.empty() || (images.size() != 1 && images.size() != config_.c)) {
      throw ImageMismatch("shared mode needs 1 or " + std::to_string(config_.c) + " images");
    }
    for (const auto& img : images) {
      if (!(img == images.front())) {
        throw ImageMismatch("shared mode: images describe different memories");
      }
    }
    store_.assign(images.front().span().begin(), images.front().span().end());
  } else {
    if (images.size() != config_.c) {
      throw ImageMismatch("expected " + std::to_string(config_.c) + " images, got " +
                          std::to_string(images.size()));
    }
    // Private and Tagged share the flat layout; they differ in what the
    // partitions mean (owned images vs. one store indexed by thread tag).
    store_.resize(words * config_.c);
    for (unsigned t = 0; t < config_.c; ++t) {
      std::copy(images[t].span().begin(), images[t].span().end(),
                store_.begin() + static_cast<std::ptrdiff_t>(t * words));
    }
  }
  contexts_.assign(config_.c, micro::CoreState{});
  traces_.assign(config_.c, {});
}

micro::MemoryView CslowMachine::view(unsigned t) {
  const std::size_t base = config_.mode == MemoryMode::Shared ? 0 : t * isa::kMemoryWords;
  return micro::MemoryView(store_.data() + base, isa::kMemoryWords);
}

isa::MemoryImage CslowMachine::memory_image(unsigned t) const {
  const std::size_t base = config_.mode == MemoryMode::Shared ? 0 : t * isa::kMemoryWords;
  isa::MemoryImage img;
  std::copy_n(store_.begin() + static_cast<std::ptrdiff_t>(base), isa::kMemoryWords,
              img.span().begin());
  return img;
}

bool CslowMachine::all_halted() const {
  return std::all_of(contexts_.begin(), contexts_.end(),
                     [](const micro::CoreState& s) { return s.halted(); });
}

void CslowMachine::tick() {
  const unsigned t = thread_counter();
  micro::CoreState& ctx = contexts_[t];
  if (ctx.halted()) {
    ++idle_ticks_;
  } else {
    const micro::MicroAddress row = ctx.micro_pc;
    micro::step(ctx, view(t));
    if (tracing_) traces_[t].push_back({ctx.cycles, row, ctx});
  }
  ++fast_cycles_;
}

RunMetrics CslowMachine::run_all() {
  while (!all_halted()) {
    if (fast_cycles_ >= config_.max_fast_cycles) {
      std::string running;
      for (unsigned t = 0; t < config_.c; ++t) {
        if (!contexts_[t].halted()) running += (running.empty() ? "" : ",") + std::to_string(t);
      }
      throw micro::CycleLimitExceeded(config_.max_fast_cycles,
                                      "thread(s) " + running + " still running");
    }
    tick();
  }
  return metrics();
}

RunMetrics CslowMachine::metrics() const {
  RunMetrics m;
  m.c = config_.c;
  m.mode = config_.mode;
  for (const auto& ctx : contexts_) m.per_thread_cycles.push_back(ctx.cycles);
  m.rounds = *std::max_element(m.per_thread_cycles.begin(), m.per_thread_cycles.end());
  m.fast_cycles_total = fast_cycles_;
  m.idle_ticks = idle_ticks_;
  if (fast_cycles_ > 0) {
    m.vertical_waste = static_cast<double>(idle_ticks_) / static_cast<double>(fast_cycles_);
    m.occupancy = 1.0 - m.vertical_waste;
  }
  return m;
}

std::uint64_t sequential_baseline(const std::vector<isa::MemoryImage>& images,
                                  std::uint64_t max_cycles) {
  std::uint64_t total = 0;
  for (const auto& img : images) total += micro::run(img, max_cycles).state.cycles;
  return total;
}

Comparison compare(const std::vector<isa::MemoryImage>& images, unsigned c, MemoryMode mode,
                   std::uint64_t max_cycles) {
  std::vector<isa::MemoryImage> per_thread = images;
  if (mode == MemoryMode::Shared && per_thread.size() == 1) per_thread.assign(c, images.front());

  CslowMachine machine({c, mode, max_cycles * c}, per_thread);
  Comparison out;
  out.metrics = machine.run_all();
  out.sequential_sum = sequential_baseline(per_thread, max_cycles);
  out.max_rounds = out.metrics.rounds;
  out.fast_cycles = out.metrics.fast_cycles_total;
  out.speedup = Ratio::of(out.sequential_sum, out.max_rounds);
  return out;
}

}  // namespace cslow::core
