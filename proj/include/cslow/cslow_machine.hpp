#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cslow/isa.hpp"
#include "cslow/microcode.hpp"

namespace cslow::core {

/// How the C threads see memory.
///  - Private: each thread owns a full 256-word image.
///  - Shared:  one image visible to every thread.
///  - Tagged:  one physical store of C x 256 words; thread t's address a
///             lands on physical cell t * 256 + a.
enum class MemoryMode { Private, Shared, Tagged };

std::string_view to_string(MemoryMode mode);
std::optional<MemoryMode> parse_memory_mode(std::string_view text);

inline constexpr unsigned kMaxThreads = 8;

struct CslowConfig {
  unsigned c = 1;
  MemoryMode mode = MemoryMode::Private;
  std::uint64_t max_fast_cycles = 1'000'000;
};

class BadThreadCount : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ImageMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact non-negative ratio, kept reduced.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Ratio of(std::uint64_t n, std::uint64_t d) {
    const std::uint64_t g = std::gcd(n, d);
    return g == 0 ? Ratio{0, 1} : Ratio{n / g, d / g};
  }
  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / den; }
  bool operator==(const Ratio&) const = default;
};

struct RunMetrics {
  unsigned c = 1;
  MemoryMode mode = MemoryMode::Private;
  std::vector<std::uint64_t> per_thread_cycles;
  std::uint64_t rounds = 0;
  std::uint64_t fast_cycles_total = 0;
  std::uint64_t idle_ticks = 0;
  double occupancy = 0.0;
  double vertical_waste = 0.0;
  // Single-issue datapath: no partially filled issue slots exist.
  double horizontal_waste = 0.0;
};

/// Barrel machine: C replicated thread contexts stepped in strict
/// round-robin order, one micro-instruction per fast clock.
///
/// A halted thread keeps its slot and idles on the HALT self-loop. Its state,
/// cycle counter included, no longer changes, so per-thread cycle counts
/// equal the baseline halt-entry counts.
class CslowMachine {
 public:
  /// `images` holds one image per thread. Shared mode also accepts a single
  /// image; if C are given they must be byte-identical.
  CslowMachine(CslowConfig config, std::vector<isa::MemoryImage> images);

  const CslowConfig& config() const { return config_; }
  unsigned thread_counter() const { return static_cast<unsigned>(fast_cycles_ % config_.c); }
  std::uint64_t fast_cycles() const { return fast_cycles_; }
  std::uint64_t idle_ticks() const { return idle_ticks_; }
  const micro::CoreState& context(unsigned t) const { return contexts_.at(t); }
  bool all_halted() const;

  /// Memory as seen by thread t.
  micro::MemoryView view(unsigned t);
  isa::MemoryImage memory_image(unsigned t) const;

  /// Record a per-thread trace of every non-idle step.
  void enable_trace() { tracing_ = true; }
  const std::vector<micro::TraceRecord>& trace(unsigned t) const { return traces_.at(t); }

  void tick();

  /// Ticks until every thread has halted. Throws CycleLimitExceeded, naming
  /// the threads still running, once max_fast_cycles ticks have elapsed.
  RunMetrics run_all();

  RunMetrics metrics() const;

 private:
  CslowConfig config_;
  std::vector<micro::CoreState> contexts_;
  std::vector<isa::Word> store_;  // C x 256 words (Private, Tagged) or 256 (Shared)
  std::uint64_t fast_cycles_ = 0;
  std::uint64_t idle_ticks_ = 0;
  bool tracing_ = false;
  std::vector<std::vector<micro::TraceRecord>> traces_;
};

/// Sum of baseline cycle counts: the same C programs executed back to back
/// on the single-thread core.
std::uint64_t sequential_baseline(const std::vector<isa::MemoryImage>& images,
                                  std::uint64_t max_cycles);

struct Comparison {
  std::uint64_t sequential_sum = 0;
  std::uint64_t max_rounds = 0;
  std::uint64_t fast_cycles = 0;
  Ratio speedup;
  RunMetrics metrics;
};

Comparison compare(const std::vector<isa::MemoryImage>& images, unsigned c, MemoryMode mode,
                   std::uint64_t max_cycles = 1'000'000);

/// Bundle file: `cslow-bundle C=<n> mode=<m>` then the concatenated images.
struct Bundle {
  unsigned c = 1;
  MemoryMode mode = MemoryMode::Private;
  std::vector<isa::MemoryImage> images;
};

bool looks_like_bundle(std::string_view text);
Bundle parse_bundle(std::string_view text);
std::string to_bundle_text(const Bundle& bundle);

/// One configuration of a batch sweep.
struct SweepJob {
  std::vector<isa::MemoryImage> images;
  unsigned c = 1;
  MemoryMode mode = MemoryMode::Private;
  std::uint64_t max_cycles = 1'000'000;
};

/// Runs independent comparisons. Results are in job order. The parallel
/// variant distributes jobs over OpenMP threads; the serial one is the
/// reference it is tested against. Errors from any job are rethrown.
std::vector<Comparison> sweep(const std::vector<SweepJob>& jobs);
std::vector<Comparison> sweep_serial(const std::vector<SweepJob>& jobs);

}  // namespace cslow::core
