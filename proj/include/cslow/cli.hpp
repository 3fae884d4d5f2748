#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cslow/cslow_machine.hpp"
#include "cslow/isa.hpp"

namespace cslow::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kSimulationLimit = 2,
  kInternalError = 3,
};

inline constexpr std::uint64_t kDefaultMaxCycles = 100'000;

/// Seed from CSLOW_SEED, else 0.
std::uint64_t default_seed();

/// Reads an assembly source (.s/.asm, assembled at origin 0) or an image file.
isa::MemoryImage load_program(const std::string& path);

struct AsmOptions {
  std::string input;
  std::string output;
  isa::Address origin = 0;
};

struct RunOptions {
  std::string image;
  std::uint64_t max_cycles = kDefaultMaxCycles;
  std::string trace_path;
  std::string dump_path;
};

/// Trace and dump paths get a `.t<i>` suffix per thread when C > 1.
struct RunCslowOptions {
  std::vector<std::string> inputs;
  std::optional<unsigned> c;
  std::optional<core::MemoryMode> mode;
  std::uint64_t max_cycles = kDefaultMaxCycles;
  std::string trace_path;
  std::string dump_path;
};

struct BenchOptions {
  std::vector<std::string> programs;
  std::vector<unsigned> c_values;
  core::MemoryMode mode = core::MemoryMode::Private;
  std::uint64_t seed = 0;
  std::uint64_t max_cycles = kDefaultMaxCycles;
  std::string out_path;
};

struct ThreadCountRow {
  unsigned n_threads = 0;
  std::uint64_t sequential_sum = 0;
  std::uint64_t cslow_rounds = 0;
  std::uint64_t fast_cycles_total = 0;
  core::Ratio speedup;
  std::vector<std::uint64_t> per_thread_cycles;
  double vertical_waste = 0.0;
};

struct BenchReport {
  core::MemoryMode mode = core::MemoryMode::Private;
  std::uint64_t seed = 0;
  std::vector<std::string> programs;
  std::vector<ThreadCountRow> rows;
};

/// Sequential-sum versus C-slow comparison for each requested thread count,
/// using the first n programs. Rows follow the order of `c_values`.
BenchReport run_bench(const BenchOptions& opts);
std::string bench_table(const BenchReport& report);
std::string bench_json(const BenchReport& report);

struct RetimeOptions {
  std::string netlist;
  std::optional<int> cslow;
  std::optional<int> pipeline;
  std::size_t check_trials = 0;
  std::size_t cycles = 256;
  std::uint64_t seed = 0;
  bool json = false;
  std::string lags_out;
  std::string netlist_out;
};

int cmd_asm(const AsmOptions& opts, std::ostream& out, std::ostream& err);
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_run_cslow(const RunCslowOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);
int cmd_retime(const RetimeOptions& opts, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cslow::cli
