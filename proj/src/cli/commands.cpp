#include "cslow/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cslow/assembler.hpp"
#include "cslow/microcode.hpp"
#include "cslow/netlist.hpp"
#include "cslow/retime.hpp"

namespace cslow::cli {

using json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string thread_path(const std::string& base, unsigned t, unsigned c) {
  return c == 1 ? base : base + ".t" + std::to_string(t);
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const micro::CycleLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kSimulationLimit;
  } catch (const std::logic_error& e) {
    // invalid_argument derives from logic_error but signals bad input.
    if (dynamic_cast<const std::invalid_argument*>(&e)) {
      err << "error: " << e.what() << '\n';
      return kUsageError;
    }
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

std::string hex2(unsigned v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02x", v);
  return buf;
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CSLOW_SEED")) {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      throw UsageError(std::string("CSLOW_SEED is not a number: '") + env + "'");
    }
  }
  return 0;
}

isa::MemoryImage load_program(const std::string& path) {
  const std::string text = read_file(path);
  if (ends_with(path, ".s") || ends_with(path, ".asm")) return isa::assemble(text, 0);
  return isa::parse_image_text(text);
}

int cmd_asm(const AsmOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto result =
        isa::assemble_with_listing(isa::parse_source(read_file(opts.input)), opts.origin);
    for (const auto& entry : result.listing) {
      std::string words;
      for (auto w : entry.words) words += hex2(w) + ' ';
      words.resize(6, ' ');
      out << hex2(entry.address) << "  " << words << "  " << entry.source << '\n';
    }
    if (!opts.output.empty()) write_file(opts.output, isa::to_image_text(result.image));
    return kOk;
  });
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto image = load_program(opts.image);
    const auto result = micro::run(image, opts.max_cycles, !opts.trace_path.empty());
    const std::string summary = micro::format_summary(result.state, image, result.memory);
    out << summary;
    if (!opts.trace_path.empty()) write_file(opts.trace_path, micro::format_trace(result.trace));
    if (!opts.dump_path.empty()) write_file(opts.dump_path, summary);
    return kOk;
  });
}

namespace {

json metrics_json(const core::RunMetrics& m, std::uint64_t sequential_sum) {
  json j;
  j["c"] = m.c;
  j["mode"] = std::string(core::to_string(m.mode));
  j["per_thread_cycles"] = m.per_thread_cycles;
  j["rounds"] = m.rounds;
  j["fast_cycles_total"] = m.fast_cycles_total;
  j["occupancy"] = m.occupancy;
  j["vertical_waste"] = m.vertical_waste;
  j["horizontal_waste"] = m.horizontal_waste;
  j["sequential_sum"] = sequential_sum;
  const auto speedup = core::Ratio::of(sequential_sum, m.rounds);
  j["speedup"] = speedup.value();
  j["speedup_exact"] = std::to_string(speedup.num) + "/" + std::to_string(speedup.den);
  return j;
}

}  // namespace

int cmd_run_cslow(const RunCslowOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.inputs.empty()) throw UsageError("run-cslow: no images given");
    std::vector<isa::MemoryImage> images;
    unsigned c = 0;
    core::MemoryMode mode = core::MemoryMode::Private;

    const std::string first = read_file(opts.inputs.front());
    if (opts.inputs.size() == 1 && core::looks_like_bundle(first)) {
      auto bundle = core::parse_bundle(first);
      if ((opts.c && *opts.c != bundle.c) || (opts.mode && *opts.mode != bundle.mode)) {
        throw UsageError("run-cslow: flags contradict the bundle header");
      }
      images = std::move(bundle.images);
      c = bundle.c;
      mode = bundle.mode;
    } else {
      for (const auto& path : opts.inputs) images.push_back(load_program(path));
      c = opts.c.value_or(static_cast<unsigned>(images.size()));
      mode = opts.mode.value_or(core::MemoryMode::Private);
    }
    if (images.size() == 1 && c > 1) images.assign(c, images.front());
    if (images.size() != c) {
      throw UsageError("run-cslow: " + std::to_string(images.size()) + " images for C=" +
                       std::to_string(c));
    }

    core::CslowMachine machine({c, mode, opts.max_cycles * c}, images);
    if (!opts.trace_path.empty()) machine.enable_trace();
    const auto metrics = machine.run_all();

    for (unsigned t = 0; t < c; ++t) {
      if (!opts.trace_path.empty()) {
        write_file(thread_path(opts.trace_path, t, c), micro::format_trace(machine.trace(t)));
      }
      if (!opts.dump_path.empty()) {
        const auto& before = mode == core::MemoryMode::Shared ? images.front() : images[t];
        write_file(thread_path(opts.dump_path, t, c),
                   micro::format_summary(machine.context(t), before, machine.memory_image(t)));
      }
    }

    const auto sequential = core::sequential_baseline(images, opts.max_cycles);
    out << metrics_json(metrics, sequential).dump(2) << '\n';
    return kOk;
  });
}

BenchReport run_bench(const BenchOptions& opts) {
  if (opts.programs.empty()) throw UsageError("bench: no programs given");
  if (opts.c_values.empty()) throw UsageError("bench: no thread counts given");

  std::vector<isa::MemoryImage> images;
  for (const auto& path : opts.programs) images.push_back(load_program(path));

  std::vector<core::SweepJob> jobs;
  for (unsigned n : opts.c_values) {
    if (n < 1 || n > images.size()) {
      throw UsageError("bench: thread count " + std::to_string(n) + " needs " +
                       std::to_string(n) + " programs, have " + std::to_string(images.size()));
    }
    jobs.push_back({{images.begin(), images.begin() + n}, n, opts.mode, opts.max_cycles});
  }
  const auto results = core::sweep(jobs);

  BenchReport report;
  report.mode = opts.mode;
  report.seed = opts.seed;
  report.programs = opts.programs;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& r = results[i];
    report.rows.push_back({jobs[i].c, r.sequential_sum, r.max_rounds, r.fast_cycles, r.speedup,
                           r.metrics.per_thread_cycles, r.metrics.vertical_waste});
  }
  return report;
}

std::string bench_table(const BenchReport& report) {
  std::ostringstream out;
  out << "n_threads  sequential_sum  cslow_rounds  fast_cycles  speedup\n";
  char buf[128];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%9u  %14llu  %12llu  %11llu  %7.4f\n", row.n_threads,
                  static_cast<unsigned long long>(row.sequential_sum),
                  static_cast<unsigned long long>(row.cslow_rounds),
                  static_cast<unsigned long long>(row.fast_cycles_total), row.speedup.value());
    out << buf;
  }
  return out.str();
}

std::string bench_json(const BenchReport& report) {
  json j;
  j["mode"] = std::string(core::to_string(report.mode));
  j["seed"] = report.seed;
  j["programs"] = report.programs;
  j["rows"] = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["n_threads"] = row.n_threads;
    r["sequential_sum"] = row.sequential_sum;
    r["cslow_rounds"] = row.cslow_rounds;
    r["fast_cycles_total"] = row.fast_cycles_total;
    r["speedup"] = row.speedup.value();
    r["speedup_exact"] = std::to_string(row.speedup.num) + "/" + std::to_string(row.speedup.den);
    r["per_thread_cycles"] = row.per_thread_cycles;
    r["vertical_waste"] = row.vertical_waste;
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto report = run_bench(opts);
    out << bench_table(report);
    if (!opts.out_path.empty()) write_file(opts.out_path, bench_json(report));
    return kOk;
  });
}

int cmd_retime(const RetimeOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    using namespace cslow::retime;
    const Netlist original = net::parse_netlist(read_file(opts.netlist));
    const int c = opts.cslow.value_or(1);
    const int period_before = net::critical_path(original).period;

    const Netlist slowed = cslow_transform(original, c);
    Netlist final_netlist;
    Retiming lags;
    if (opts.pipeline) {
      auto piped = retime::pipeline(slowed, *opts.pipeline);
      final_netlist = std::move(piped.netlist);
      lags = std::move(piped.retiming);
    } else {
      auto rt = min_period_retime(slowed);
      lags = rt.retiming;
      final_netlist = apply_retiming(slowed, rt.retiming);
    }
    const int period_after = net::critical_path(final_netlist).period;
    const AreaModel area = area_report(original, final_netlist);

    std::optional<EquivalenceVerdict> verdict;
    std::size_t warmup = 0;
    if (opts.check_trials > 0) {
      EquivalenceOptions eq;
      eq.trials = opts.check_trials;
      eq.cycles = opts.cycles;
      eq.seed = opts.seed;
      if (c > 1) {
        verdict = check_cslow_equivalence(original, slowed, c, eq);
      }
      if (!verdict || verdict->pass) {
        const std::size_t k = static_cast<std::size_t>(opts.pipeline.value_or(0));
        warmup = retiming_warmup(slowed, final_netlist) + k;
        eq.warmup = warmup;
        eq.cycles = warmup + opts.cycles;
        eq.shift = k;
        verdict = check_equivalence(slowed, final_netlist, eq);
      }
      verdict->warmup = warmup;
    }

    if (!opts.lags_out.empty()) write_file(opts.lags_out, to_text(final_netlist, lags));
    if (!opts.netlist_out.empty()) write_file(opts.netlist_out, net::to_text(final_netlist));

    if (opts.json) {
      json j;
      j["period_before"] = period_before;
      j["period_after"] = period_after;
      j["c"] = c;
      j["pipeline"] = opts.pipeline.value_or(0);
      j["registers_before"] = area.registers_before;
      j["registers_after"] = area.registers_after;
      j["gates"] = area.gates;
      j["ratio"] = area.ratio;
      j["equivalence"] = verdict ? (verdict->pass ? "PASS" : "FAIL") : "SKIPPED";
      j["warmup"] = warmup;
      j["reference_fpga_slice_registers"] = {
          {"simple", ReferenceSynthesisDatum::kSimpleSliceRegisters},
          {"three_slow", ReferenceSynthesisDatum::kThreeSlowSliceRegisters},
          {"ratio", ReferenceSynthesisDatum::ratio()},
          {"note", "measured synthesis datum; annotation only, not a model output"}};
      out << j.dump(2) << '\n';
    } else {
      char buf[160];
      out << "period " << period_before << " -> " << period_after << '\n';
      out << "registers " << area.registers_before << " -> " << area.registers_after << '\n';
      std::snprintf(buf, sizeof buf, "gates %zu, register ratio %.3f\n", area.gates, area.ratio);
      out << buf;
      std::snprintf(buf, sizeof buf,
                    "reference: measured FPGA 3-slow slice registers %ld -> %ld (ratio %.2f), "
                    "not modeled\n",
                    ReferenceSynthesisDatum::kSimpleSliceRegisters,
                    ReferenceSynthesisDatum::kThreeSlowSliceRegisters,
                    ReferenceSynthesisDatum::ratio());
      out << buf;
      if (verdict) {
        out << "equivalence " << (verdict->pass ? "PASS" : "FAIL") << " trials "
            << verdict->trials_run << " cycles " << opts.cycles << " warmup " << warmup << '\n';
        if (!verdict->pass) {
          out << "  first mismatch: trial " << verdict->trial << " cycle " << verdict->cycle
              << " output " << verdict->output << '\n';
        }
      }
    }
    return verdict && !verdict->pass ? kInternalError : kOk;
  });
}

namespace {

std::optional<long> parse_literal(const std::string& s) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used, 0);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"C-slow accumulator processor simulator and retiming engine", "cslow"};
  app.require_subcommand(1);

  AsmOptions asm_opts;
  std::string origin_text = "0";
  auto* asm_cmd = app.add_subcommand("asm", "Assemble a source file into a memory image");
  asm_cmd->add_option("input", asm_opts.input, "Assembly source")->required();
  asm_cmd->add_option("-o,--output", asm_opts.output, "Memory-image file to write");
  asm_cmd->add_option("--origin", origin_text, "Placement origin (decimal or 0x-hex)");

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Run one program on the single-thread core");
  run_cmd->add_option("image", run_opts.image, "Memory image or assembly source")->required();
  run_cmd->add_option("--max-cycles", run_opts.max_cycles, "Cycle limit");
  run_cmd->add_option("--trace", run_opts.trace_path, "Write a per-cycle trace file");
  run_cmd->add_option("--dump", run_opts.dump_path, "Write the final-state summary to a file");

  RunCslowOptions cs_opts;
  unsigned c_flag = 0;
  std::string mode_flag;
  auto* cs_cmd = app.add_subcommand("run-cslow", "Run C threads on the C-slow barrel machine");
  cs_cmd->add_option("inputs", cs_opts.inputs, "Bundle file, or one image/source per thread")
      ->required();
  cs_cmd->add_option("--c", c_flag, "Thread count C (1-8)");
  cs_cmd->add_option("--mode", mode_flag, "Memory mode: private, shared, tagged");
  cs_cmd->add_option("--max-cycles", cs_opts.max_cycles, "Per-thread cycle limit");
  cs_cmd->add_option("--trace", cs_opts.trace_path, "Per-thread trace files (.t<i> when C>1)");
  cs_cmd->add_option("--dump", cs_opts.dump_path, "Per-thread final-state summaries");

  BenchOptions bench_opts;
  std::string bench_mode = "private";
  std::optional<std::uint64_t> bench_seed;
  auto* bench_cmd = app.add_subcommand("bench", "Sequential sum vs C-slow rounds per thread count");
  bench_cmd->add_option("programs", bench_opts.programs, "Programs, in thread-slot order");
  bench_cmd->add_option("--c", bench_opts.c_values, "Thread counts to evaluate")->delimiter(',');
  bench_cmd->add_option("--mode", bench_mode, "Memory mode");
  bench_cmd->add_option("--seed", bench_seed, "Seed recorded in the report");
  bench_cmd->add_option("--max-cycles", bench_opts.max_cycles, "Per-program cycle limit");
  bench_cmd->add_option("--out", bench_opts.out_path, "Write the JSON report here");

  RetimeOptions rt_opts;
  std::optional<std::uint64_t> rt_seed;
  auto* rt_cmd = app.add_subcommand("retime", "C-slow, pipeline and min-period retiming");
  rt_cmd->add_option("netlist", rt_opts.netlist, "Netlist file")->required();
  rt_cmd->add_option("--cslow", rt_opts.cslow, "Multiply every register by C");
  rt_cmd->add_option("--pipeline", rt_opts.pipeline, "Add k input registers (feed-forward only)");
  rt_cmd->add_option("--check", rt_opts.check_trials, "Equivalence trials (0 = skip)");
  rt_cmd->add_option("--cycles", rt_opts.cycles, "Cycles per equivalence trial");
  rt_cmd->add_option("--seed", rt_seed, "Stimulus seed (default CSLOW_SEED or 0)");
  rt_cmd->add_flag("--json", rt_opts.json, "Print the JSON report instead of text");
  rt_cmd->add_option("--lags", rt_opts.lags_out, "Write the retiming file");
  rt_cmd->add_option("--emit", rt_opts.netlist_out, "Write the transformed netlist");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  if (*asm_cmd) {
    auto origin = parse_literal(origin_text);
    if (!origin || *origin < 0 || *origin > 255) {
      err << "error: bad origin '" << origin_text << "'\n";
      return kUsageError;
    }
    asm_opts.origin = static_cast<isa::Address>(*origin);
    return cmd_asm(asm_opts, out, err);
  }
  if (*run_cmd) return cmd_run(run_opts, out, err);
  if (*cs_cmd) {
    if (c_flag != 0) cs_opts.c = c_flag;
    if (!mode_flag.empty()) {
      cs_opts.mode = core::parse_memory_mode(mode_flag);
      if (!cs_opts.mode) {
        err << "error: unknown mode '" << mode_flag << "'\n";
        return kUsageError;
      }
    }
    return cmd_run_cslow(cs_opts, out, err);
  }
  return guarded(err, [&] {
    if (*bench_cmd) {
      auto mode = core::parse_memory_mode(bench_mode);
      if (!mode) throw UsageError("unknown mode '" + bench_mode + "'");
      bench_opts.mode = *mode;
      bench_opts.seed = bench_seed.value_or(default_seed());
      if (bench_opts.c_values.empty()) {
        for (unsigned n = 1; n <= bench_opts.programs.size(); ++n) bench_opts.c_values.push_back(n);
      }
      return cmd_bench(bench_opts, out, err);
    }
    rt_opts.seed = rt_seed.value_or(default_seed());
    return cmd_retime(rt_opts, out, err);
  });
}

}  // namespace cslow::cli
