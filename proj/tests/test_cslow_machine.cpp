#include <doctest.h>

#include <numeric>
#include <random>

#include "cslow/assembler.hpp"
#include "cslow/cslow_machine.hpp"
#include "oracles/program_gen.hpp"

using namespace cslow;
using core::CslowMachine;
using core::MemoryMode;

namespace {

std::vector<isa::MemoryImage> copies(const isa::MemoryImage& img, unsigned c) {
  return std::vector<isa::MemoryImage>(c, img);
}

}  // namespace

TEST_CASE("round-robin order") {
  CslowMachine m({3, MemoryMode::Private}, copies(isa::assemble("HALT\n"), 3));
  for (unsigned tick = 0; tick < 9; ++tick) {
    CHECK(m.thread_counter() == tick % 3);
    m.tick();
  }
  for (unsigned t = 0; t < 3; ++t) CHECK(m.context(t).cycles == 3);
}

TEST_CASE("halted threads idle and keep their cycle count") {
  const auto short_prog = isa::assemble("HALT\n");
  const auto long_prog = isa::assemble("CMA\nCMA\nHALT\n");
  CslowMachine m({2, MemoryMode::Private}, {short_prog, long_prog});
  const auto metrics = m.run_all();
  CHECK(metrics.per_thread_cycles == std::vector<std::uint64_t>{8, 20});
  CHECK(metrics.rounds == 20);
  // Thread 1 finishes on tick 2*19+1, i.e. after 40 fast cycles.
  CHECK(metrics.fast_cycles_total == 40);
  CHECK(metrics.idle_ticks == 40 - 8 - 20);
  CHECK(metrics.vertical_waste == doctest::Approx(12.0 / 40.0));
  CHECK(metrics.occupancy == doctest::Approx(28.0 / 40.0));
  CHECK(metrics.horizontal_waste == 0.0);
  CHECK(m.context(0).cycles == 8);
}

TEST_CASE("two identical CMA/HALT threads") {
  const auto img = isa::assemble("CMA\nHALT\n");
  const auto cmp = core::compare({img, img}, 2, MemoryMode::Private);
  CHECK(cmp.metrics.per_thread_cycles == std::vector<std::uint64_t>{14, 14});
  CHECK(cmp.sequential_sum == 28);
  CHECK(cmp.max_rounds == 14);
  CHECK(cmp.speedup == core::Ratio{2, 1});
}

TEST_CASE("tagged stores land in the thread's partition") {
  const auto img = isa::assemble("LOAD V\nSTO 0x10\nHALT\nV: .word 0x5a\n");
  CslowMachine m({2, MemoryMode::Tagged}, {isa::MemoryImage{}, img});
  m.run_all();
  CHECK(m.memory_image(1)[0x10] == 0x5a);
  CHECK(m.memory_image(0)[0x10] == 0x00);
  CHECK(m.view(1).data() - m.view(0).data() == 256);
}

TEST_CASE("shared memory is visible to every thread") {
  const auto img = isa::assemble("LOAD ONE\nSTO 0x80\nHALT\nONE: .word 1\n");
  CslowMachine s({4, MemoryMode::Shared}, {img});
  s.run_all();
  for (unsigned t = 0; t < 4; ++t) CHECK(s.memory_image(t)[0x80] == 1);
  CHECK(s.view(0).data() == s.view(3).data());

  // Every thread reads the counter before any writes it back.
  const auto race = isa::assemble("LOAD N\nINCA\nSTO N\nHALT\nN: .word 0\n");
  CslowMachine r({3, MemoryMode::Shared}, {race});
  r.run_all();
  CHECK(r.memory_image(0)[6] == 1);
}

TEST_CASE("construction errors") {
  const auto img = isa::assemble("HALT\n");
  CHECK_THROWS_AS(CslowMachine({0, MemoryMode::Private}, {}), core::BadThreadCount);
  CHECK_THROWS_AS(CslowMachine({9, MemoryMode::Private}, copies(img, 9)), core::BadThreadCount);
  CHECK_THROWS_AS(CslowMachine({3, MemoryMode::Private}, copies(img, 2)), core::ImageMismatch);
  CHECK_THROWS_AS(CslowMachine({2, MemoryMode::Shared}, {img, isa::assemble("CMA\nHALT\n")}),
                  core::ImageMismatch);
  CHECK_NOTHROW(CslowMachine({2, MemoryMode::Shared}, {img}));
}

TEST_CASE("runaway threads are named") {
  const auto loop = isa::assemble("L: LOAD ONE\nSUB ONE\nJOZ L\nHALT\nONE: .word 1\n");
  CslowMachine m({2, MemoryMode::Private, 5'000}, {isa::assemble("HALT\n"), loop});
  try {
    m.run_all();
    FAIL("expected limit");
  } catch (const micro::CycleLimitExceeded& e) {
    CHECK(std::string(e.what()).find("thread(s) 1") != std::string::npos);
  }
}

TEST_CASE("property: C=1 equals the baseline core") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto img = isa::assemble(oracle::random_program(rng));
    const auto base = micro::run(img, 100'000, true);
    for (MemoryMode mode : {MemoryMode::Private, MemoryMode::Shared, MemoryMode::Tagged}) {
      CslowMachine m({1, mode}, {img});
      m.enable_trace();
      const auto metrics = m.run_all();
      CHECK(metrics.per_thread_cycles[0] == base.state.cycles);
      CHECK(metrics.idle_ticks == 0);
      CHECK(m.context(0) == base.state);
      CHECK(m.memory_image(0) == base.memory);
      CHECK(micro::format_trace(m.trace(0)) == micro::format_trace(base.trace));
    }
  }
}

TEST_CASE("property: interleaving does not change per-thread behaviour") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    for (unsigned c : {2u, 3u, 4u, 8u}) {
      std::vector<isa::MemoryImage> imgs;
      for (unsigned t = 0; t < c; ++t) imgs.push_back(isa::assemble(oracle::random_program(rng)));
      for (MemoryMode mode : {MemoryMode::Private, MemoryMode::Tagged}) {
        CslowMachine m({c, mode}, imgs);
        m.enable_trace();
        const auto metrics = m.run_all();
        std::uint64_t busy = 0;
        for (unsigned t = 0; t < c; ++t) {
          const auto base = micro::run(imgs[t], 100'000, true);
          REQUIRE(micro::format_trace(m.trace(t)) == micro::format_trace(base.trace));
          CHECK(m.memory_image(t) == base.memory);
          CHECK(metrics.per_thread_cycles[t] == base.state.cycles);
          busy += base.state.cycles;
        }
        // Every tick either steps a thread or idles.
        CHECK(busy + metrics.idle_ticks == metrics.fast_cycles_total);
        CHECK(metrics.fast_cycles_total > c * (metrics.rounds - 1));
        CHECK(metrics.fast_cycles_total <= c * metrics.rounds);
      }
    }
  }
}

TEST_CASE("property: shared mode is deterministic") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto img = isa::assemble(oracle::random_program(rng));
    const unsigned c = 2 + static_cast<unsigned>(rng() % 7);
    auto run_once = [&] {
      CslowMachine m({c, MemoryMode::Shared, 2'000'000}, {img});
      m.enable_trace();
      try {
        m.run_all();
      } catch (const micro::CycleLimitExceeded&) {
        // Threads can undo each other's counters; the outcome must still repeat.
      }
      std::string all;
      for (unsigned t = 0; t < c; ++t) all += micro::format_trace(m.trace(t));
      return std::pair{all, m.memory_image(0)};
    };
    CHECK(run_once() == run_once());
  }
}

TEST_CASE("bundle format") {
  const auto a = isa::assemble("HALT\n");
  const auto b = isa::assemble("CMA\nHALT\n");
  const core::Bundle bundle{2, MemoryMode::Tagged, {a, b}};
  const auto text = core::to_bundle_text(bundle);
  CHECK(text.rfind("cslow-bundle C=2 mode=tagged\n", 0) == 0);
  CHECK(core::looks_like_bundle(text));
  CHECK_FALSE(core::looks_like_bundle(isa::to_image_text(a)));
  const auto back = core::parse_bundle(text);
  CHECK(back.c == 2);
  CHECK(back.mode == MemoryMode::Tagged);
  CHECK(back.images == bundle.images);

  CHECK_THROWS_AS(core::parse_bundle("cslow-bundle C=3 mode=private\n" + isa::to_image_text(a)),
                  std::invalid_argument);
  CHECK_THROWS_AS(core::parse_bundle("cslow-bundle C=1 mode=weird\n" + isa::to_image_text(a)),
                  std::invalid_argument);
  CHECK_NOTHROW(core::parse_bundle("cslow-bundle C=4 mode=shared\n" + isa::to_image_text(a)));
}

TEST_CASE("sweep matches the serial reference") {
  std::mt19937_64 rng(43);
  std::vector<core::SweepJob> jobs;
  for (int j = 0; j < 24; ++j) {
    core::SweepJob job;
    job.c = 1 + static_cast<unsigned>(j % 8);
    job.mode = j % 3 == 0 ? MemoryMode::Tagged : MemoryMode::Private;
    for (unsigned t = 0; t < job.c; ++t) job.images.push_back(isa::assemble(oracle::random_program(rng)));
    jobs.push_back(std::move(job));
  }
  const auto par = core::sweep(jobs);
  const auto ser = core::sweep_serial(jobs);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].sequential_sum == ser[i].sequential_sum);
    CHECK(par[i].max_rounds == ser[i].max_rounds);
    CHECK(par[i].fast_cycles == ser[i].fast_cycles);
    CHECK(par[i].speedup == ser[i].speedup);
    CHECK(par[i].metrics.per_thread_cycles == ser[i].metrics.per_thread_cycles);
  }

  jobs.push_back({{}, 2, MemoryMode::Private, 100});
  CHECK_THROWS_AS(core::sweep(jobs), core::ImageMismatch);
}

TEST_CASE("speedup of identical threads is C") {
  const auto img = isa::assemble("LOAD X\nADD X\nSTO X\nHALT\nX: .word 5\n");
  for (unsigned c = 1; c <= core::kMaxThreads; ++c) {
    const auto cmp = core::compare(copies(img, c), c, MemoryMode::Private);
    CHECK(cmp.speedup == core::Ratio{c, 1});
    CHECK(cmp.metrics.idle_ticks == 0);
  }
}
