#include <exception>

#include "cslow/cslow_machine.hpp"

namespace cslow::core {

std::vector<Comparison> sweep_serial(const std::vector<SweepJob>& jobs) {
  std::vector<Comparison> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs) out.push_back(compare(job.images, job.c, job.mode, job.max_cycles));
  return out;
}

std::vector<Comparison> sweep(const std::vector<SweepJob>& jobs) {
  const auto n = static_cast<std::ptrdiff_t>(jobs.size());
  std::vector<Comparison> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const SweepJob& job = jobs[i];
      out[i] = compare(job.images, job.c, job.mode, job.max_cycles);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace cslow::core
