#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace fracwave::detail {
namespace {

// The FFTW planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Plan {
  int size = 0;
  fftw_complex* buffer = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Plan(int n) : size(n) {
    std::lock_guard lock(planner_mutex());
    buffer = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n)));
    if (buffer == nullptr) throw std::bad_alloc();
    forward = fftw_plan_dft_1d(n, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(n, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(buffer);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
};

Plan& plan_for(int n) {
  thread_local std::map<int, std::unique_ptr<Plan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Plan>(n);
  return *slot;
}

}  // namespace

void dft(std::span<std::complex<double>> data, int sign) {
  if (data.empty()) return;
  if (sign != 1 && sign != -1) throw std::invalid_argument("dft: sign must be +1 or -1");
  auto& plan = plan_for(static_cast<int>(data.size()));
  std::memcpy(plan.buffer, data.data(), sizeof(fftw_complex) * data.size());
  fftw_execute(sign > 0 ? plan.backward : plan.forward);
  std::memcpy(static_cast<void*>(data.data()), plan.buffer, sizeof(fftw_complex) * data.size());
}

}  // namespace fracwave::detail
