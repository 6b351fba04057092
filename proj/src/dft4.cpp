#include "stlcst/dft4.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace stlcst {

namespace {

// Plans are created once per (dims, sign) with FFTW_ESTIMATE for run-to-run
// determinism, then reused via the new-array execute interface.
std::mutex g_plan_mutex;
std::map<std::pair<std::array<int, 4>, int>, fftw_plan> g_plans;

fftw_plan plan_for(const std::array<int, 4>& n, int sign) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  const auto key = std::make_pair(n, sign);
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second;

  const std::size_t total =
      static_cast<std::size_t>(n[0]) * n[1] * n[2] * n[3];
  fftw_complex* scratch = fftw_alloc_complex(total);
  if (scratch == nullptr) throw std::bad_alloc();
  fftw_plan plan = fftw_plan_dft(4, n.data(), scratch, scratch,
                                 sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  if (plan == nullptr) throw std::runtime_error("dft4: FFTW plan creation failed");
  g_plans.emplace(key, plan);
  return plan;
}

}  // namespace

void dft4_inplace(std::complex<double>* data, const std::array<int, 4>& n, int sign) {
  fftw_plan plan = plan_for(n, sign);
  fftw_complex* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, raw, raw);
}

}  // namespace stlcst
