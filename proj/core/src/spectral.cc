#include "snnlab/spectral.h"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "snnlab/error.h"

namespace snnlab {

namespace {

// FFTW planning is not thread-safe; executing an existing plan on new
// arrays is. Plans are cached per length for the process lifetime.
std::mutex plan_mutex;

fftw_plan PlanFor(int n) {
  static std::map<int, fftw_plan> plans;
  std::lock_guard lock(plan_mutex);
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  fftw_plan plan =
      fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
  fftw_free(in);
  fftw_free(out);
  plans.emplace(n, plan);
  return plan;
}

}  // namespace

std::vector<std::complex<double>> RealDft(std::span<const double> signal) {
  if (signal.empty()) throw InvalidArgument("RealDft: empty signal");
  const int n = static_cast<int>(signal.size());
  fftw_plan plan = PlanFor(n);
  std::vector<double> in(signal.begin(), signal.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(plan, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace snnlab
