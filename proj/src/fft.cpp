#include "gwpt/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

namespace gwpt {

namespace {
std::mutex& plan_mutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

Fft1D::Fft1D(int n) : n_(n) {
  if (n < 2) throw StageError(Stage::config, "fft size must be >= 2");
  std::vector<cplx> tmp(static_cast<std::size_t>(n));
  auto* buf = reinterpret_cast<fftw_complex*>(tmp.data());
  std::lock_guard<std::mutex> lock(plan_mutex());
  // FFTW_UNALIGNED: plans are executed later on arbitrary caller buffers.
  fwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!fwd_ || !bwd_) throw StageError(Stage::config, "fftw plan creation failed");
}

Fft1D::~Fft1D() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Fft1D::forward(cplx* data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), buf, buf);
}

void Fft1D::backward(cplx* data) const {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), buf, buf);
}

}  // namespace gwpt
