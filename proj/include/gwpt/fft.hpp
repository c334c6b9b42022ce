#pragma once

#include "gwpt/util.hpp"

namespace gwpt {

// In-place complex-to-complex FFT handle. Plan creation and destruction are
// serialized internally (FFTW requirement); execution is safe from any
// thread, but callers must not share one instance across threads since the
// plans are executed on caller buffers without further locking.
class Fft1D {
public:
  explicit Fft1D(int n);
  ~Fft1D();
  Fft1D(const Fft1D&) = delete;
  Fft1D& operator=(const Fft1D&) = delete;

  int size() const { return n_; }
  void forward(cplx* data) const;   // unnormalized
  void backward(cplx* data) const;  // unnormalized; scale by 1/n yourself

  // Fourier mode m for array index j (m = j for j <= n/2, else j - n).
  int mode(int j) const { return j <= n_ / 2 ? j : j - n_; }

private:
  int n_;
  void* fwd_;
  void* bwd_;
};

}  // namespace gwpt
