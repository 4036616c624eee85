#pragma once

// Thin FFTW wrapper: cached plans for 1D complex transforms of a given size.
// Single-threaded; plans are created with FFTW_ESTIMATE so input buffers are
// not clobbered at plan time.

#include <algorithm>
#include <complex>
#include <map>
#include <vector>

#include <fftw3.h>

namespace decoh::detail {

class Fft1d {
 public:
  // sign: FFTW_FORWARD (-1) or FFTW_BACKWARD (+1). No normalization applied.
  static void run(std::complex<double>* data, int n, int sign);
};

}  // namespace decoh::detail
