#include "fft.hpp"

namespace decoh::detail {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<std::complex<double>> buf;
};

PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    PlanPair p;
    p.buf.resize(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(p.buf.data());
    p.fwd = fftw_plan_dft_1d(n, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(n, ptr, ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
    it = cache.emplace(n, std::move(p)).first;
  }
  return it->second;
}

}  // namespace

void Fft1d::run(std::complex<double>* data, int n, int sign) {
  PlanPair& p = plans_for(n);
  std::copy(data, data + n, p.buf.begin());
  auto* ptr = reinterpret_cast<fftw_complex*>(p.buf.data());
  fftw_execute_dft(sign == FFTW_FORWARD ? p.fwd : p.bwd, ptr, ptr);
  std::copy(p.buf.begin(), p.buf.end(), data);
}

}  // namespace decoh::detail
