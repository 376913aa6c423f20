// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace tfw::detail {

namespace {

std::mutex plan_mutex;

fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // FFTW_UNALIGNED so the plan can execute on any caller-provided buffer.
  std::vector<std::complex<double>> scratch(std::size_t(n) * n * n);
  fftw_plan p = fftw_plan_dft_3d(n, n, n,
                                 reinterpret_cast<fftw_complex*>(scratch.data()),
                                 reinterpret_cast<fftw_complex*>(scratch.data()),
                                 sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

void execute(int n, int sign, const std::complex<double>* in, std::complex<double>* out) {
  fftw_plan p = plan_for(n, sign);
  // in-place or out-of-place both fine for c2c with new-array execute
  fftw_execute_dft(p,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

} // namespace

void dft_forward(int n, const std::complex<double>* in, std::complex<double>* out) {
  execute(n, FFTW_FORWARD, in, out);
}

void dft_backward(int n, const std::complex<double>* in, std::complex<double>* out) {
  execute(n, FFTW_BACKWARD, in, out);
}

} // namespace tfw::detail
