// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#ifndef TFW_FFT_HPP
#define TFW_FFT_HPP

#include <complex>
#include <vector>

namespace tfw::detail {

// Unnormalized 3-d complex DFTs on an n^3 grid, cyclic in each axis.
// forward uses the e^{-i 2 pi m.j / n} sign, backward the conjugate.
// Plans are cached per (n, sign) behind a mutex; execution is thread-safe.
void dft_forward(int n, const std::complex<double>* in, std::complex<double>* out);
void dft_backward(int n, const std::complex<double>* in, std::complex<double>* out);

} // namespace tfw::detail

#endif
