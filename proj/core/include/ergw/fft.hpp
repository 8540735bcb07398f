#pragma once

#include <complex>
#include <vector>

namespace ergw::fft {

// In-place unnormalized discrete Fourier transform of arbitrary length
// (FFTW behind the scenes; plan creation serialized, execution thread-safe).
//   forward:  X[j] = sum_r x[r] e^{-2 pi i r j / G}
//   backward: X[j] = sum_r x[r] e^{+2 pi i r j / G}
void transform(std::vector<std::complex<double>>& data, bool backward);

inline void forward(std::vector<std::complex<double>>& data) { transform(data, false); }
inline void backward(std::vector<std::complex<double>>& data) { transform(data, true); }

}  // namespace ergw::fft
