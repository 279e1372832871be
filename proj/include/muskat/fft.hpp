#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace muskat {

// Thin wrapper over FFTW's 2D real transforms. Plans are cached per grid
// size and created once under a lock; execution uses the new-array
// interface, which is safe to call from multiple threads. All plans use
// FFTW_ESTIMATE, so planning is deterministic and never reads the arrays.
class FftEngine {
public:
  static FftEngine& instance() {
    static FftEngine e;
    return e;
  }

  // values (n*n reals) -> half spectrum (n*(n/2+1) complex), unnormalized DFT.
  // Out-of-place r2c leaves the input untouched.
  void forward(int n, const double* in, std::complex<double>* out) {
    Plan& p = plans(n);
    fftw_execute_dft_r2c(p.fwd, const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
  }

  // half spectrum -> values; the input array is clobbered (FFTW c2r).
  void inverse_destructive(int n, std::complex<double>* in, double* out) {
    Plan& p = plans(n);
    fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(in), out);
  }

  // half spectrum -> values with the input preserved (copies to scratch).
  void inverse(int n, const std::complex<double>* in, double* out) {
    scratch_.assign(in, in + spectral_size(n));
    inverse_destructive(n, scratch_.data(), out);
  }

  static size_t spectral_size(int n) {
    return static_cast<size_t>(n) * (n / 2 + 1);
  }

  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

private:
  struct Plan {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
  };

  FftEngine() = default;

  Plan& plans(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    if (n < 2 || (n & (n - 1)) != 0)
      throw std::invalid_argument("FftEngine: grid size must be a power of two >= 2");
    std::vector<double> r(static_cast<size_t>(n) * n);
    std::vector<std::complex<double>> c(spectral_size(n));
    Plan p;
    p.fwd = fftw_plan_dft_r2c_2d(n, n, r.data(),
                                 reinterpret_cast<fftw_complex*>(c.data()),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_c2r_2d(n, n,
                                 reinterpret_cast<fftw_complex*>(c.data()),
                                 r.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw std::runtime_error("FftEngine: planner failed");
    return plans_.emplace(n, p).first->second;
  }

  std::mutex mu_;
  std::map<int, Plan> plans_;
  static thread_local std::vector<std::complex<double>> scratch_;
};

inline thread_local std::vector<std::complex<double>> FftEngine::scratch_;

}  // namespace muskat
