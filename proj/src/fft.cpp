#include "longwave/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace lw {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Cached FFTW machinery for one transform size.  Plans are created with
// FFTW_ESTIMATE so the chosen algorithm (and hence round-off) is identical
// from run to run.  Each thread owns its workspace; plan creation and
// destruction are global state in FFTW and therefore serialized.
struct Workspace {
  std::size_t n = 0;
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Workspace(std::size_t n_) : n(n_) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    real = fftw_alloc_real(n);
    cplx = fftw_alloc_complex(n / 2 + 1);
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, cplx, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), cplx, real, FFTW_ESTIMATE);
  }
  ~Workspace() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real);
    fftw_free(cplx);
  }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;
};

Workspace& workspace_for(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Workspace>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Workspace>(n)).first;
  return *it->second;
}

}  // namespace

Spectrum fft(const Field& f) {
  const std::size_t n = f.grid.n;
  Workspace& ws = workspace_for(n);
  std::memcpy(ws.real, f.v.data(), n * sizeof(double));
  fftw_execute(ws.fwd);
  Spectrum s(f.grid);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < s.c.size(); ++j)
    s.c[j] = std::complex<double>(ws.cplx[j][0] * scale, ws.cplx[j][1] * scale);
  return s;
}

Field ifft(const Spectrum& s) {
  const std::size_t n = s.grid.n;
  Workspace& ws = workspace_for(n);
  for (std::size_t j = 0; j < s.c.size(); ++j) {
    ws.cplx[j][0] = s.c[j].real();
    ws.cplx[j][1] = s.c[j].imag();
  }
  // A real signal has real bin 0 and Nyquist entries; drop any stray
  // imaginary residue so the c2r transform sees consistent data.
  ws.cplx[0][1] = 0.0;
  ws.cplx[n / 2][1] = 0.0;
  fftw_execute(ws.bwd);
  Field f(s.grid);
  std::memcpy(f.v.data(), ws.real, n * sizeof(double));
  return f;
}

}  // namespace lw
