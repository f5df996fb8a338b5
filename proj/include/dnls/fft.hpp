#pragma once

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "core.hpp"

namespace dnls::fft {

namespace detail {

// FFTW plan creation is not thread safe; execution on a plan's own buffer is,
// as long as each plan is used by one thread at a time.  Plans are cached per
// thread and created under a global lock.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Plans {
  int n = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Plans(int size) : n(size) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf = fftw_alloc_complex(static_cast<size_t>(n));
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

inline Plans& plans_for(int n) {
  thread_local std::map<int, std::unique_ptr<Plans>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, std::make_unique<Plans>(n)).first;
  return *it->second;
}

inline void run(const std::vector<cplx>& in, std::vector<cplx>& out, bool forward_dir) {
  const int n = static_cast<int>(in.size());
  Plans& p = plans_for(n);
  static_assert(sizeof(cplx) == sizeof(fftw_complex));
  std::memcpy(static_cast<void*>(p.buf), static_cast<const void*>(in.data()),
              sizeof(cplx) * in.size());
  fftw_execute(forward_dir ? p.fwd : p.bwd);
  out.resize(in.size());
  std::memcpy(static_cast<void*>(out.data()), static_cast<const void*>(p.buf),
              sizeof(cplx) * in.size());
}

}  // namespace detail

// out_k = sum_j in_j e^{-2 pi i jk/n}  (unnormalized)
inline void forward(const std::vector<cplx>& in, std::vector<cplx>& out) {
  detail::run(in, out, true);
}

// out_j = sum_k in_k e^{+2 pi i jk/n}  (unnormalized)
inline void backward(const std::vector<cplx>& in, std::vector<cplx>& out) {
  detail::run(in, out, false);
}

}  // namespace dnls::fft
