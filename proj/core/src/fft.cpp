#include "parawave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace parawave::detail {

namespace {

// FFTW plans are not thread-safe to create; execution via the new-array
// interface is. Plans are cached per (dim, n, sign) and created with
// FFTW_ESTIMATE so planning is deterministic and cheap.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_tuple(dim, n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t size = static_cast<std::size_t>(n);
    if (dim == 2) size *= static_cast<std::size_t>(n);
    fftw_complex* buf = fftw_alloc_complex(size);
    fftw_plan plan =
        dim == 1 ? fftw_plan_dft_1d(n, buf, buf, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED)
                 : fftw_plan_dft_2d(n, n, buf, buf, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const Grid& grid, int sign, std::vector<std::complex<double>>& buf) {
  fftw_plan plan = PlanCache::instance().get(grid.dim(), grid.n(), sign);
  auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(plan, raw, raw);
}

}  // namespace

std::vector<std::complex<double>> fft_forward(const Grid& grid,
                                              const std::vector<double>& in) {
  std::vector<std::complex<double>> buf(in.begin(), in.end());
  execute(grid, FFTW_FORWARD, buf);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : buf) c *= scale;
  return buf;
}

std::vector<std::complex<double>> fft_forward_complex(
    const Grid& grid, const std::vector<std::complex<double>>& in) {
  std::vector<std::complex<double>> buf(in);
  execute(grid, FFTW_FORWARD, buf);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : buf) c *= scale;
  return buf;
}

std::vector<std::complex<double>> fft_inverse_complex(
    const Grid& grid, const std::vector<std::complex<double>>& in) {
  std::vector<std::complex<double>> buf(in);
  execute(grid, FFTW_BACKWARD, buf);
  return buf;
}

std::vector<double> fft_inverse(const Grid& grid,
                                const std::vector<std::complex<double>>& in) {
  auto buf = fft_inverse_complex(grid, in);
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

}  // namespace parawave::detail
