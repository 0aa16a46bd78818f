#include "hypvol/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hypvol {

int thread_count() {
  if (const char* env = std::getenv("HYPVOL_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

double pairwise(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise(x, h) + pairwise(x + h, n - h);
}

}  // namespace

double pairwise_sum(const std::vector<double>& xs) { return pairwise(xs.data(), xs.size()); }

}  // namespace hypvol
