#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nsho::util {

// Number of worker threads for grid sweeps: NSHO_THREADS, default 1.
int thread_count();

// Static partition of [0, n) across thread_count() workers; the body must
// write only to its own slots.
void parallel_for(long n, const std::function<void(long)>& body);

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

// least-squares slope of y against x
double fitted_slope(std::span<const double> x, std::span<const double> y);

std::vector<double> log_spaced(double lo, double hi, int n);

}  // namespace nsho::util
