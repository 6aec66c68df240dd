#pragma once

#include <span>

#include "xgewfi/dataset.hpp"
#include "xgewfi/iqr.hpp"
#include "xgewfi/knn_impute.hpp"

// Naive single-threaded implementations of the optimized kernels. They
// share no code with the fast paths; the test and benchmark targets
// compare the two route by route.
namespace xgewfi::reference {

// Supremum of |ECDF_a - ECDF_b|, evaluated by counting at every pooled
// sample point.
double ks_statistic(std::span<const double> a, std::span<const double> b);

// Direct evaluation of 2 * sum (-1)^{j-1} exp(-2 j^2 lambda^2), stopping
// once a term falls below 1e-12.
double kolmogorov_series(double lambda);

// Interpolated quantile at position q * (n - 1) of the sorted copy.
double quantile(std::span<const double> values, double q);

IqrFences fences(std::span<const double> values);

// Per-cell nearest-neighbor mean imputation: recomputes the masked
// distance for every candidate row and sorts the full candidate list.
ImputeResult impute_knn(const Dataset& ds, const ImputeConfig& cfg);

}  // namespace xgewfi::reference
