#include "xgewfi/ks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "xgewfi/errors.hpp"

namespace xgewfi {

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) {
        return 1.0;
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1;; ++j) {
        const double term = std::exp(-2.0 * static_cast<double>(j) * static_cast<double>(j) *
                                     lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-12) {
            break;
        }
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> original, std::span<const double> generated) {
    if (original.empty() || generated.empty()) {
        throw DataError("ks_two_sample: empty sample");
    }
    std::vector<double> a(original.begin(), original.end());
    std::vector<double> b(generated.begin(), generated.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    const auto n = static_cast<double>(a.size());
    const auto m = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() || j < b.size()) {
        double x;
        if (i < a.size() && j < b.size()) {
            x = std::min(a[i], b[j]);
        } else if (i < a.size()) {
            x = a[i];
        } else {
            x = b[j];
        }
        while (i < a.size() && a[i] == x) {
            ++i;
        }
        while (j < b.size() && b[j] == x) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }

    KsResult result;
    result.d_statistic = d;
    result.n_original = a.size();
    result.n_generated = b.size();
    result.p_value = kolmogorov_survival(d * std::sqrt(n * m / (n + m)));
    return result;
}

}  // namespace xgewfi
