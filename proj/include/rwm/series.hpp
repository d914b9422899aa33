#pragma once

#include <vector>

#include "rwm/numeric.hpp"

namespace rwm {

/// Truncated power series a_0 + a_1 q + ... + a_{N-1} q^{N-1}.
using Series = std::vector<cplx>;

Series series_mul(const Series& a, const Series& b);
/// log of a series with a_0 = 1.
Series series_log(const Series& a);
/// exp of a series with a_0 = 0.
Series series_exp(const Series& a);
/// a^t = exp(t log a) for a_0 = 1.
Series series_pow(const Series& a, double t);

/// Coefficients of prod_{m>=1} (1 - q^m) up to q^{n-1}, by repeated sparse products.
Series euler_product(int n);

}  // namespace rwm
