#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace rsiss {

/// phi_0 .. phi_K of the exponential integrator:
///   phi_0(z) = e^z,  phi_k(z) = (phi_{k-1}(z) - 1/(k-1)!) / z.
/// Taylor series near zero, where the recurrence cancels.
template <typename Scalar, std::size_t K>
std::array<Scalar, K + 1> phi_functions(Scalar z) {
    static_assert(K >= 1);
    using std::abs;
    using std::exp;
    std::array<Scalar, K + 1> out{};
    if (abs(z) < 1.0) {
        // phi_k(z) = sum_j z^j / (j + k)!
        for (std::size_t k = 0; k <= K; ++k) {
            double fact = 1.0;
            for (std::size_t i = 2; i <= k; ++i)
                fact *= static_cast<double>(i);
            Scalar term = Scalar(1.0 / fact);
            Scalar sum = term;
            for (std::size_t j = 1; j < 40; ++j) {
                term *= z / static_cast<double>(j + k);
                sum += term;
                if (abs(term) < 1e-18 * abs(sum))
                    break;
            }
            out[k] = sum;
        }
        return out;
    }
    out[0] = exp(z);
    double inv_fact = 1.0;  // 1/(k-1)!
    for (std::size_t k = 1; k <= K; ++k) {
        if (k > 1)
            inv_fact /= static_cast<double>(k - 1);
        out[k] = (out[k - 1] - inv_fact) / z;
    }
    return out;
}

/// Weights of the exponential quadrature
///   int_0^h e^{lambda (h - s)} f(s) ds  ~  w0 f(0) + wm f(h/2) + w1 f(h)
/// for f interpolated by a quadratic through the three nodes.
template <typename Scalar>
std::array<Scalar, 3> exponential_quadrature_weights(Scalar lambda, double h) {
    const auto p = phi_functions<Scalar, 3>(lambda * h);
    // f(theta h) = A + B theta + C theta^2 with
    //   A = f0, B = -3 f0 + 4 fm - f1, C = 2 f0 - 4 fm + 2 f1;
    // int_0^1 e^{z (1 - theta)} theta^j d theta = j! phi_{j+1}(z).
    const Scalar i0 = h * p[1];
    const Scalar i1 = h * p[2];
    const Scalar i2 = h * 2.0 * p[3];
    return {i0 - 3.0 * i1 + 2.0 * i2, 4.0 * i1 - 4.0 * i2, -i1 + 2.0 * i2};
}

}  // namespace rsiss
