#pragma once

#include "rsiss/system.hpp"

namespace fixtures {

// Diagonal system with an orthonormal eigenbasis and one input channel.
inline rsiss::SystemDefinition toy_system(Eigen::VectorXcd lambda, Eigen::VectorXcd b, Eigen::VectorXcd a) {
    rsiss::SystemDefinition s;
    s.name = "toy";
    s.spectrum.eigenvalues = std::move(lambda);
    s.b = std::move(b);
    s.a = std::move(a);
    s.m = 1;
    s.gram = rsiss::GramData::identity(s.spectrum.size());
    s.riesz = rsiss::RieszBounds(1.0, 1.0);
    s.validate();
    return s;
}

inline rsiss::SystemDefinition toy_system(int modes = 6) {
    Eigen::VectorXcd lambda(modes), b(modes);
    for (int n = 1; n <= modes; ++n) {
        lambda[n - 1] = rsiss::Complex(-1.0 * n * n, n % 2 ? 0.5 * n : -0.5 * n);
        b[n - 1] = rsiss::Complex(1.0 / n, 0.2 / n);
    }
    return toy_system(lambda, b, Eigen::VectorXcd::Zero(modes));
}

}  // namespace fixtures
