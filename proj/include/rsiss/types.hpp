#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rsiss {

using Complex = std::complex<double>;

/// Modal coefficients c_n = <X, psi_n>, one entry per listed mode.
using ModalVector = Eigen::VectorXcd;

/// A vector of the boundary space K^m.
using BoundaryVector = Eigen::VectorXcd;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class CertificateUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Real number or +infinity, with the infinite case carried explicitly.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr explicit ExtendedReal(double v) : value_(v) {}

    static constexpr ExtendedReal infinity() {
        ExtendedReal r;
        r.infinite_ = true;
        return r;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    double value() const {
        if (infinite_)
            throw DomainError("value() requested from an infinite quantity");
        return value_;
    }

    /// Numeric view; +inf for the infinite marker. Only for output/ordering.
    constexpr double as_double() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    friend constexpr bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

inline constexpr double pi = 3.14159265358979323846264338327950288;

}  // namespace rsiss
