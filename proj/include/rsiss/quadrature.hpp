#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace rsiss {

/// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_n.
template <typename Scalar = double>
struct GaussLegendreRule {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Vector nodes;
    Vector weights;

    explicit GaussLegendreRule(int order) : nodes(order), weights(order) {
        if (order < 1)
            throw std::invalid_argument("Gauss-Legendre order must be positive");
        if (order == 1) {
            nodes[0] = 0;
            weights[0] = 2;
            return;
        }
        const Scalar pi_s = Scalar(3.14159265358979323846264338327950288L);
        for (int i = 0; i < (order + 1) / 2; ++i) {
            Scalar x = std::cos(pi_s * (Scalar(i) + Scalar(0.75)) / (Scalar(order) + Scalar(0.5)));
            Scalar dp = 1;
            for (int iter = 0; iter < 100; ++iter) {
                Scalar p0 = 1, p1 = x;
                for (int k = 2; k <= order; ++k) {
                    const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = order * (x * p1 - p0) / (x * x - 1);
                const Scalar dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < Scalar(1e-16))
                    break;
            }
            const Scalar w = 2 / ((1 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
    }

    int order() const { return static_cast<int>(nodes.size()); }
};

/// Composite Gauss-Legendre quadrature over [a, b] with equal panels.
template <typename Scalar = double>
class CompositeGaussLegendre {
public:
    CompositeGaussLegendre(Scalar a, Scalar b, int panels, int order = 10)
        : rule_(order), a_(a), b_(b), panels_(panels) {
        if (panels < 1 || !(b > a))
            throw std::invalid_argument("composite quadrature needs panels >= 1 and b > a");
    }

    /// Integrate f over [a, b]; f may return a real or complex scalar.
    template <typename F>
    auto integrate(F&& f) const -> decltype(f(Scalar{})) {
        using Result = decltype(f(Scalar{}));
        const Scalar h = (b_ - a_) / panels_;
        Result total{};
        for (int p = 0; p < panels_; ++p) {
            const Scalar mid = a_ + (p + Scalar(0.5)) * h;
            Result panel{};
            for (int i = 0; i < rule_.order(); ++i)
                panel += rule_.weights[i] * f(mid + Scalar(0.5) * h * rule_.nodes[i]);
            total += Scalar(0.5) * h * panel;
        }
        return total;
    }

    int points() const { return panels_ * rule_.order(); }

private:
    GaussLegendreRule<Scalar> rule_;
    Scalar a_, b_;
    int panels_;
};

}  // namespace rsiss
