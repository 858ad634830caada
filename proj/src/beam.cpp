#include "rsiss/beam.hpp"

#include <cmath>

#include "rsiss/quadrature.hpp"

namespace rsiss::beam {

namespace {

void require_riesz_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("beam damping alpha must be positive");
    if (alpha == 1.0)
        throw DomainError("alpha = 1: the disturbance-free operator loses its Riesz-spectral structure");
}

double freq_sq(int n) { return n * n * pi * pi; }

// Second derivative of sin(n pi x) is -(n pi)^2 sin(n pi x).
Complex first_dd_amp(const SineProfile& s) { return -freq_sq(s.n) * s.amp1; }

}  // namespace

SineProfile Mode::phi() const { return {n, phi_amp, phi_amp * lambda}; }

SineProfile Mode::psi() const { return {n, psi_amp, -psi_amp * std::conj(lambda)}; }

std::vector<Mode> modes(double alpha, int N) {
    require_riesz_alpha(alpha);
    if (N < 1)
        throw DomainError("beam needs at least one frequency");
    std::vector<Mode> out;
    out.reserve(static_cast<std::size_t>(2 * N));
    for (int n = 1; n <= N; ++n) {
        const double k = freq_sq(n);
        for (int branch : {+1, -1}) {
            Mode mode;
            mode.n = n;
            mode.branch = branch;
            if (alpha > 1.0) {
                const double s = std::sqrt(alpha * alpha - 1.0);
                // alpha - s written without cancellation
                const double p = branch > 0 ? alpha + s : 1.0 / (alpha + s);
                mode.lambda = -k * p;
                mode.phi_amp = 1.0 / (k * std::sqrt(alpha * p));
            } else {
                const double w = std::sqrt(1.0 - alpha * alpha);
                mode.lambda = -k * Complex(alpha, branch * w);
                mode.phi_amp = 1.0 / k;
            }
            // <phi, psi> = phi_amp conj(psi_amp) (k^2 - lambda^2) / 2 = 1
            mode.psi_amp = std::conj(2.0 / (mode.phi_amp * (k * k - mode.lambda * mode.lambda)));
            out.push_back(mode);
        }
    }
    return out;
}

Complex sine_inner(const SineProfile& u, const SineProfile& v) {
    if (u.n != v.n)
        return 0.0;
    return 0.5 * (first_dd_amp(u) * std::conj(first_dd_amp(v)) + u.amp2 * std::conj(v.amp2));
}

PointProfile to_point_profile(const SineProfile& s) {
    const Complex dd = first_dd_amp(s);
    const Complex a2 = s.amp2;
    const double w = s.n * pi;
    return [dd, a2, w](double x) {
        const double sx = std::sin(w * x);
        return std::pair<Complex, Complex>{dd * sx, a2 * sx};
    };
}

Complex h_inner_quadrature(const PointProfile& u, const PointProfile& v, int panels, int order) {
    CompositeGaussLegendre<double> quad(0.0, 1.0, panels, order);
    return quad.integrate([&](double x) {
        const auto [u1, u2] = u(x);
        const auto [v1, v2] = v(x);
        return u1 * std::conj(v1) + u2 * std::conj(v2);
    });
}

PointProfile lifting_profile(int channel) {
    // (B d)(x) = ((d2 - d1)/6 x^3 + d1/2 x^2 - (2 d1 + d2)/6 x, 0)
    // so (B e_1)'' = 1 - x and (B e_2)'' = x.
    if (channel == 0)
        return [](double x) { return std::pair<Complex, Complex>{1.0 - x, 0.0}; };
    if (channel == 1)
        return [](double x) { return std::pair<Complex, Complex>{x, 0.0}; };
    throw DomainError("beam has two boundary channels");
}

PointProfile stationary_profile(const Eigen::Vector2cd& e) {
    // y = c0 + c1 x + c2 x^2 + c3 x^3 solves y'''' = 0; impose the four boundary conditions.
    Eigen::Matrix4d lhs;
    lhs << 1, 0, 0, 0,   // y(0)
           1, 1, 1, 1,   // y(1)
           0, 0, 2, 0,   // y''(0)
           0, 0, 2, 6;   // y''(1)
    Eigen::Vector4cd rhs(0.0, 0.0, e[0], e[1]);
    const Eigen::Vector4cd c = lhs.cast<Complex>().fullPivLu().solve(rhs);
    return [c](double x) {
        return std::pair<Complex, Complex>{2.0 * c[2] + 6.0 * c[3] * x, 0.0};
    };
}

RieszBounds riesz_bounds(double alpha) {
    require_riesz_alpha(alpha);
    if (alpha < 1.0)
        return RieszBounds(1.0 - alpha, 1.0 + alpha);
    return RieszBounds(1.0 - 1.0 / alpha, 1.0 + 1.0 / alpha);
}

namespace {

class BeamEigenfunctions final : public EigenfunctionData {
public:
    BeamEigenfunctions(std::vector<Mode> modes, int panels, int order)
        : modes_(std::move(modes)), panels_(panels), order_(order) {}

    Eigen::Index size() const override { return static_cast<Eigen::Index>(modes_.size()); }

    Complex cross(Eigen::Index i, Eigen::Index j) const override {
        const auto& mi = modes_[static_cast<std::size_t>(i)];
        const auto& mj = modes_[static_cast<std::size_t>(j)];
        return h_inner_quadrature(to_point_profile(mi.phi()), to_point_profile(mj.psi()), panels_, order_);
    }

private:
    std::vector<Mode> modes_;
    int panels_;
    int order_;
};

}  // namespace

SystemDefinition beam_system(double alpha, int N, const Options& options) {
    const std::vector<Mode> ms = modes(alpha, N);
    const auto count = static_cast<Eigen::Index>(ms.size());

    SystemDefinition sys;
    sys.name = "euler_bernoulli_beam";
    sys.m = 2;
    sys.c_E = 1.0;
    sys.riesz = riesz_bounds(alpha);
    sys.spectrum.eigenvalues.resize(count);
    sys.b.resize(count, 2);
    sys.a = Eigen::MatrixXcd::Zero(count, 2);  // A B = 0 for the cubic lifting

    for (Eigen::Index i = 0; i < count; ++i) {
        const Mode& mode = ms[static_cast<std::size_t>(i)];
        sys.spectrum.eigenvalues[i] = mode.lambda;
        // int (1 - x) sin(n pi x) = 1/(n pi), int x sin(n pi x) = (-1)^(n+1)/(n pi)
        const double npi = mode.n * pi;
        const Complex psi_dd_conj = std::conj(-freq_sq(mode.n) * mode.psi_amp);
        sys.b(i, 0) = psi_dd_conj / npi;
        sys.b(i, 1) = psi_dd_conj * ((mode.n % 2 == 1) ? 1.0 : -1.0) / npi;
    }

    for (int n = 1; n <= N; ++n) {
        GramBlock block;
        block.modes = {mode_index(n, +1), mode_index(n, -1)};
        block.G.resize(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                block.G(r, c) = sine_inner(ms[static_cast<std::size_t>(block.modes[r])].phi(),
                                           ms[static_cast<std::size_t>(block.modes[c])].phi());
        sys.gram.blocks.push_back(std::move(block));
    }

    CompositeGaussLegendre<double> quad(0.0, 1.0, 8, 6);  // integrands are polynomials
    Eigen::VectorXd lifts(2), stationary(2);
    for (int k = 0; k < 2; ++k) {
        const PointProfile lift = lifting_profile(k);
        lifts[k] = std::sqrt(quad.integrate([&](double x) { return std::norm(lift(x).first); }));
        const PointProfile xe = stationary_profile(Eigen::Vector2cd::Unit(k));
        stationary[k] = std::sqrt(quad.integrate([&](double x) { return std::norm(xe(x).first); }));
    }
    sys.lift_norms = lifts;
    sys.stationary_norms = stationary;
    sys.ab_norm = 0.0;
    sys.eigenfunctions =
        std::make_shared<BeamEigenfunctions>(ms, options.quadrature_panels, options.quadrature_order);
    sys.validate();
    return sys;
}

SineProfile block_basis(int n, bool dual) {
    const double k = freq_sq(n);
    return {n, 1.0 / k, dual ? -1.0 : 1.0};
}

namespace {

// T(r, c) = <phi_{n, c}, block_r>, so block = T modal.
Eigen::Matrix2cd modal_to_block_matrix(const Mode& plus, const Mode& minus) {
    Eigen::Matrix2cd T;
    const Mode* ms[2] = {&plus, &minus};
    for (int c = 0; c < 2; ++c)
        for (int r = 0; r < 2; ++r)
            T(r, c) = sine_inner(ms[c]->phi(), block_basis(plus.n, r == 1));
    return T;
}

}  // namespace

ModalVector block_from_modal(double alpha, int N, const ModalVector& modal) {
    if (modal.size() != 2 * N)
        throw DomainError("block_from_modal: expected 2N coefficients");
    const auto ms = modes(alpha, N);
    ModalVector out(2 * N);
    for (int n = 1; n <= N; ++n) {
        const auto& plus = ms[static_cast<std::size_t>(mode_index(n, +1))];
        const auto& minus = ms[static_cast<std::size_t>(mode_index(n, -1))];
        out.segment<2>(2 * (n - 1)) = modal_to_block_matrix(plus, minus) * modal.segment<2>(2 * (n - 1));
    }
    return out;
}

ModalVector modal_from_block(double alpha, int N, const ModalVector& block) {
    if (block.size() != 2 * N)
        throw DomainError("modal_from_block: expected 2N coefficients");
    const auto ms = modes(alpha, N);
    ModalVector out(2 * N);
    for (int n = 1; n <= N; ++n) {
        const Mode* pair[2] = {&ms[static_cast<std::size_t>(mode_index(n, +1))],
                               &ms[static_cast<std::size_t>(mode_index(n, -1))]};
        // c_eps = <X, psi_eps> = c <psi_n, psi_eps> + c^d <psi_n^d, psi_eps>
        for (int e = 0; e < 2; ++e) {
            const SineProfile psi = pair[e]->psi();
            out[2 * (n - 1) + e] = block[2 * (n - 1)] * sine_inner(block_basis(n, false), psi) +
                                   block[2 * (n - 1) + 1] * sine_inner(block_basis(n, true), psi);
        }
    }
    return out;
}

Eigen::Vector2d stationary_block_projection(int n, int channel) {
    // first components of psi_n and psi_n^d have second derivative -sin(n pi x)
    const double npi = n * pi;
    const double integral = channel == 0 ? 1.0 / npi : ((n % 2 == 1) ? 1.0 : -1.0) / npi;
    return Eigen::Vector2d(-integral, -integral);
}

ModalVector load_modal_projection(double alpha, int N, const Eigen::VectorXd& sine_coeffs) {
    const auto ms = modes(alpha, N);
    ModalVector out = ModalVector::Zero(2 * N);
    for (Eigen::Index j = 0; j < sine_coeffs.size() && j < N; ++j) {
        const int n = static_cast<int>(j) + 1;
        const SineProfile load{n, 0.0, sine_coeffs[j]};
        for (int branch : {+1, -1}) {
            const Eigen::Index idx = mode_index(n, branch);
            out[idx] = sine_inner(load, ms[static_cast<std::size_t>(idx)].psi());
        }
    }
    return out;
}

ModalVector load_block_projection(int N, const Eigen::VectorXd& sine_coeffs) {
    ModalVector out = ModalVector::Zero(2 * N);
    for (Eigen::Index j = 0; j < sine_coeffs.size() && j < N; ++j) {
        const int n = static_cast<int>(j) + 1;
        const SineProfile load{n, 0.0, sine_coeffs[j]};
        out[2 * j] = sine_inner(load, block_basis(n, false));
        out[2 * j + 1] = sine_inner(load, block_basis(n, true));
    }
    return out;
}

double load_norm(const Eigen::VectorXd& sine_coeffs) { return std::sqrt(0.5 * sine_coeffs.squaredNorm()); }

}  // namespace rsiss::beam
