#include "wseshadri/potentials.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include <omp.h>

#include "wseshadri/curve_models.hpp" // effective_threads
#include "wseshadri/rational.hpp"     // float_str

namespace wseshadri {

namespace {

constexpr double kClip = 1e-9; // interior clipping for facet-boundary samples

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double mem_value(const Vec& a, const Vec& lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * std::exp(2.0 * lambda[i]);
    return s;
}

} // namespace

PotentialParams make_params(Vec a, double R0, double R_bd, double S, double r1,
                            double r2, double delta, double eta) {
    require(a.size() >= 2, "BadParams", "need n >= 2 weights");
    for (double x : a) require(x > 0, "BadParams", "weights must be positive");
    require(0 < R0 && R0 < R_bd, "BadParams", "need 0 < R0 < R_bd");
    require(0 < S && S < R_bd, "BadParams", "need 0 < S < R_bd");
    require(0 < eta && eta < delta, "BadParams", "need 0 < eta < delta");
    require(R0 + 2 * (delta + eta) < R_bd, "BadParams",
            "need R0 + 2(delta+eta) < R_bd");
    require(r1 > 0 && r2 > 0, "BadParams", "need r1, r2 > 0");
    return PotentialParams{std::move(a), R0, R_bd, S, r1, r2, delta, eta};
}

PotentialParams reference_params() {
    return make_params({2.0, 3.0}, 1.0, 12.0, 6.0, 2.0, 1.0, 0.05, 0.02);
}

GridSpec make_grid(std::vector<std::size_t> counts, double tolerance) {
    require(!counts.empty(), "BadParams", "grid needs at least one axis count");
    for (std::size_t c : counts)
        require(c >= 2, "BadParams", "grid counts must be >= 2");
    require(tolerance > 0, "BadParams", "tolerance must be positive");
    return GridSpec{std::move(counts), tolerance};
}

double L(double t) {
    require(t > 0, "NonPositive", "L(t) needs t > 0");
    return 0.5 * (t * std::log(2.0 * t) - t);
}

double L_prime(double t) {
    require(t > 0, "NonPositive", "L'(t) needs t > 0");
    return 0.5 * std::log(2.0 * t);
}

Vec psi_Z(const Vec& m) {
    Vec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        require(m[i] > 0, "NonPositive", "psi_Z needs m > 0");
        out[i] = 0.5 * std::log(2.0 * m[i]);
    }
    return out;
}

Vec psi_Z_inv(const Vec& lambda) {
    Vec out(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i)
        out[i] = 0.5 * std::exp(2.0 * lambda[i]);
    return out;
}

SmoothedKink::SmoothedKink(Kind kind, double delta, double eta)
    : kind_(kind), delta_(delta), eta_(eta), t0_(delta - eta),
      t1_(delta + eta) {
    require(0 < eta && eta < delta, "BadParams", "need 0 < eta < delta");

    double g1, f1;
    std::array<double, 5> frac{};
    std::array<double, 5> fixed{};
    std::size_t free_a, free_b;
    if (kind_ == Kind::Zeta) {
        f0_ = 0.5 * (t0_ * std::log(2.0 * delta_) - delta_);
        g0_ = 0.5 * std::log(2.0 * delta_);
        f1 = L(t1_);
        g1 = L_prime(t1_);
        frac = {0.0, 0.4, 0.55, 0.75, 1.0};
        fixed = {0.0, 0.0, 0.0, 0.0, 1.0};
        free_a = 2;
        free_b = 3;
    } else {
        f0_ = 0.5 * (t0_ * std::log(t0_ / delta_) + delta_ - t0_);
        g0_ = 0.5 * std::log(t0_ / delta_);
        f1 = 0.0;
        g1 = 0.0;
        frac = {0.0, 0.25, 0.45, 0.6, 1.0};
        fixed = {1.0, 0.0, 0.0, 0.0, 0.0};
        free_a = 1;
        free_b = 2;
    }
    for (std::size_t k = 0; k < 5; ++k)
        node_t_[k] = t0_ + frac[k] * (t1_ - t0_);

    // Moments of a piecewise-linear weight w over the band against the
    // curvature kernel 1/(2s): (integral of w/(2s), integral of
    // (t1 - s) w/(2s)). Linear in the node heights.
    auto moments = [&](const std::array<double, 5>& w) {
        double i0 = 0.0, iv = 0.0;
        for (std::size_t k = 0; k + 1 < 5; ++k) {
            double p = node_t_[k], q = node_t_[k + 1];
            double slope = (w[k + 1] - w[k]) / (q - p);
            double alpha = w[k] - slope * p;
            double seg0 =
                0.5 * alpha * std::log1p((q - p) / p) + 0.5 * slope * (q - p);
            i0 += seg0;
            iv += t1_ * seg0 - 0.25 * (w[k] + w[k + 1]) * (q - p);
        }
        return std::pair<double, double>{i0, iv};
    };

    const double target0 = g1 - g0_;
    const double targetv = f1 - f0_ - g0_ * (t1_ - t0_);

    auto [c0, cv] = moments(fixed);
    std::array<double, 5> basis = fixed;
    basis[free_a] += 1.0;
    auto [a0, av] = moments(basis);
    basis[free_a] -= 1.0;
    basis[free_b] += 1.0;
    auto [b0, bv] = moments(basis);
    const double m00 = a0 - c0, m01 = b0 - c0;
    const double m10 = av - cv, m11 = bv - cv;
    const double det = m00 * m11 - m01 * m10;
    require(std::abs(det) > 1e-300, "BadParams",
            "degenerate smoothing system");
    const double r0 = target0 - c0, rv = targetv - cv;
    node_w_ = fixed;
    node_w_[free_a] = (r0 * m11 - m01 * rv) / det;
    node_w_[free_b] = (m00 * rv - m10 * r0) / det;

    A_[0] = 0.0;
    M_[0] = 0.0;
    for (std::size_t k = 0; k + 1 < 5; ++k) {
        double p = node_t_[k], q = node_t_[k + 1];
        double slope = (node_w_[k + 1] - node_w_[k]) / (q - p);
        double alpha = node_w_[k] - slope * p;
        A_[k + 1] = A_[k] + 0.5 * alpha * std::log1p((q - p) / p) +
                    0.5 * slope * (q - p);
        M_[k + 1] = M_[k] + 0.25 * (node_w_[k] + node_w_[k + 1]) * (q - p);
    }
}

double SmoothedKink::band_deriv(double t) const {
    std::size_t k = 0;
    while (k + 2 < 5 && t > node_t_[k + 1]) ++k;
    double p = node_t_[k], q = node_t_[k + 1];
    double slope = (node_w_[k + 1] - node_w_[k]) / (q - p);
    double alpha = node_w_[k] - slope * p;
    double part0 = 0.5 * alpha * std::log1p((t - p) / p) + 0.5 * slope * (t - p);
    return g0_ + A_[k] + part0;
}

double SmoothedKink::band_value(double t) const {
    std::size_t k = 0;
    while (k + 2 < 5 && t > node_t_[k + 1]) ++k;
    double p = node_t_[k], q = node_t_[k + 1];
    double slope = (node_w_[k + 1] - node_w_[k]) / (q - p);
    double alpha = node_w_[k] - slope * p;
    double wt = node_w_[k] + slope * (t - p);
    double part0 = 0.5 * alpha * std::log1p((t - p) / p) + 0.5 * slope * (t - p);
    double partM = 0.25 * (node_w_[k] + wt) * (t - p);
    double At = A_[k] + part0;
    double Mt = M_[k] + partM;
    return f0_ + g0_ * (t - t0_) + t * At - Mt;
}

double SmoothedKink::value(double t) const {
    if (kind_ == Kind::Zeta) {
        if (t <= t0_) return 0.5 * (t * std::log(2.0 * delta_) - delta_);
        if (t >= t1_) return L(t);
        return band_value(t);
    }
    if (t >= t1_) return 0.0;
    if (t <= t0_) {
        double tc = std::max(t, 1e-300);
        return 0.5 * (tc * std::log(tc / delta_) + delta_ - tc);
    }
    return band_value(t);
}

double SmoothedKink::deriv(double t) const {
    if (kind_ == Kind::Zeta) {
        if (t <= t0_) return 0.5 * std::log(2.0 * delta_);
        if (t >= t1_) return L_prime(t);
        return band_deriv(t);
    }
    if (t >= t1_) return 0.0;
    if (t <= t0_) return 0.5 * std::log(std::max(t, 1e-300) / delta_);
    return band_deriv(t);
}

double SmoothedKink::second(double t) const {
    if (kind_ == Kind::Zeta) {
        if (t <= t0_) return 0.0;
        if (t >= t1_) return 0.5 / t;
    } else {
        if (t >= t1_) return 0.0;
        if (t <= t0_) return 0.5 / std::max(t, 1e-300);
    }
    std::size_t k = 0;
    while (k + 2 < 5 && t > node_t_[k + 1]) ++k;
    double p = node_t_[k], q = node_t_[k + 1];
    double wt = node_w_[k] +
                (node_w_[k + 1] - node_w_[k]) * (t - p) / (q - p);
    return wt / (2.0 * t);
}

double chi(double delta, double eta, double t) {
    return SmoothedKink(SmoothedKink::Kind::Chi, delta, eta).value(t);
}

double zeta(double delta, double eta, double t) {
    return SmoothedKink(SmoothedKink::Kind::Zeta, delta, eta).value(t);
}

double potential_Z(const Vec& m) {
    double s = 0.0;
    for (double mi : m) s += L(mi);
    return s;
}

double potential_Y(const PotentialParams& p, const Vec& m) {
    double am = dot(p.a, m);
    require(am > p.R0 / 2, "NonInterior", "need a.m > R0/2");
    return potential_Z(m) + L(am - p.R0 / 2) -
           0.5 * am * std::log(p.R_bd - p.R0);
}

double potential_ironed_Z(const PotentialParams& p, const Vec& m) {
    SmoothedKink z(SmoothedKink::Kind::Zeta, p.delta, p.eta);
    double am = dot(p.a, m);
    return potential_Z(m) + z.value(am - p.R0 / 2) -
           0.5 * am * std::log(p.R_bd - p.R0);
}

Vec psi_Y(const PotentialParams& p, const Vec& m) {
    require(m.size() == p.a.size(), "BadParams", "dimension mismatch");
    double am = dot(p.a, m);
    require(am > p.R0 / 2, "NonInterior", "need a.m > R0/2");
    double logQ = std::log((p.R_bd - p.R0) / (2.0 * am - p.R0));
    Vec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        require(m[i] > 0, "NonInterior", "need m > 0");
        out[i] = 0.5 * std::log(2.0 * m[i]) - 0.5 * p.a[i] * logQ;
    }
    return out;
}

Vec psi_Y_inv(const PotentialParams& p, const Vec& lambda) {
    require(lambda.size() == p.a.size(), "BadParams", "dimension mismatch");
    const double half_R0 = p.R0 / 2;
    auto m_of = [&](double ell0) {
        Vec m(lambda.size());
        double Q = (p.R_bd - p.R0) / (2.0 * ell0 - p.R0);
        for (std::size_t i = 0; i < m.size(); ++i)
            m[i] = 0.5 * std::exp(2.0 * lambda[i]) * std::pow(Q, p.a[i]);
        return m;
    };
    auto g = [&](double ell0) { return dot(p.a, m_of(ell0)) - ell0; };

    double lo = half_R0 + 1e-14;
    require(g(lo) > 0, "RootBracketFailure",
            "lower bracket for ell0 not positive");
    double hi = half_R0 + 1.0;
    int guard = 0;
    while (g(hi) > 0) {
        hi = half_R0 + 2.0 * (hi - half_R0);
        require(++guard < 200, "RootBracketFailure",
                "no upper bracket for ell0");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0 ? lo : hi) = mid;
    }
    return m_of(0.5 * (lo + hi));
}

Vec psi_ironed_Z(const PotentialParams& p, const Vec& m) {
    require(m.size() == p.a.size(), "BadParams", "dimension mismatch");
    SmoothedKink z(SmoothedKink::Kind::Zeta, p.delta, p.eta);
    double zp = z.deriv(dot(p.a, m) - p.R0 / 2);
    double logC = 0.5 * std::log(p.R_bd - p.R0);
    Vec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        require(m[i] > 0, "NonPositive", "need m > 0");
        out[i] = 0.5 * std::log(2.0 * m[i]) + p.a[i] * (zp - logC);
    }
    return out;
}

Vec psi_ironed_Z_inv(const PotentialParams& p, const Vec& lambda) {
    require(lambda.size() == p.a.size(), "BadParams", "dimension mismatch");
    const std::size_t n = lambda.size();
    SmoothedKink z(SmoothedKink::Kind::Zeta, p.delta, p.eta);

    Vec x(n); // x = log m
    for (std::size_t i = 0; i < n; ++i)
        x[i] = 2.0 * lambda[i] - std::log(2.0); // psi_Z seed

    auto residual = [&](const Vec& xs, Vec& F, Vec& m) {
        m.resize(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = std::exp(xs[i]);
        Vec psi = psi_ironed_Z(p, m);
        F.resize(n);
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            F[i] = psi[i] - lambda[i];
            norm = std::max(norm, std::abs(F[i]));
        }
        return norm;
    };

    Vec F, m;
    double norm = residual(x, F, m);
    for (int it = 0; it < 200 && norm > 1e-13; ++it) {
        // J = I/2 + (zeta'' a) (a o m)^T; invert by Sherman-Morrison.
        double zpp = z.second(dot(p.a, m) - p.R0 / 2);
        Vec pvec(n), qvec(n);
        for (std::size_t i = 0; i < n; ++i) {
            pvec[i] = p.a[i] * zpp;
            qvec[i] = p.a[i] * m[i];
        }
        double qF = dot(qvec, F), qp = dot(qvec, pvec);
        Vec step(n);
        for (std::size_t i = 0; i < n; ++i)
            step[i] = 2.0 * F[i] - 4.0 * pvec[i] * qF / (1.0 + 2.0 * qp);

        double alpha = 1.0;
        Vec xt(n), Ft, mt;
        double nt = norm;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) xt[i] = x[i] - alpha * step[i];
            nt = residual(xt, Ft, mt);
            if (nt < norm) break;
            alpha *= 0.5;
        }
        require(nt < norm, "ConvergenceFailure",
                "ironed-potential inverse stalled");
        x = xt;
        F = Ft;
        m = mt;
        norm = nt;
    }
    require(norm <= 1e-13, "ConvergenceFailure",
            "ironed-potential inverse did not converge");
    return m;
}

std::vector<Vec> hessian_ironed(const PotentialParams& p, const Vec& m) {
    const std::size_t n = m.size();
    SmoothedKink z(SmoothedKink::Kind::Zeta, p.delta, p.eta);
    double zpp = z.second(dot(p.a, m) - p.R0 / 2);
    std::vector<Vec> H(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        require(m[i] > 0, "NonPositive", "need m > 0");
        for (std::size_t j = 0; j < n; ++j)
            H[i][j] = zpp * p.a[i] * p.a[j];
        H[i][i] += 0.5 / m[i];
    }
    return H;
}

bool is_positive_definite(std::vector<Vec> mat) {
    const std::size_t n = mat.size();
    for (std::size_t k = 0; k < n; ++k) {
        double d = mat[k][k];
        for (std::size_t j = 0; j < k; ++j) d -= mat[k][j] * mat[k][j];
        if (!(d > 0.0)) return false;
        mat[k][k] = std::sqrt(d);
        for (std::size_t i = k + 1; i < n; ++i) {
            double s = mat[i][k];
            for (std::size_t j = 0; j < k; ++j) s -= mat[i][j] * mat[k][j];
            mat[i][k] = s / mat[k][k];
        }
    }
    return true;
}

double resh_residual(const Vec& a, const Vec& lambda, double R) {
    return std::abs(mem_value(a, lambda) - R);
}

std::vector<Vec> lambda_face_samples(const Vec& a, double R,
                                     std::size_t count) {
    require(a.size() == 2, "BadParams", "face sampling is n = 2 only");
    require(R > 0, "NonPositive", "R must be positive");
    require(count >= 1, "BadParams", "need at least one sample");
    std::vector<Vec> out;
    double m1_max = R / (2.0 * a[0]);
    for (std::size_t i = 1; i <= count; ++i) {
        double m1 = m1_max * static_cast<double>(i) /
                    static_cast<double>(count + 1);
        double m2 = (R / 2.0 - a[0] * m1) / a[1];
        out.push_back(Vec{m1, m2});
    }
    return out;
}

double psi_image_residual(const PotentialParams& p, const Vec& m, double R,
                          bool ironed) {
    Vec lambda = ironed ? psi_ironed_Z(p, m) : psi_Y(p, m);
    double logQ = std::log((p.R_bd - p.R0) / (R - p.R0));
    Vec shifted(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i)
        shifted[i] = lambda[i] + 0.5 * p.a[i] * logQ;
    return resh_residual(p.a, shifted, R);
}

namespace {

/* Gaussian elimination with partial pivoting for the small (n <= 5) Newton
 * systems of the containment solver. */
Vec solve_dense(std::vector<Vec> A, Vec b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
        std::swap(A[k], A[piv]);
        std::swap(b[k], b[piv]);
        require(std::abs(A[k][k]) > 1e-300, "ConvergenceFailure",
                "singular Newton system");
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = A[i][k] / A[k][k];
            for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
            b[i] -= f * b[k];
        }
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
        x[i] = s / A[i][i];
    }
    return x;
}

/* Solves r1 m' + (r2/2) exp(2 psi_ironed(m')) = m for m' and returns the
 * mem-function value of the resulting lambda. */
double containment_point(const PotentialParams& p, const SmoothedKink& z,
                         const Vec& m) {
    const std::size_t n = m.size();
    Vec y(n); // log m'
    for (std::size_t i = 0; i < n; ++i)
        y[i] = std::log(std::max(m[i], kClip) / (p.r1 + p.r2));

    Vec mp(n), e2psi(n), F(n);
    auto residual = [&](const Vec& ys) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) mp[i] = std::exp(ys[i]);
        Vec psi = psi_ironed_Z(p, mp);
        for (std::size_t i = 0; i < n; ++i) {
            e2psi[i] = std::exp(2.0 * psi[i]);
            F[i] = p.r1 * mp[i] + 0.5 * p.r2 * e2psi[i] - m[i];
            norm = std::max(norm, std::abs(F[i]));
        }
        return norm;
    };

    double norm = residual(y);
    const double tol = 1e-12 * std::max(1.0, dot(p.a, m));
    for (int it = 0; it < 200 && norm > tol; ++it) {
        double zpp = z.second(dot(p.a, mp) - p.R0 / 2);
        std::vector<Vec> J(n, Vec(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double jpsi = (i == j ? 0.5 : 0.0) +
                              p.a[i] * zpp * p.a[j] * mp[j];
                J[i][j] = p.r2 * e2psi[i] * jpsi;
            }
            J[i][i] += p.r1 * mp[i];
        }
        Vec step = solve_dense(std::move(J), F);

        Vec yt(n);
        double alpha = 1.0, nt = norm;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] - alpha * step[i];
            nt = residual(yt);
            if (nt < norm) break;
            alpha *= 0.5;
        }
        require(nt < norm, "ConvergenceFailure",
                "containment solve stalled");
        y = yt;
        norm = nt;
    }
    require(norm <= tol, "ConvergenceFailure",
            "containment solve did not converge");
    Vec lambda = psi_ironed_Z(p, mp);
    return mem_value(p.a, lambda);
}

std::vector<Vec> simplex_grid(const Vec& a, double R,
                              const std::vector<std::size_t>& counts) {
    const std::size_t n = a.size();
    std::vector<std::size_t> c(n);
    for (std::size_t i = 0; i < n; ++i)
        c[i] = counts.size() == 1 ? counts[0] : counts[i];
    std::vector<Vec> pts;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        Vec m(n);
        double am = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double hi = R / (2.0 * a[i]);
            m[i] = std::max(hi * static_cast<double>(idx[i]) /
                                static_cast<double>(c[i] - 1),
                            kClip);
            am += a[i] * m[i];
        }
        if (am <= R / 2.0 + 1e-12) pts.push_back(std::move(m));
        std::size_t k = 0;
        while (k < n && ++idx[k] == c[k]) idx[k++] = 0;
        if (k == n) break;
    }
    return pts;
}

} // namespace

ContainmentReport check_containment(const PotentialParams& p,
                                    const GridSpec& grid, bool parallel) {
    require(grid.counts.size() == 1 || grid.counts.size() == p.a.size(),
            "BadParams", "grid axis count mismatch");
    ContainmentReport rep;
    if (p.r1 * p.R0 >= p.R_bd) {
        rep.message = "precondition failure: r1*R0 >= R_bd";
        return rep;
    }

    const double half_S = p.S / 2.0;
    SmoothedKink z(SmoothedKink::Kind::Zeta, p.delta, p.eta);

    // Sampled inclusion psi_ironed(Delta_{a, R0+2(delta+eta)}) in
    // mem_{a, S/2}.
    const double Rc = p.R0 + 2.0 * (p.delta + p.eta);
    for (const Vec& m : simplex_grid(p.a, Rc, {20})) {
        if (mem_value(p.a, psi_ironed_Z(p, m)) > half_S + grid.tolerance) {
            rep.message =
                "precondition failure: ironed image of the small simplex "
                "escapes mem_{a,S/2}";
            return rep;
        }
    }
    rep.precondition_ok = true;

    std::vector<Vec> pts = simplex_grid(p.a, p.r1 * p.R0, grid.counts);
    std::vector<double> margins(pts.size());
    std::atomic<bool> failed{false};
    const int threads = parallel ? effective_threads() : 1;
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(pts.size()); ++i) {
        try {
            margins[i] = half_S - containment_point(p, z, pts[i]);
        } catch (const DomainError&) {
            failed.store(true);
            margins[i] = -1e300;
        }
    }
    require(!failed.load(), "ConvergenceFailure",
            "containment solve failed on a grid point");

    rep.points_checked = pts.size();
    rep.worst_margin = *std::min_element(margins.begin(), margins.end());
    rep.pass = rep.worst_margin >= -grid.tolerance;
    if (!rep.pass) rep.message = "mem bound exceeded on the grid";
    return rep;
}

double monotone_h(double R, double a_n, double kappa, double eps_scale,
                  double t) {
    require(R > 0 && a_n > 0, "NonPositive", "need R, a_n > 0");
    require(0 < eps_scale && eps_scale < 1 && kappa > 1, "BadParams",
            "need 0 < eps_scale < 1 < kappa");
    require(t >= 0, "BadParams", "need t >= 0");

    const double t_hi = std::sqrt(R / (2.0 * a_n));
    const double H_lo = std::sqrt(R / (3.0 * a_n));
    const double t_lo = (eps_scale / kappa) * H_lo;
    if (t >= t_hi) return t;
    if (t <= t_lo) return kappa * t / eps_scale;

    // h' = exp(g), g piecewise linear through (t_lo, log(kappa/eps)),
    // (t_mid, y), (t_hi, 0); y fixed by total integral t_hi - H_lo.
    const double g_lo = std::log(kappa / eps_scale);
    const double target = t_hi - H_lo;
    // First segment width shrinks with exp(-g_lo) so the steep initial slope
    // can be integrated away within the available area for any kappa/eps.
    const double t_mid =
        t_lo + std::min(0.5 * (t_hi - t_lo),
                        0.5 * target * std::exp(-g_lo) * (g_lo + 60.0));
    auto seg = [](double pq, double gp, double gq) { // integral over width pq
        if (std::abs(gq - gp) < 1e-12) return pq * std::exp(gp);
        return pq * (std::exp(gq) - std::exp(gp)) / (gq - gp);
    };
    auto total = [&](double y) {
        return seg(t_mid - t_lo, g_lo, y) + seg(t_hi - t_mid, y, 0.0);
    };
    double lo = -60.0, hi = 60.0;
    require(total(lo) <= target && target <= total(hi), "RootBracketFailure",
            "no bracket for the interior slope node");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (total(mid) < target ? lo : hi) = mid;
    }
    const double y = 0.5 * (lo + hi);

    // Partial integral of exp(linear) from the segment start to t.
    auto part = [](double p, double t_, double gp, double slope) {
        if (std::abs(slope) < 1e-12) return (t_ - p) * std::exp(gp);
        return (std::exp(gp + slope * (t_ - p)) - std::exp(gp)) / slope;
    };
    double h = H_lo;
    if (t <= t_mid) {
        h += part(t_lo, t, g_lo, (y - g_lo) / (t_mid - t_lo));
    } else {
        h += seg(t_mid - t_lo, g_lo, y);
        h += part(t_mid, t, y, (0.0 - y) / (t_hi - t_mid));
    }
    return h;
}

std::string potentials_grid_csv(const PotentialParams& p,
                                const GridSpec& grid) {
    const std::size_t n = p.a.size();
    std::ostringstream out;
    for (std::size_t i = 0; i < n; ++i) out << "m" << i + 1 << ',';
    for (std::size_t i = 0; i < n; ++i) out << "lambda" << i + 1 << ',';
    out << "mem\n";
    for (const Vec& m : simplex_grid(p.a, p.R_bd, grid.counts)) {
        Vec lambda = psi_ironed_Z(p, m);
        for (double v : m) out << float_str(v) << ',';
        for (double v : lambda) out << float_str(v) << ',';
        out << float_str(mem_value(p.a, lambda)) << '\n';
    }
    return out.str();
}

nlohmann::ordered_json containment_to_json(const ContainmentReport& r) {
    nlohmann::ordered_json j;
    j["precondition_ok"] = r.precondition_ok;
    j["pass"] = r.pass;
    j["worst_margin"] = r.worst_margin;
    j["points_checked"] = r.points_checked;
    j["message"] = r.message;
    return j;
}

} // namespace wseshadri
