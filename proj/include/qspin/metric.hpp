// Metric operators, two ways: dynamically from bi-orthogonal eigenbases
// (most general form, eigenvector-free polynomial form, eta_0) and
// universally from ordered R-matrix products, with the positivity range,
// determinant formula and isotypic identity that come with the latter.
#pragma once

#include "qspin/spectral.hpp"

namespace qspin {

// Eigenbasis of a quasi-Hermitian operator together with its dual basis.
// Columns of `omegas` are unit-norm eigenvectors grouped by clustered
// eigenvalue; `duals` solves duals^adj * omegas = I; `gram` is omegas' Gram
// matrix.
struct BiorthogonalSystem {
    Matrix omegas, duals, gram;
    std::vector<double> eigenvalues;   // one clustered value per group
    std::vector<int> multiplicities;   // group sizes, sum = dimension
    std::vector<int> offsets;          // first column of each group
    double condition_number = 1.0;

    Eigen::Index dim() const { return omegas.rows(); }
    int groups() const { return static_cast<int>(eigenvalues.size()); }
};

inline BiorthogonalSystem biorthogonal_system(const Matrix& H, double tol = kRealityTol) {
    if (!H.allFinite()) throw DomainError("biorthogonal_system: non-finite entries");
    Eigen::ComplexEigenSolver<Matrix> solver(H, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("biorthogonal_system: eigensolver failed");
    const Eigen::Index d = H.rows();
    double radius = 0.0, imag = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        radius = std::max(radius, std::abs(solver.eigenvalues()(i)));
        imag   = std::max(imag, std::abs(solver.eigenvalues()(i).imag()));
    }
    const double scale = std::max(1.0, radius);
    if (imag > tol * scale)
        throw NotQuasiHermitian("biorthogonal_system: spectrum is not real");

    // sort eigenpairs by eigenvalue, then group by cluster
    std::vector<Eigen::Index> order(d);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return solver.eigenvalues()(a).real() < solver.eigenvalues()(b).real();
    });
    BiorthogonalSystem sys;
    sys.omegas = Matrix(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        Vector v = solver.eigenvectors().col(order[i]);
        sys.omegas.col(i) = v / v.norm();
    }
    const double cluster_gap = kClusterTol * scale;
    double group_sum = 0.0, prev_lam = 0.0;
    int group_size = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double lam = solver.eigenvalues()(order[i]).real();
        if (group_size > 0 && lam - prev_lam < cluster_gap) {
            group_sum += lam;
            ++group_size;
        } else {
            if (group_size > 0) {
                sys.eigenvalues.push_back(group_sum / group_size);
                sys.multiplicities.push_back(group_size);
            }
            sys.offsets.push_back(static_cast<int>(i));
            group_sum  = lam;
            group_size = 1;
        }
        prev_lam = lam;
    }
    sys.eigenvalues.push_back(group_sum / group_size);
    sys.multiplicities.push_back(group_size);

    Eigen::JacobiSVD<Matrix> svd(sys.omegas);
    const double smin = svd.singularValues()(d - 1);
    sys.condition_number = (smin > 0.0) ? svd.singularValues()(0) / smin
                                        : std::numeric_limits<double>::infinity();
    if (sys.condition_number > 1e8)
        throw IllConditioned("biorthogonal_system: eigenbasis condition number exceeds 1e8");

    sys.gram  = sys.omegas.adjoint() * sys.omegas;
    sys.duals = sys.omegas * sys.gram.llt().solve(Matrix::Identity(d, d));
    return sys;
}

inline BiorthogonalSystem biorthogonal_system(const ChainOperator& H, double tol = kRealityTol) {
    return biorthogonal_system(H.mat, tol);
}

// eta plus the positivity diagnostics. A candidate passes only when it is
// Hermitian at 1e-9 relative and the Hermitian part is positive at 1e-10
// relative; the two thresholds keep "not Hermitian" distinguishable from
// "indefinite".
struct MetricCandidate {
    Matrix eta;
    double hermiticity_residual   = 0.0;
    double min_eig_hermitian_part = 0.0;
    bool is_positive_definite     = false;
};

inline MetricCandidate make_metric_candidate(Matrix eta) {
    MetricCandidate cand;
    const double norm = std::max(1e-300, eta.norm());
    cand.hermiticity_residual = (eta - Matrix(eta.adjoint())).norm() / norm;
    const Matrix herm = 0.5 * (eta + Matrix(eta.adjoint()));
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    cand.min_eig_hermitian_part = es.eigenvalues()(0);
    cand.is_positive_definite   = cand.hermiticity_residual < 1e-9 &&
                                cand.min_eig_hermitian_part > 1e-10 * norm;
    cand.eta = std::move(eta);
    return cand;
}

// ||eta H - H^adj eta|| / (||eta|| ||H||)
inline double symmetrization_residual(const Matrix& eta, const Matrix& H) {
    const double scale = std::max(1e-300, eta.norm() * H.norm());
    return (eta * H - H.adjoint() * eta).norm() / scale;
}

namespace detail {

inline void require_hermitian_pd(const Matrix& phi, const char* what) {
    if (phi.rows() != phi.cols()) throw BadBlock(std::string(what) + ": block not square");
    const double norm = std::max(1e-300, phi.norm());
    if ((phi - Matrix(phi.adjoint())).norm() > 1e-10 * norm)
        throw BadBlock(std::string(what) + ": block not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(phi, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) <= 0.0)
        throw BadBlock(std::string(what) + ": block not positive definite");
}

}  // namespace detail

struct MetricWithInverse {
    MetricCandidate metric;
    Matrix inverse;
};

// Most general metric for the given eigenbasis grouping: one Hermitian
// positive block Phi_j per eigenvalue,
//   eta      = duals  * blockdiag(Phi)   * duals^adj
//   eta^-1   = omegas * blockdiag(Phi^-1) * omegas^adj
inline MetricWithInverse metric_general(const BiorthogonalSystem& sys,
                                        const std::vector<Matrix>& phi_blocks) {
    if (static_cast<int>(phi_blocks.size()) != sys.groups())
        throw BadBlock("metric_general: need one block per distinct eigenvalue");
    const Eigen::Index d = sys.dim();
    Matrix phi     = Matrix::Zero(d, d);
    Matrix phi_inv = Matrix::Zero(d, d);
    for (int j = 0; j < sys.groups(); ++j) {
        const int mu = sys.multiplicities[j];
        if (phi_blocks[j].rows() != mu)
            throw BadBlock("metric_general: block size does not match multiplicity");
        detail::require_hermitian_pd(phi_blocks[j], "metric_general");
        phi.block(sys.offsets[j], sys.offsets[j], mu, mu) = phi_blocks[j];
        phi_inv.block(sys.offsets[j], sys.offsets[j], mu, mu) =
            phi_blocks[j].llt().solve(Matrix::Identity(mu, mu));
    }
    MetricWithInverse out;
    out.metric  = make_metric_candidate(sys.duals * phi * sys.duals.adjoint());
    out.inverse = sys.omegas * phi_inv * sys.omegas.adjoint();
    return out;
}

// eta_0 = Omega^adj Omega for any Omega mapping the unit eigenvectors to an
// orthonormal basis; equivalently (W W^adj)^-1. Basis independent.
inline MetricCandidate eta0(const Matrix& H) {
    const BiorthogonalSystem sys = biorthogonal_system(H);
    const Eigen::Index d = sys.dim();
    const Matrix ww = sys.omegas * sys.omegas.adjoint();
    return make_metric_candidate(ww.llt().solve(Matrix::Identity(d, d)));
}

inline MetricCandidate eta0(const ChainOperator& H) { return eta0(H.mat); }

// Eigenvector-free form for simple spectra:
//   eta = sum_j Theta_j prod_{n != j}(H^adj - lam_n) prod_{m != j}(H - lam_m)
inline MetricCandidate metric_polynomial_form(const Matrix& H,
                                              const std::vector<double>& thetas) {
    const MinimalPolynomialReport mp = minimal_polynomial_of(H);
    const Eigen::Index d = H.rows();
    if (static_cast<Eigen::Index>(mp.distinct_roots.size()) != d)
        throw DegenerateSpectrum("metric_polynomial_form: spectrum is not simple");
    if (static_cast<Eigen::Index>(thetas.size()) != d)
        throw DomainError("metric_polynomial_form: need one weight per eigenvalue");
    for (double t : thetas)
        if (!(t > 0.0)) throw DomainError("metric_polynomial_form: weights must be positive");
    double max_imag = 0.0;
    for (Complex r : mp.distinct_roots) max_imag = std::max(max_imag, std::abs(r.imag()));
    const double scale =
        std::max(1.0, std::abs(mp.distinct_roots.front()) + std::abs(mp.distinct_roots.back()));
    if (max_imag > kRealityTol * scale)
        throw NotQuasiHermitian("metric_polynomial_form: spectrum is not real");

    Matrix eta = Matrix::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        Matrix factor = Matrix::Identity(d, d);
        for (Eigen::Index m = 0; m < d; ++m) {
            if (m == j) continue;
            factor = factor * (H - mp.distinct_roots[m].real() * Matrix::Identity(d, d));
        }
        eta += thetas[j] * (factor.adjoint() * factor);
    }
    return make_metric_candidate(std::move(eta));
}

// Matrix symbols with respect to a bi-orthogonal basis: A = W O(A) W^adj in
// the omega basis and A = duals Ot(A) duals^adj in the dual basis.
inline Matrix symbol_O(const BiorthogonalSystem& sys, const Matrix& A) {
    const Eigen::Index d = sys.dim();
    const Matrix winv = sys.omegas.partialPivLu().solve(Matrix::Identity(d, d));
    return winv * A * winv.adjoint();
}

inline Matrix symbol_O_tilde(const BiorthogonalSystem& sys, const Matrix& A) {
    const Eigen::Index d = sys.dim();
    const Matrix dinv = sys.duals.partialPivLu().solve(Matrix::Identity(d, d));
    return dinv * A * dinv.adjoint();
}

// Hermitian square root with eigenvalues clamped at zero; used by the
// similarity check eta^{1/2} H eta^{-1/2}.
inline Matrix hermitian_sqrt(const Matrix& eta) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (eta + Matrix(eta.adjoint())));
    RealVector vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = std::sqrt(std::max(0.0, vals(i)));
    return es.eigenvectors() * vals.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// ---- universal (R-matrix) metric operators ---------------------------------

struct UniversalMetricPair {
    int two_S    = 1;
    int N        = 2;
    double gamma = 0.0;
    Matrix eta_plus, eta_minus;
};

namespace detail {

// eta = Rl_N ... Rl_2 with Rl_n = R_{n-1,n} R_{n-2,n} ... R_{1,n}
inline Matrix eta_product(const Matrix& R, int d, int N) {
    Eigen::Index dim = 1;
    for (int n = 0; n < N; ++n) dim *= d;
    Matrix eta = Matrix::Identity(dim, dim);
    for (int n = N; n >= 2; --n)
        for (int i = n - 1; i >= 1; --i)
            eta = eta * embed_two_site(R, d, i, n, N);
    return eta;
}

// the reversed-ordered product Rr_1 ... Rr_{N-1}, Rr_n = R_{n,n+1} ... R_{n,N}
inline Matrix eta_product_alt(const Matrix& R, int d, int N) {
    Eigen::Index dim = 1;
    for (int n = 0; n < N; ++n) dim *= d;
    Matrix eta = Matrix::Identity(dim, dim);
    for (int n = 1; n <= N - 1; ++n)
        for (int j = n + 1; j <= N; ++j)
            eta = eta * embed_two_site(R, d, n, j, N);
    return eta;
}

}  // namespace detail

inline UniversalMetricPair universal_eta(const SpinRep& rep, int N) {
    if (N < 2) throw DomainError("universal_eta: N >= 2");
    chain_dimension(rep.two_S(), N);
    UniversalMetricPair pair;
    pair.two_S = rep.two_S();
    pair.N     = N;
    pair.gamma = rep.gamma();
    pair.eta_plus  = detail::eta_product(r_matrix(rep, +1).mat, rep.dim, N);
    pair.eta_minus = detail::eta_product(r_matrix(rep, -1).mat, rep.dim, N);
    return pair;
}

// Same operators in the other product ordering; used as a cross check.
inline std::pair<Matrix, Matrix> universal_eta_alt_ordering(const SpinRep& rep, int N) {
    return {detail::eta_product_alt(r_matrix(rep, +1).mat, rep.dim, N),
            detail::eta_product_alt(r_matrix(rep, -1).mat, rep.dim, N)};
}

// One-parameter Hermitian family eta(alpha) = e^{ia} eta+ + e^{-ia} eta-.
inline MetricCandidate hermitian_metric(const UniversalMetricPair& pair, double alpha) {
    const Complex phase = std::polar(1.0, alpha);
    return make_metric_candidate(phase * pair.eta_plus + std::conj(phase) * pair.eta_minus);
}

// Multi-parameter Hermitian family
//   sum_n beta_n ( e^{i a_n} eta+ X^{n-1} + e^{-i a_n} eta- Y^{n-1} ),
// with X = (eta-)^-1 eta+ and Y = (eta+)^-1 eta-.
inline MetricCandidate multiparam_metric(const UniversalMetricPair& pair,
                                         const std::vector<double>& alphas,
                                         const std::vector<double>& betas) {
    if (alphas.size() != betas.size() || alphas.empty())
        throw DomainError("multiparam_metric: need matching nonempty alpha/beta lists");
    const Eigen::Index dim = pair.eta_plus.rows();
    const Matrix X = pair.eta_minus.partialPivLu().solve(pair.eta_plus);
    const Matrix Y = pair.eta_plus.partialPivLu().solve(pair.eta_minus);
    Matrix xk = Matrix::Identity(dim, dim), yk = Matrix::Identity(dim, dim);
    Matrix acc = Matrix::Zero(dim, dim);
    for (std::size_t n = 0; n < alphas.size(); ++n) {
        const Complex phase = std::polar(1.0, alphas[n]);
        acc += betas[n] * (phase * pair.eta_plus * xk + std::conj(phase) * pair.eta_minus * yk);
        xk = xk * X;
        yk = yk * Y;
    }
    return make_metric_candidate(std::move(acc));
}

inline double half_integer_floor(int num) { return (num % 2 == 0) ? 0.0 : 0.5; }

// alpha maximizing the positivity range of eta(alpha):
//   alpha_0 = (gamma/2) (NS (2S + 1 - NS) - s0 (s0 + 1))
inline double alpha0(int two_S, int N, double gamma) {
    const double S  = 0.5 * two_S;
    const double NS = N * S;
    const double s0 = half_integer_floor(N * two_S);
    return 0.5 * gamma * (NS * (two_S + 1.0 - NS) - s0 * (s0 + 1.0));
}

// Guaranteed quasi-Hermiticity range: pi / ((NS - s0)(NS + s0 + 1)).
inline double gamma_hat(int two_S, int N) {
    const double NS = 0.5 * two_S * N;
    const double s0 = half_integer_floor(N * two_S);
    return kPi / ((NS - s0) * (NS + s0 + 1.0));
}

struct DetFormulaCheck {
    double log_abs_lhs = 0.0;
    int sign_lhs       = 1;
    double log_abs_rhs = 0.0;
    int sign_rhs       = 1;
    double rel_err     = 0.0;

    double lhs() const { return sign_lhs * std::exp(log_abs_lhs); }
    double rhs() const { return sign_rhs * std::exp(log_abs_rhs); }
};

// det(eta(alpha)) against the closed product over isotypic components:
//   prod_s (2 cos(alpha - gamma (NS(S+1) - s(s+1))))^{(2s+1) nu_s}.
// Both sides are accumulated in the log domain.
inline DetFormulaCheck det_formula_check(const UniversalMetricPair& pair, double alpha) {
    DetFormulaCheck out;
    const MetricCandidate eta = hermitian_metric(pair, alpha);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (eta.eta + Matrix(eta.eta.adjoint())),
                                             Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double v = es.eigenvalues()(i);
        out.log_abs_lhs += std::log(std::abs(v));
        if (v < 0.0) out.sign_lhs = -out.sign_lhs;
    }
    const double S  = 0.5 * pair.two_S;
    const double NS = 0.5 * pair.two_S * pair.N;
    for (const auto& [ts, count] : multiplicities(pair.two_S, pair.N)) {
        const double s = 0.5 * ts;
        const double x = NS * (S + 1.0) - s * (s + 1.0);
        const double factor = 2.0 * std::cos(alpha - pair.gamma * x);
        const double exponent = (ts + 1.0) * static_cast<double>(count);
        out.log_abs_rhs += exponent * std::log(std::abs(factor));
        if (factor < 0.0 && (ts + 1) * count % 2 == 1) out.sign_rhs = -out.sign_rhs;
    }
    if (out.sign_lhs != out.sign_rhs) {
        out.rel_err = 2.0;
    } else {
        out.rel_err = std::abs(std::expm1(out.log_abs_lhs - out.log_abs_rhs));
    }
    return out;
}

struct PdScanResult {
    double empirical_boundary = 0.0;  // largest gamma with eta(alpha0) positive definite
    double guaranteed         = 0.0;  // the closed-form range
};

// Scans gamma for positive definiteness of eta(alpha0(gamma)); alpha0 is
// recomputed at every grid point. The empirical boundary must cover the
// guaranteed range (it may exceed it).
inline PdScanResult pd_range_scan(int two_S, int N, double resolution = 1e-4,
                                  int grid_points = 160) {
    PdScanResult out;
    out.guaranteed = gamma_hat(two_S, N);
    auto positive = [&](double g) {
        const SpinRep rep = spin_rep({g, two_S});
        return hermitian_metric(universal_eta(rep, N), alpha0(two_S, N, g)).is_positive_definite;
    };
    const double gmax = 0.999 * kPi / two_S;
    double lo = 0.0, hi = gmax;
    bool found = false;
    for (int i = 1; i <= grid_points; ++i) {
        const double g = gmax * i / grid_points;
        if (!positive(g)) {
            hi    = g;
            lo    = gmax * (i - 1) / grid_points;
            found = true;
            break;
        }
    }
    if (!found) {
        out.empirical_boundary = gmax;  // positive definite over the whole domain
        return out;
    }
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (positive(mid) ? lo : hi) = mid;
    }
    out.empirical_boundary = lo;
    return out;
}

// || (eta-)^-1 eta+  -  sum_s q^{2s(s+1) - 2NS(S+1)} P_s ||_F / dim
inline double isotypic_identity_check(const UniversalMetricPair& pair,
                                      const IsotypicData& iso) {
    if (iso.two_S != pair.two_S || iso.N != pair.N || iso.gamma != pair.gamma)
        throw DomainError("isotypic_identity_check: mismatched parameters");
    const Matrix lhs = pair.eta_minus.partialPivLu().solve(pair.eta_plus);
    const double S  = 0.5 * pair.two_S;
    const double NS = 0.5 * pair.two_S * pair.N;
    Matrix rhs = Matrix::Zero(lhs.rows(), lhs.cols());
    for (std::size_t k = 0; k < iso.two_s_values.size(); ++k) {
        const double s = 0.5 * iso.two_s_values[k];
        rhs += std::polar(1.0, pair.gamma * (2.0 * s * (s + 1.0) - 2.0 * NS * (S + 1.0))) *
               iso.projectors[k].mat;
    }
    return (lhs - rhs).norm() / static_cast<double>(lhs.rows());
}

}  // namespace qspin
