// Representation-theoretic building blocks: the deformed spin-S matrices,
// two-site and N-site Casimir operators, channel projectors, R-matrices,
// permutation operators and the isotypic decomposition of tensor powers.
//
// Spin is kept exact by storing 2S as an integer; channel labels s are
// iterated as 2s integers for the same reason.
#pragma once

#include "qspin/common.hpp"

#include <map>
#include <optional>

namespace qspin {

// q = exp(i*gamma) with gamma real, so |q| = 1 by construction.
struct DeformationParams {
    double gamma = 0.0;
    int two_S    = 1;

    double spin() const { return 0.5 * two_S; }
    Complex q() const { return {std::cos(gamma), std::sin(gamma)}; }
};

// [t] = sin(gamma*t)/sin(gamma), with the continuous limit t at gamma = 0.
inline double q_number(double t, double gamma) {
    if (gamma == 0.0) return t;
    return std::sin(gamma * t) / std::sin(gamma);
}

// {t} = 2 cos(gamma*t)
inline double q_bracket(double t, double gamma) {
    return 2.0 * std::cos(gamma * t);
}

// Generator matrices of the spin-S representation. Basis is the weight basis
// ordered from highest weight down, so E is supported on the first
// superdiagonal and K = diag(q^k), k = S..-S.
struct SpinRep {
    DeformationParams params;
    int dim = 0;
    Matrix E, F, K;
    RealVector h_exponents;  // k = S, S-1, ..., -S

    double gamma() const { return params.gamma; }
    int two_S() const { return params.two_S; }
    double spin() const { return params.spin(); }
};

inline SpinRep spin_rep(const DeformationParams& params) {
    if (params.two_S < 0) throw DomainError("spin_rep: 2S must be nonnegative");
    if (params.two_S * std::abs(params.gamma) >= kPi)
        throw DomainError("spin_rep: requires 2S*|gamma| < pi");
    SpinRep rep;
    rep.params = params;
    rep.dim    = params.two_S + 1;
    const int d = rep.dim;
    const double g = params.gamma;
    rep.E = Matrix::Zero(d, d);
    for (int i = 0; i + 1 < d; ++i)
        rep.E(i, i + 1) = std::sqrt(q_number(i + 1, g) * q_number(params.two_S - i, g));
    rep.F = rep.E.adjoint();
    rep.h_exponents = RealVector(d);
    for (int i = 0; i < d; ++i) rep.h_exponents(i) = params.spin() - i;
    rep.K = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        rep.K(i, i) = Complex{std::cos(g * rep.h_exponents(i)), std::sin(g * rep.h_exponents(i))};
    return rep;
}

// Dense complex operator on the N-site chain Hilbert space, dimension (2S+1)^N.
struct ChainOperator {
    int two_S    = 1;
    int N        = 1;
    double gamma = 0.0;
    Matrix mat;

    int site_dim() const { return two_S + 1; }
    Eigen::Index dim() const { return mat.rows(); }
};

inline ChainOperator make_chain_operator(int two_S, int N, double gamma, Matrix m) {
    ChainOperator op{two_S, N, gamma, std::move(m)};
    if (op.mat.rows() != op.mat.cols()) throw DomainError("chain operator must be square");
    Eigen::Index expect = 1;
    for (int n = 0; n < N; ++n) expect *= op.site_dim();
    if (op.mat.rows() != expect) throw DomainError("chain operator dimension mismatch");
    if (!op.mat.allFinite()) throw DomainError("chain operator has non-finite entries");
    return op;
}

// Swap of tensor factors i and j (1-based) on an N-fold product of
// dim_single-dimensional sites.
inline ChainOperator permutation_operator(int dim_single, int N, int i, int j) {
    if (i < 1 || j > N || i >= j) throw IndexError("permutation_operator: need 1 <= i < j <= N");
    Eigen::Index dim = 1;
    for (int n = 0; n < N; ++n) dim *= dim_single;
    Matrix P = Matrix::Zero(dim, dim);
    std::vector<int> digits(N);
    for (Eigen::Index col = 0; col < dim; ++col) {
        Eigen::Index rest = col;
        for (int n = N - 1; n >= 0; --n) {
            digits[n] = static_cast<int>(rest % dim_single);
            rest /= dim_single;
        }
        std::swap(digits[i - 1], digits[j - 1]);
        Eigen::Index row = 0;
        for (int n = 0; n < N; ++n) row = row * dim_single + digits[n];
        P(row, col) = 1.0;
    }
    return make_chain_operator(dim_single - 1, N, 0.0, std::move(P));
}

namespace detail {

// Embeds a two-site operator so that it acts on sites (i, j), i < j, of an
// N-site chain, identity elsewhere.
inline Matrix embed_two_site(const Matrix& op, int dim_single, int i, int j, int N) {
    if (i < 1 || j > N || i >= j) throw IndexError("embed_two_site: need 1 <= i < j <= N");
    Eigen::Index dim = 1;
    for (int n = 0; n < N; ++n) dim *= dim_single;
    Matrix out = Matrix::Zero(dim, dim);
    std::vector<int> digits(N);
    for (Eigen::Index row = 0; row < dim; ++row) {
        Eigen::Index rest = row;
        for (int n = N - 1; n >= 0; --n) {
            digits[n] = static_cast<int>(rest % dim_single);
            rest /= dim_single;
        }
        const int a = digits[i - 1], b = digits[j - 1];
        for (int ap = 0; ap < dim_single; ++ap) {
            for (int bp = 0; bp < dim_single; ++bp) {
                const Complex v = op(a * dim_single + b, ap * dim_single + bp);
                if (v == Complex(0.0, 0.0)) continue;
                digits[i - 1] = ap;
                digits[j - 1] = bp;
                Eigen::Index col = 0;
                for (int n = 0; n < N; ++n) col = col * dim_single + digits[n];
                out(row, col) += v;
            }
        }
        digits[i - 1] = a;
        digits[j - 1] = b;
    }
    return out;
}

// Total weight of each product-basis state (sum of single-site H exponents).
inline RealVector total_weights(const SpinRep& rep, int N) {
    Eigen::Index dim = 1;
    for (int n = 0; n < N; ++n) dim *= rep.dim;
    RealVector w = RealVector::Zero(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        Eigen::Index rest = idx;
        for (int n = 0; n < N; ++n) {
            w(idx) += rep.h_exponents(static_cast<int>(rest % rep.dim));
            rest /= rep.dim;
        }
    }
    return w;
}

}  // namespace detail

// N-fold coproduct action of a generator:
//   E  ->  sum_n K ox..ox K ox E_n ox K^-1 ox..ox K^-1   (same shape for F)
//   K  ->  K ox ... ox K
inline ChainOperator coproduct_action(const SpinRep& rep, int N, char generator) {
    if (N < 1) throw DomainError("coproduct_action: N >= 1");
    const Matrix Kinv = rep.K.conjugate();  // K unitary diagonal
    if (generator == 'K') {
        Matrix acc = rep.K;
        for (int n = 1; n < N; ++n) acc = kron(acc, rep.K);
        return make_chain_operator(rep.two_S(), N, rep.gamma(), std::move(acc));
    }
    const Matrix& X = (generator == 'E') ? rep.E : rep.F;
    if (generator != 'E' && generator != 'F')
        throw DomainError("coproduct_action: generator must be E, F or K");
    Eigen::Index dim = 1;
    for (int n = 0; n < N; ++n) dim *= rep.dim;
    Matrix total = Matrix::Zero(dim, dim);
    for (int n = 0; n < N; ++n) {
        Matrix term = (n == 0) ? X : rep.K;
        for (int m = 1; m < N; ++m) {
            const Matrix& factor = (m < n) ? rep.K : (m == n) ? X : Kinv;
            term = kron(term, factor);
        }
        total += term;
    }
    return make_chain_operator(rep.two_S(), N, rep.gamma(), std::move(total));
}

// Two-site Casimir (pi ox pi)Delta(C). Cross terms come from expanding
// (Delta(E)Delta(F) + Delta(F)Delta(E))/2; the weight-diagonal block is
// evaluated in the cancellation-free q-number form
//   q^{k-m} ( [S+1+k][S+m] + [S+1-k][S-m] ),
// which carries its own gamma -> 0 limit.
inline ChainOperator tensor_casimir(const SpinRep& rep) {
    const int d = rep.dim;
    const double g = rep.gamma();
    const double S = rep.spin();
    const Matrix Kinv = rep.K.conjugate();
    Matrix cas = kron(rep.K * rep.E, rep.F * Kinv) + kron(rep.F * rep.K, Kinv * rep.E);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const double k = rep.h_exponents(i), m = rep.h_exponents(j);
            cas(i * d + j, i * d + j) +=
                std::polar(1.0, g * (k - m)) *
                (q_number(S + 1 + k, g) * q_number(S + m, g) +
                 q_number(S + 1 - k, g) * q_number(S - m, g));
        }
    }
    return make_chain_operator(rep.two_S(), 2, g, std::move(cas));
}

// N-site Casimir: the single-site Casimir polynomial evaluated on the
// coproduct matrices. Eigenvalues are [s][s+1] over the isotypic range.
inline ChainOperator total_casimir(const SpinRep& rep, int N) {
    if (N < 1) throw DomainError("total_casimir: N >= 1");
    const Matrix EN = coproduct_action(rep, N, 'E').mat;
    const Matrix FN = coproduct_action(rep, N, 'F').mat;
    Matrix C = 0.5 * (EN * FN + FN * EN);
    const RealVector w = detail::total_weights(rep, N);
    const double cg = std::cos(rep.gamma());
    for (Eigen::Index i = 0; i < C.rows(); ++i) {
        const double qm = q_number(w(i), rep.gamma());
        C(i, i) += cg * qm * qm;
    }
    return make_chain_operator(rep.two_S(), N, rep.gamma(), std::move(C));
}

// Projector onto the spin-s submodule of V^S ox V^S, built as the Lagrange
// polynomial in the two-site Casimir with nodes [l][l+1].
inline ChainOperator projector(const SpinRep& rep, int s) {
    if (s < 0 || s > rep.two_S()) throw DomainError("projector: need 0 <= s <= 2S");
    const double g = rep.gamma();
    const ChainOperator C = tensor_casimir(rep);
    const Eigen::Index dim = C.dim();
    Matrix P = Matrix::Identity(dim, dim);
    for (int l = 0; l <= rep.two_S(); ++l) {
        if (l == s) continue;
        const double denom = q_number(s - l, g) * q_number(s + l + 1, g);
        if (std::abs(denom) <= kSingularGuard)
            throw SingularGamma("projector: vanishing q-number denominator at this gamma");
        P = P * (C.mat - q_number(l, g) * q_number(l + 1, g) * Matrix::Identity(dim, dim)) / denom;
    }
    return make_chain_operator(rep.two_S(), 2, g, std::move(P));
}

namespace detail {

// R+ for a pair of representations given by the lowering matrix of the left
// leg, the raising matrix of the right leg and both diagonal weight vectors.
// The series terminates exactly: (F ox E)^n vanishes once n exceeds the
// weight range, and the loop stops on the exact zero.
inline Matrix r_plus_generic(const Matrix& f_left, const Matrix& e_right,
                             const RealVector& h_left, const RealVector& h_right,
                             double gamma) {
    const Eigen::Index n1 = h_left.size(), n2 = h_right.size();
    const Eigen::Index dim = n1 * n2;
    Vector qhh(dim);
    for (Eigen::Index i = 0; i < n1; ++i)
        for (Eigen::Index j = 0; j < n2; ++j)
            qhh(i * n2 + j) = std::polar(1.0, gamma * h_left(i) * h_right(j));
    const Complex q = std::polar(1.0, gamma);
    const Matrix step = (q - 1.0 / q) * kron(f_left, e_right);
    Matrix series = Matrix::Identity(dim, dim);
    Matrix power  = Matrix::Identity(dim, dim);
    double qfact = 1.0;
    const Eigen::Index max_n = n1 + n2;  // nilpotency bound
    for (Eigen::Index n = 1; n <= max_n; ++n) {
        power = power * step;
        if (power.isZero(0.0)) break;
        qfact *= q_number(static_cast<double>(n), gamma);
        series += std::polar(1.0, gamma * 0.5 * static_cast<double>(n * n - n)) / qfact * power;
    }
    return qhh.asDiagonal() * series * qhh.asDiagonal();
}

}  // namespace detail

// Two-site R-matrices. R+ is the terminating series (exact truncation at
// n = 2S); R- = P (R+)^-1 P with P the flip of the two factors.
inline ChainOperator r_matrix(const SpinRep& rep, int sign) {
    Matrix Rp = detail::r_plus_generic(rep.F, rep.E, rep.h_exponents, rep.h_exponents,
                                       rep.gamma());
    if (sign >= 0) return make_chain_operator(rep.two_S(), 2, rep.gamma(), std::move(Rp));
    const Matrix P = permutation_operator(rep.dim, 2, 1, 2).mat;
    Matrix Rm = P * Rp.inverse() * P;
    return make_chain_operator(rep.two_S(), 2, rep.gamma(), std::move(Rm));
}

// Clebsch-Gordan multiplicities of V^s inside (V^S)^{ox N}, keyed by 2s.
inline std::map<int, long long> multiplicities(int two_S, int N) {
    if (N < 1) throw DomainError("multiplicities: N >= 1");
    std::map<int, long long> nu{{two_S, 1}};
    for (int n = 2; n <= N; ++n) {
        std::map<int, long long> next;
        for (const auto& [ts, count] : nu)
            for (int t = std::abs(ts - two_S); t <= ts + two_S; t += 2)
                next[t] += count;
        nu = std::move(next);
    }
    return nu;
}

struct IsotypicData {
    int two_S    = 1;
    int N        = 1;
    double gamma = 0.0;
    std::vector<int> two_s_values;            // 2s, ascending
    std::vector<long long> nu;                // multiplicity per s
    std::vector<ChainOperator> projectors;    // rank nu_s * (2s+1) each
};

// Projectors onto the isotypic components of (V^S)^{ox N}, as Lagrange
// polynomials in the N-site Casimir with nodes [s][s+1].
inline IsotypicData isotypic_projectors(const SpinRep& rep, int N) {
    const double g = rep.gamma();
    IsotypicData data;
    data.two_S = rep.two_S();
    data.N     = N;
    data.gamma = g;
    const auto nu = multiplicities(rep.two_S(), N);
    std::vector<double> nodes;
    for (const auto& [ts, count] : nu) {
        data.two_s_values.push_back(ts);
        data.nu.push_back(count);
        nodes.push_back(q_number(0.5 * ts, g) * q_number(0.5 * ts + 1.0, g));
    }
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b)
            if (std::abs(nodes[a] - nodes[b]) <= kSingularGuard)
                throw SingularGamma("isotypic_projectors: Casimir eigenvalue collision");
    const ChainOperator C = total_casimir(rep, N);
    const Eigen::Index dim = C.dim();
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        Matrix P = Matrix::Identity(dim, dim);
        for (std::size_t b = 0; b < nodes.size(); ++b) {
            if (a == b) continue;
            P = P * (C.mat - nodes[b] * Matrix::Identity(dim, dim)) / (nodes[a] - nodes[b]);
        }
        data.projectors.push_back(make_chain_operator(rep.two_S(), N, g, std::move(P)));
    }
    return data;
}

// Singlet vector of V^S ox V^S (s = 0 channel basis vector), annihilated by
// the coproduct action of E and F.
inline Vector singlet_vector(const SpinRep& rep) {
    const int d = rep.dim;
    Vector w = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) {
        const int j = rep.two_S() - i;  // partner of weight -k
        const double k = rep.h_exponents(i);
        const double parity = (i % 2 == 0) ? 1.0 : -1.0;  // (-1)^(S-k), S-k = i
        w(i * d + j) = parity * std::polar(1.0, -rep.gamma() * k) / std::sqrt(d);
    }
    return w;
}

}  // namespace qspin
