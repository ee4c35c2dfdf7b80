// A registry of the standalone algebraic identities behind the chain and
// metric constructions, each re-verified as a matrix residual at given
// (S, N, gamma, seed). The suite produces a machine-readable scorecard.
#pragma once

#include "qspin/metric.hpp"

namespace qspin {

struct IdentityParams {
    int two_S          = 1;
    int N              = 3;
    double gamma       = 0.3;
    std::uint64_t seed = 0;
};

struct IdentityReport {
    std::string identity_name;
    std::string statement;
    double residual  = 0.0;
    double tolerance = 0.0;
    bool pass        = false;
    IdentityParams params;
    std::string error;  // nonempty when the check could not be evaluated
};

struct IdentityDef {
    std::string name;
    std::string statement;
    bool uses_N;  // two-site identities ignore N and are run once per (S, gamma)
    std::function<double(const IdentityParams&)> residual;
    double tol_scale = 1.0;  // determinant-style residuals round harder than products
};

namespace detail {

// Residual tolerance by working dimension (products of a handful of dense
// factors; rounding grows with the chain length).
inline double tolerance_for_dim(Eigen::Index dim) { return dim <= 256 ? 1e-10 : 1e-8; }

inline Eigen::Index pow_dim(int base, int N) {
    Eigen::Index d = 1;
    for (int n = 0; n < N; ++n) d *= base;
    return d;
}

inline double uq_relations_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const Complex q   = rep.params.q();
    const Matrix K2   = rep.K * rep.K;
    const Matrix K2i  = K2.conjugate();
    double r = relative_residual(rep.K * rep.E, q * rep.E * rep.K);
    r = std::max(r, relative_residual(rep.K * rep.F, (1.0 / q) * rep.F * rep.K));
    const Matrix comm = rep.E * rep.F - rep.F * rep.E;
    if (p.gamma == 0.0) {
        Matrix h2 = Matrix::Zero(rep.dim, rep.dim);
        for (int i = 0; i < rep.dim; ++i) h2(i, i) = 2.0 * rep.h_exponents(i);
        r = std::max(r, relative_residual(comm, h2));
    } else {
        r = std::max(r, relative_residual(comm, (K2 - K2i) / (q - 1.0 / q)));
    }
    return r;
}

inline double hopf_star_defect_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const Matrix P    = permutation_operator(rep.dim, 2, 1, 2).mat;
    const Matrix dE   = coproduct_action(rep, 2, 'E').mat;
    const Matrix dF   = coproduct_action(rep, 2, 'F').mat;
    const Matrix dK   = coproduct_action(rep, 2, 'K').mat;
    double r = relative_residual(dE.adjoint(), P * dF * P);   // E* = F
    r = std::max(r, relative_residual(dF.adjoint(), P * dE * P));
    r = std::max(r, relative_residual(dK.adjoint(), P * dK.inverse() * P));
    return r;
}

inline double casimir_value_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    Matrix C = 0.5 * (rep.E * rep.F + rep.F * rep.E);
    for (int i = 0; i < rep.dim; ++i) {
        const double qm = q_number(rep.h_exponents(i), p.gamma);
        C(i, i) += std::cos(p.gamma) * qm * qm;
    }
    const double value = q_number(rep.spin(), p.gamma) * q_number(rep.spin() + 1.0, p.gamma);
    return relative_residual(C, value * Matrix::Identity(rep.dim, rep.dim));
}

inline double casimir_conjugation_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const Matrix C    = tensor_casimir(rep).mat;
    const Matrix P    = permutation_operator(rep.dim, 2, 1, 2).mat;
    return relative_residual(C.adjoint(), P * C * P);
}

inline double projector_conjugation_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const Matrix P    = permutation_operator(rep.dim, 2, 1, 2).mat;
    double r = 0.0;
    for (int s = 0; s <= p.two_S; ++s) {
        const Matrix proj = projector(rep, s).mat;
        r = std::max(r, relative_residual(proj.adjoint(), P * proj * P));
    }
    return r;
}

inline double temperley_lieb_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const ChainOperator P = projector(rep, 0);
    const Matrix P12 = embed_bond(P, 1, 3).mat;
    const Matrix P23 = embed_bond(P, 2, 3).mat;
    const double mu  = 1.0 / std::pow(q_number(p.two_S + 1, p.gamma), 2);
    double r = relative_residual(P12 * P23 * P12, mu * P12);
    r = std::max(r, relative_residual(P23 * P12 * P23, mu * P23));
    return r;
}

inline double yang_baxter_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    double r = 0.0;
    for (int sign : {+1, -1}) {
        const Matrix R   = r_matrix(rep, sign).mat;
        const Matrix R12 = embed_two_site(R, rep.dim, 1, 2, 3);
        const Matrix R13 = embed_two_site(R, rep.dim, 1, 3, 3);
        const Matrix R23 = embed_two_site(R, rep.dim, 2, 3, 3);
        r = std::max(r, relative_residual(R12 * R13 * R23, R23 * R13 * R12));
    }
    return r;
}

inline double r_conjugation_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    return relative_residual(r_matrix(rep, +1).mat.adjoint(), r_matrix(rep, -1).mat);
}

inline double r_intertwines_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const Matrix P = permutation_operator(rep.dim, 2, 1, 2).mat;
    double r = 0.0;
    for (int sign : {+1, -1}) {
        const Matrix R = r_matrix(rep, sign).mat;
        for (char gen : {'E', 'F', 'K'}) {
            const Matrix dX = coproduct_action(rep, 2, gen).mat;
            r = std::max(r, relative_residual(R * dX, P * dX * P * R));
        }
    }
    return r;
}

inline double r_fusion_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const int d = rep.dim;
    const Matrix R   = r_matrix(rep, +1).mat;
    const Matrix R12 = embed_two_site(R, d, 1, 2, 3);
    const Matrix R13 = embed_two_site(R, d, 1, 3, 3);
    const Matrix R23 = embed_two_site(R, d, 2, 3, 3);
    const Matrix dE = coproduct_action(rep, 2, 'E').mat;
    const Matrix dF = coproduct_action(rep, 2, 'F').mat;
    RealVector h12(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            h12(i * d + j) = rep.h_exponents(i) + rep.h_exponents(j);
    // first leg in the coproduct representation
    const Matrix lhs_left = r_plus_generic(dF, rep.E, h12, rep.h_exponents, p.gamma);
    double r = relative_residual(lhs_left, R13 * R23);
    // second leg in the coproduct representation
    const Matrix lhs_right = r_plus_generic(rep.F, dE, rep.h_exponents, h12, p.gamma);
    r = std::max(r, relative_residual(lhs_right, R13 * R12));
    return r;
}

inline double rp_intertwines_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const Matrix P = permutation_operator(rep.dim, 2, 1, 2).mat;
    double r = 0.0;
    for (int sign : {+1, -1}) {
        const Matrix R = r_matrix(rep, sign).mat;
        for (int s = 0; s <= p.two_S; ++s) {
            const Matrix proj = projector(rep, s).mat;
            r = std::max(r, relative_residual(R * proj, P * proj * P * R));
        }
    }
    return r;
}

inline ChainOperator random_general_hamiltonian(const IdentityParams& p, DetRng& rng) {
    ChainSpec spec;
    spec.params = {p.gamma, p.two_S};
    spec.N      = p.N;
    std::vector<std::vector<double>> b(p.N - 1, std::vector<double>(p.two_S + 1));
    for (auto& row : b)
        for (double& v : row) v = rng.uniform(-2.0, 2.0);
    spec.coupling.value = CouplingSchedule::General{std::move(b)};
    return hamiltonian_general(spec);
}

inline double h_symmetry_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    DetRng rng(p.seed ^ fnv1a("h_symmetry"));
    const Matrix H = random_general_hamiltonian(p, rng).mat;
    double r = 0.0;
    for (char gen : {'E', 'F', 'K'})
        r = std::max(r, commutator_residual(H, coproduct_action(rep, p.N, gen).mat));
    return r;
}

inline double eta_orderings_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const UniversalMetricPair pair = universal_eta(rep, p.N);
    const auto [alt_plus, alt_minus] = universal_eta_alt_ordering(rep, p.N);
    return std::max(relative_residual(pair.eta_plus, alt_plus),
                    relative_residual(pair.eta_minus, alt_minus));
}

inline double eta_conjugate_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const UniversalMetricPair pair = universal_eta(rep, p.N);
    return relative_residual(pair.eta_plus.adjoint(), pair.eta_minus);
}

inline double eta_symmetrizes_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const UniversalMetricPair pair = universal_eta(rep, p.N);
    double r = 0.0;
    for (int s = 0; s <= p.two_S; ++s) {
        const ChainOperator proj = projector(rep, s);
        for (int n = 1; n <= p.N - 1; ++n) {
            const Matrix Pn  = embed_bond(proj, n, p.N).mat;
            const Matrix PnS = embed_two_site(proj.mat.adjoint(), rep.dim, n, n + 1, p.N);
            r = std::max(r, relative_residual(pair.eta_plus * Pn, PnS * pair.eta_plus));
            r = std::max(r, relative_residual(pair.eta_minus * Pn, PnS * pair.eta_minus));
        }
    }
    DetRng rng(p.seed ^ fnv1a("eta_symmetrizes"));
    const Matrix H = random_general_hamiltonian(p, rng).mat;
    r = std::max(r, symmetrization_residual(hermitian_metric(pair, alpha0(p.two_S, p.N, p.gamma)).eta, H));
    return r;
}

inline double det_formula_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const UniversalMetricPair pair = universal_eta(rep, p.N);
    const auto nu = multiplicities(p.two_S, p.N);
    const double NS = 0.5 * p.two_S * p.N, S = 0.5 * p.two_S;
    // alpha values near a zero of the determinant make the relative
    // comparison ill-posed; keep every factor bounded away from zero
    auto clearance = [&](double alpha) {
        double m = 2.0;
        for (const auto& [ts, count] : nu) {
            const double s = 0.5 * ts;
            m = std::min(m, std::abs(2.0 * std::cos(alpha - pair.gamma * (NS * (S + 1.0) -
                                                                          s * (s + 1.0)))));
        }
        return m;
    };
    DetRng rng(p.seed ^ fnv1a("det_formula"));
    double r = 0.0;
    for (int k = 0; k < 3; ++k) {
        double alpha = rng.uniform(-kPi, kPi);
        for (int tries = 0; clearance(alpha) < 0.2 && tries < 64; ++tries)
            alpha = rng.uniform(-kPi, kPi);
        r = std::max(r, det_formula_check(pair, alpha).rel_err);
    }
    return r;
}

inline double isotypic_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    return isotypic_identity_check(universal_eta(rep, p.N), isotypic_projectors(rep, p.N));
}

inline double singlet_vector_residual(const IdentityParams& p) {
    const SpinRep rep = spin_rep({p.gamma, p.two_S});
    const Vector w = singlet_vector(rep);
    const double rE = (coproduct_action(rep, 2, 'E').mat * w).norm();
    const double rF = (coproduct_action(rep, 2, 'F').mat * w).norm();
    // the vector should also be the s = 0 channel eigenvector
    const Matrix P0 = projector(rep, 0).mat;
    const double rP = (P0 * w - w).norm();
    return std::max({rE, rF, rP});
}

}  // namespace detail

inline const std::vector<IdentityDef>& identity_registry() {
    static const std::vector<IdentityDef> registry = {
        {"uq_relations", "KE=qEK, KF=q^-1 FK, [E,F]=(K^2-K^-2)/(q-q^-1)", false,
         detail::uq_relations_residual},
        {"hopf_star_defect", "(Delta(X))* = P Delta(X*) P", false,
         detail::hopf_star_defect_residual},
        {"casimir_value", "C = [S][S+1] on the spin-S module", false,
         detail::casimir_value_residual},
        {"casimir_conjugation", "(C2)* = P C2 P", false, detail::casimir_conjugation_residual},
        {"projector_conjugation", "(P^{S,s})* = P P^{S,s} P", false,
         detail::projector_conjugation_residual},
        {"temperley_lieb", "P0_12 P0_23 P0_12 = mu P0_12, mu = 1/[2S+1]^2", false,
         detail::temperley_lieb_residual},
        {"yang_baxter", "R12 R13 R23 = R23 R13 R12", false, detail::yang_baxter_residual},
        {"r_conjugation", "(R+)* = R-", false, detail::r_conjugation_residual},
        {"r_intertwines", "R Delta(X) = Delta'(X) R", false, detail::r_intertwines_residual},
        {"r_fusion", "(Delta ox id)R = R13 R23, (id ox Delta)R = R13 R12", false,
         detail::r_fusion_residual},
        {"rp_intertwines", "R P^{S,s} = P P^{S,s} P R", false, detail::rp_intertwines_residual},
        {"h_symmetry", "[H, Delta^{N-1}(X)] = 0", true, detail::h_symmetry_residual},
        {"eta_orderings", "left- and right-ordered R products agree", true,
         detail::eta_orderings_residual},
        {"eta_conjugate", "(eta+)* = eta-", true, detail::eta_conjugate_residual},
        {"eta_symmetrizes", "eta P_{n,n+1} = (P_{n,n+1})* eta", true,
         detail::eta_symmetrizes_residual},
        {"det_formula", "det eta(alpha) = prod_s (2cos(alpha - gamma x_s))^{(2s+1)nu_s}", true,
         detail::det_formula_residual, 100.0},
        {"isotypic", "(eta-)^-1 eta+ = sum_s q^{2s(s+1)-2NS(S+1)} P_s", true,
         detail::isotypic_residual},
        {"singlet_vector", "Delta(E) w00 = Delta(F) w00 = 0", false,
         detail::singlet_vector_residual},
    };
    return registry;
}

inline IdentityReport run_identity(const std::string& name, const IdentityParams& params) {
    for (const auto& def : identity_registry()) {
        if (def.name != name) continue;
        IdentityReport rep;
        rep.identity_name = def.name;
        rep.statement     = def.statement;
        rep.params        = params;
        rep.tolerance     = def.tol_scale * detail::tolerance_for_dim(
            detail::pow_dim(params.two_S + 1, def.uses_N ? params.N : 3));
        try {
            rep.residual = def.residual(params);
            rep.pass     = rep.residual < rep.tolerance;
        } catch (const Error& e) {
            rep.error    = e.what();
            rep.residual = std::numeric_limits<double>::quiet_NaN();
            rep.pass     = false;
        }
        return rep;
    }
    throw UnknownIdentity("no identity registered under '" + name + "'");
}

struct LatticeParams {
    std::vector<int> two_S_values{1, 2, 3};
    std::vector<int> N_values{2, 3, 4};
    std::vector<double> gamma_values{0.1, 0.22, 0.35, 0.41, 0.47};
    std::uint64_t seed = 20091206;
    int jobs           = 1;
};

// Runs every registered identity over the default parameter lattice.
// Two-site identities run once per (S, gamma); identities that use the
// chain length run at every N. Reports are ordered by registration, then
// lattice position.
inline std::vector<IdentityReport> run_all(const LatticeParams& lat = {}) {
    struct Job {
        const IdentityDef* def;
        IdentityParams params;
    };
    std::vector<Job> jobs;
    for (const auto& def : identity_registry()) {
        for (int two_S : lat.two_S_values) {
            for (double gamma : lat.gamma_values) {
                if (def.uses_N) {
                    for (int N : lat.N_values)
                        jobs.push_back({&def, {two_S, N, gamma, lat.seed}});
                } else {
                    jobs.push_back({&def, {two_S, 3, gamma, lat.seed}});
                }
            }
        }
    }
    std::vector<IdentityReport> reports(jobs.size());
    parallel_for(jobs.size(), lat.jobs, [&](std::size_t i) {
        reports[i] = run_identity(jobs[i].def->name, jobs[i].params);
    });
    return reports;
}

inline bool all_pass(const std::vector<IdentityReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

}  // namespace qspin
