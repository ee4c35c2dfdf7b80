#include "qspin/relations.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qspin;
using Catch::Approx;

TEST_CASE("registered identities pass at default parameters") {
    const IdentityParams p{2, 3, 0.3, 1};
    for (const auto& def : identity_registry()) {
        const auto rep = run_identity(def.name, p);
        CAPTURE(def.name, rep.residual);
        CHECK(rep.error.empty());
        CHECK(rep.pass);
    }
}

TEST_CASE("yang_baxter report") {
    const auto rep = run_identity("yang_baxter", {2, 3, 0.3, 0});
    CHECK(rep.pass);
    CHECK(rep.residual < 1e-10);
    CHECK(rep.statement.find("R12") != std::string::npos);
}

TEST_CASE("temperley_lieb constant appears as stated") {
    const double g = 0.5;
    const auto rep = run_identity("temperley_lieb", {1, 3, g, 0});
    CHECK(rep.pass);
    // the constant itself: mu = 1/[2]^2 = 1/(4 cos^2 gamma) for spin 1/2
    CHECK(1.0 / std::pow(q_number(2, g), 2) ==
          Approx(1.0 / (4.0 * std::cos(g) * std::cos(g))).epsilon(1e-14));
}

TEST_CASE("uq_relations at gamma = 0 has zero residual") {
    const auto rep = run_identity("uq_relations", {1, 2, 0.0, 0});
    CHECK(rep.pass);
    CHECK(rep.residual < 1e-14);
}

TEST_CASE("unknown identity throws") {
    CHECK_THROWS_AS(run_identity("nonesuch", {}), UnknownIdentity);
}

TEST_CASE("singular gamma is reported, not thrown") {
    // gamma = pi/2 makes the spin-1/2 projector denominators vanish
    const auto rep = run_identity("temperley_lieb", {1, 3, kPi / 2, 0});
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.error.empty());
}

TEST_CASE("negative control: perturbing R breaks yang_baxter") {
    const auto rep = spin_rep({0.3, 1});
    Matrix R = r_matrix(rep, +1).mat;
    DetRng rng(3);
    const Matrix noise = rng.complex_matrix(4, 4, 1e-3);
    R += noise;
    const Matrix R12 = detail::embed_two_site(R, 2, 1, 2, 3);
    const Matrix R13 = detail::embed_two_site(R, 2, 1, 3, 3);
    const Matrix R23 = detail::embed_two_site(R, 2, 2, 3, 3);
    const double residual = relative_residual(R12 * R13 * R23, R23 * R13 * R12);
    CHECK(residual > 1e-4);  // far above the registered tolerance
}

TEST_CASE("residuals respond linearly to input perturbations") {
    const auto rep = spin_rep({0.3, 1});
    const Matrix R0 = r_matrix(rep, +1).mat;
    DetRng rng(4);
    const Matrix direction = rng.complex_matrix(4, 4, 1.0);
    auto residual_at = [&](double delta) {
        const Matrix R = R0 + delta * direction;
        const Matrix R12 = detail::embed_two_site(R, 2, 1, 2, 3);
        const Matrix R13 = detail::embed_two_site(R, 2, 1, 3, 3);
        const Matrix R23 = detail::embed_two_site(R, 2, 2, 3, 3);
        return relative_residual(R12 * R13 * R23, R23 * R13 * R12);
    };
    const double r1 = residual_at(1e-5), r2 = residual_at(1e-6);
    CHECK(r1 / r2 == Approx(10.0).epsilon(0.2));
}

TEST_CASE("reports are bit-for-bit reproducible") {
    const IdentityParams p{1, 3, 0.35, 99};
    const auto a = run_identity("h_symmetry", p);
    const auto b = run_identity("h_symmetry", p);
    CHECK(a.residual == b.residual);
    const auto c = run_identity("det_formula", p);
    const auto d = run_identity("det_formula", p);
    CHECK(c.residual == d.residual);
}

TEST_CASE("run_all on a reduced lattice") {
    LatticeParams lat;
    lat.two_S_values = {1, 2};
    lat.N_values     = {2, 3};
    lat.gamma_values = {0.15, 0.38};
    const auto reports = run_all(lat);
    CHECK(all_pass(reports));
    // two-site identities appear once per (S, gamma); N-dependent ones per N
    std::size_t expected = 0;
    for (const auto& def : identity_registry())
        expected += 2 * 2 * (def.uses_N ? 2 : 1);
    CHECK(reports.size() == expected);
    // registration order is preserved
    CHECK(reports.front().identity_name == identity_registry().front().name);
    CHECK(reports.back().identity_name == identity_registry().back().name);
}
