#include "qspin/spectral.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qspin;
using Catch::Approx;

namespace {

ChainOperator three_site(int two_S, int s, double a1, double a2, double g) {
    ChainSpec spec;
    spec.params = {g, two_S};
    spec.N      = 3;
    spec.coupling.value = CouplingSchedule::SingleS{s, {a1, a2}};
    return hamiltonian_single_s(spec);
}

ChainOperator chain_with(int two_S, int N, int s, std::vector<double> a, double g) {
    ChainSpec spec;
    spec.params = {g, two_S};
    spec.N      = N;
    spec.coupling.value = CouplingSchedule::SingleS{s, std::move(a)};
    return hamiltonian_single_s(spec);
}

Matrix hb_matrix(double theta, double z) {
    Matrix H(2, 2);
    H(0, 0) = std::polar(1.0, theta) * std::sinh(z);
    H(1, 1) = std::polar(1.0, -theta) * std::sinh(z);
    H(0, 1) = H(1, 0) = std::sin(theta) * std::cosh(z);
    return H;
}

double mu_of(int two_S, double g) { return 1.0 / std::pow(q_number(two_S + 1, g), 2); }

}  // namespace

TEST_CASE("spectrum basics") {
    const Matrix id = Matrix::Identity(5, 5);
    const auto rep = spectrum_of(id);
    CHECK(rep.is_real);
    for (Complex v : rep.eigenvalues) CHECK(std::abs(v - 1.0) < 1e-14);
    REQUIRE(rep.clusters.size() == 1);
    CHECK(rep.clusters[0].second == 5);

    // the two-level non-Hermitian example with a real spectrum
    const double theta = 0.5, z = 0.3;
    const auto hb = spectrum_of(hb_matrix(theta, z));
    CHECK(hb.is_real);
    const double lm = std::cos(theta) * std::sinh(z) - std::sin(theta);
    const double lp = std::cos(theta) * std::sinh(z) + std::sin(theta);
    CHECK(std::abs(hb.eigenvalues[0] - lm) < 1e-12);
    CHECK(std::abs(hb.eigenvalues[1] - lp) < 1e-12);

    Matrix anti = Matrix::Zero(2, 2);
    anti(0, 0) = Complex(0, 1);
    anti(1, 1) = Complex(0, -1);
    CHECK_FALSE(spectrum_of(anti).is_real);

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(spectrum_of(bad), DomainError);
}

TEST_CASE("spectrum multiplicities sum to the dimension") {
    DetRng rng(3);
    const Matrix A = rng.complex_matrix(12, 12);
    const auto rep = spectrum_of(A);
    int total = 0;
    for (const auto& [center, mult] : rep.clusters) total += mult;
    CHECK(total == 12);
    CHECK(std::is_sorted(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                         [](Complex a, Complex b) {
                             if (a.real() != b.real()) return a.real() < b.real();
                             return a.imag() < b.imag();
                         }));
}

TEST_CASE("minimal polynomial of simple cases") {
    {
        const auto H = chain_with(2, 2, 1, {1.4}, 0.3);
        const auto mp = minimal_polynomial(H);
        REQUIRE(mp.distinct_roots.size() == 2);
        CHECK(std::abs(mp.distinct_roots[0]) < 1e-10);
        CHECK(std::abs(mp.distinct_roots[1] - 1.4) < 1e-10);
        CHECK(mp.residual < 1e-10);
    }
    {
        const double g = 0.3, a1 = 1.0, a2 = 2.0;
        const auto mp = minimal_polynomial(three_site(1, 0, a1, a2, g));
        const double mu = 1.0 / (4.0 * std::cos(g) * std::cos(g));
        const Complex disc =
            std::sqrt(Complex((a1 + a2) * (a1 + a2) - 4 * a1 * a2 * (1 - mu), 0.0));
        REQUIRE(mp.distinct_roots.size() == 3);
        CHECK(std::abs(mp.distinct_roots[0]) < 1e-9);
        CHECK(std::abs(mp.distinct_roots[1] - 0.5 * (3.0 - disc.real())) < 1e-9);
        CHECK(std::abs(mp.distinct_roots[2] - 0.5 * (3.0 + disc.real())) < 1e-9);
    }
    {
        const auto mp = minimal_polynomial_of(Matrix::Zero(6, 6));
        REQUIRE(mp.distinct_roots.size() == 1);
        CHECK(std::abs(mp.distinct_roots[0]) < 1e-14);
    }
}

TEST_CASE("minimal polynomial rejects defective input") {
    Matrix jordan = Matrix::Identity(2, 2);
    jordan(0, 1) = 1.0;
    CHECK_THROWS_AS(minimal_polynomial_of(jordan), NotDiagonalizable);
}

TEST_CASE("extract_dk matches the closed forms") {
    struct Case {
        int two_S, s;
        double gamma;
    };
    const Case cases[] = {{1, 0, 0.35}, {2, 0, 0.3},  {2, 1, 0.3},  {2, 2, 0.3},
                          {3, 0, 0.25}, {3, 1, 0.25}, {3, 2, 0.22}, {3, 3, 0.25}};
    for (const auto& c : cases) {
        CAPTURE(c.two_S, c.s, c.gamma);
        const auto extracted = extract_dk(c.two_S, c.s, c.gamma);
        const auto closed = dk_closed_forms(c.two_S, c.s, c.gamma);
        REQUIRE(closed.has_value());
        std::vector<bool> used(extracted.size(), false);
        for (double want : *closed) {
            bool hit = false;
            for (std::size_t i = 0; i < extracted.size(); ++i) {
                if (!used[i] && std::abs(extracted[i] - want) < 1e-8 * std::max(1.0, want)) {
                    used[i] = hit = true;
                    break;
                }
            }
            CHECK(hit);
        }
        // anything beyond the tabulated list must be the exact unit factor
        for (std::size_t i = 0; i < extracted.size(); ++i)
            if (!used[i]) CHECK(std::abs(extracted[i] - 1.0) < 1e-8);
    }
}

TEST_CASE("extract_dk finds the exact-unit coefficient at s = 2S") {
    const auto d = extract_dk(2, 2, 0.31);
    bool has_unit = false;
    for (double v : d) has_unit = has_unit || std::abs(v - 1.0) < 1e-10;
    CHECK(has_unit);
}

TEST_CASE("extract_dk specific closed-form values") {
    const double g = 0.3;
    {
        // S=1, s=1: 1/{2}^2 and ({3}/({1}{2}))^2
        const auto d = extract_dk(2, 1, g);
        const double d1 = 1.0 / std::pow(q_bracket(2, g), 2);
        const double d2 = std::pow(q_bracket(3, g) / (q_bracket(1, g) * q_bracket(2, g)), 2);
        REQUIRE(d.size() == 3);  // includes the singlet-sector unit factor
        CHECK(std::abs(d[0] - d2) < 1e-10);
        CHECK(std::abs(d[1] - d1) < 1e-10);
        CHECK(std::abs(d[2] - 1.0) < 1e-10);
    }
    {
        // S=3/2, s=3 includes (1/({2}{3}[5]))^2
        const double g2 = 0.25;
        const auto d = extract_dk(3, 3, g2);
        const double want =
            std::pow(1.0 / (q_bracket(2, g2) * q_bracket(3, g2) * q_number(5, g2)), 2);
        bool hit = false;
        for (double v : d) hit = hit || std::abs(v - want) < 1e-9;
        CHECK(hit);
    }
}

TEST_CASE("quadratic factors with tabulated coefficients cover the spectrum") {
    DetRng rng(31);
    for (int two_S : {2, 3}) {
        for (int s = 0; s <= two_S; ++s) {
            int done = 0;
            while (done < 20) {
                const double a1 = rng.uniform(-2.0, 2.0), a2 = rng.uniform(-2.0, 2.0);
                if (std::abs(a1) < 0.1 || std::abs(a2) < 0.1) continue;
                const auto gammas = dk_sample_gammas(two_S, s, 1, rng.uniform_int(1, 1 << 20));
                if (gammas.empty()) continue;
                const double g = gammas[0];
                ++done;
                auto ds = *dk_closed_forms(two_S, s, g);
                ds.push_back(1.0);  // one-dimensional total-spin sectors contribute this factor
                std::vector<Complex> roots{0.0};
                for (double d : ds) {
                    const Complex disc = std::sqrt(
                        Complex((a1 + a2) * (a1 + a2) - 4 * a1 * a2 * (1 - d), 0.0));
                    roots.push_back(0.5 * ((a1 + a2) + disc));
                    roots.push_back(0.5 * ((a1 + a2) - disc));
                }
                const auto H = three_site(two_S, s, a1, a2, g);
                for (Complex lam : spectrum(H).eigenvalues) {
                    double dist = 1e300;
                    for (Complex r : roots) dist = std::min(dist, std::abs(lam - r));
                    CHECK(dist < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("N=4 palindromic minimal polynomial factorization") {
    DetRng rng(17);
    for (int two_S : {1, 2, 3}) {
        const double gmax = 0.9 * kPi / (two_S + 2.0);
        for (int trial = 0; trial < 4; ++trial) {
            const double a1 = rng.uniform(-2.0, 2.0), a2 = rng.uniform(-2.0, 2.0);
            const double g = rng.uniform(0.05, gmax);
            if (std::abs(a1) < 0.1 || std::abs(a2) < 0.1) continue;
            const auto H = chain_with(two_S, 4, 0, {a1, a2, a1}, g);
            const double mu = mu_of(two_S, g);
            std::vector<Complex> roots{0.0, a1};
            auto quad = [&](double b, double c) {
                const Complex disc = std::sqrt(Complex(b * b - 4 * c, 0.0));
                roots.push_back(0.5 * (b + disc));
                roots.push_back(0.5 * (b - disc));
            };
            quad(a1 + a2, a1 * a2 * (1 - 2 * mu));
            quad(2 * a1 + a2, 2 * a1 * a2 * (1 - mu));
            for (Complex lam : spectrum(H).eigenvalues) {
                double dist = 1e300;
                for (Complex r : roots) dist = std::min(dist, std::abs(lam - r));
                CHECK(dist < 1e-8);
            }
        }
    }
}

TEST_CASE("N=5 alternating bi-quadratic factorization") {
    DetRng rng(19);
    for (int two_S : {1, 2}) {
        for (int trial = 0; trial < 3; ++trial) {
            const double a = rng.uniform(0.3, 1.8);
            const double g = rng.uniform(0.05, 0.9 * kPi / (two_S + 2.0));
            const auto H = chain_with(two_S, 5, 0, {a, -a, a, -a}, g);
            const double mu = mu_of(two_S, g);
            std::vector<Complex> roots{0.0};
            auto biquad = [&](double c2, double c0) {
                const Complex disc = std::sqrt(Complex(c2 * c2 - 4 * c0, 0.0));
                for (Complex r2 : {0.5 * (-c2 + disc), 0.5 * (-c2 - disc)}) {
                    const Complex r = std::sqrt(r2);
                    roots.push_back(r);
                    roots.push_back(-r);
                }
            };
            biquad(a * a * (3 * mu - 2), std::pow(a, 4) * (mu * mu - 3 * mu + 1));
            biquad(a * a * (6 * mu - 5), std::pow(a, 4) * (5 * mu * mu - 10 * mu + 4));
            for (Complex lam : spectrum(H).eigenvalues) {
                double dist = 1e300;
                for (Complex r : roots) dist = std::min(dist, std::abs(lam - r));
                CHECK(dist < 1e-8);
            }
        }
    }
}

TEST_CASE("three-site reality criterion sign test") {
    DetRng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int two_S = rng.uniform_int(1, 3);
        const double a1 = rng.uniform(-2.0, 2.0), a2 = rng.uniform(-2.0, 2.0);
        const double g = rng.uniform(0.05, 0.95 * kPi / (two_S + 2.0) * 1.4);
        if (two_S * g >= 0.98 * kPi) continue;
        if (std::abs(a1 * a2) < 0.05) continue;
        ChainOperator H{};
        try {
            H = three_site(two_S, 0, a1, a2, g);
        } catch (const SingularGamma&) {
            continue;
        }
        const double disc = (a1 - a2) * (a1 - a2) + 4 * a1 * a2 * mu_of(two_S, g);
        if (std::abs(disc) < 1e-3) continue;  // too close to the boundary to classify
        CHECK(spectrum(H).is_real == (disc > 0.0));
    }
}

TEST_CASE("positive products keep three-site spectra real") {
    DetRng rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        const int two_S = rng.uniform_int(1, 3);
        const double a1 = rng.uniform(0.05, 2.0), a2 = rng.uniform(0.05, 2.0);
        const double sgn = rng.uniform() < 0.5 ? 1.0 : -1.0;
        const double g = rng.uniform(0.05, 0.95 * kPi / two_S);
        ChainOperator H{};
        try {
            H = three_site(two_S, 0, sgn * a1, sgn * a2, g);
        } catch (const SingularGamma&) {
            continue;
        }
        CHECK(spectrum(H).is_real);
    }
}

TEST_CASE("reality boundary of the alternating three-site chain") {
    auto family = [](double g) { return three_site(1, 0, 1.0, -1.0, g); };
    ScanOptions opt;
    opt.grid_points = 60;
    opt.resolution  = 1e-4;
    const auto scan = reality_boundary(family, 1.5, opt);
    REQUIRE(scan.boundary.has_value());
    CHECK(*scan.boundary == Approx(kPi / 3).margin(1e-3));
    CHECK(scan.boundary_bracket.first <= *scan.boundary);
    CHECK(scan.boundary_bracket.second >= *scan.boundary);
    CHECK(scan.boundary_bracket.second - scan.boundary_bracket.first <= 2e-4);
    CHECK(!scan.transitions.empty());
}

TEST_CASE("reality boundary absent for positive couplings") {
    auto family = [](double g) { return three_site(1, 0, 1.0, 0.8, g); };
    ScanOptions opt;
    opt.grid_points = 40;
    const auto scan = reality_boundary(family, 1.2, opt);
    CHECK_FALSE(scan.boundary.has_value());
    CHECK_THROWS_AS(reality_boundary(family, 0.0, opt), DomainError);
}

TEST_CASE("reality boundary records skipped singular points") {
    // S=3/2 s=0 has a singular construction at gamma = pi/4; center the grid
    // there so the midpoint lands inside the guard window
    auto family = [](double g) { return three_site(3, 0, 1.0, 0.5, g); };
    ScanOptions opt;
    opt.grid_points = 101;
    opt.gamma_min   = kPi / 4 - 0.05;
    const auto scan = reality_boundary(family, kPi / 4 + 0.05, opt);
    bool near_pole = false;
    for (double g : scan.skipped_gammas) near_pole = near_pole || std::abs(g - kPi / 4) < 1e-6;
    CHECK(near_pole);
    CHECK_FALSE(scan.boundary.has_value());  // positive couplings stay real
}

TEST_CASE("chebyshev recurrence matches the sine-ratio identity") {
    for (int n : {1, 2, 3, 4}) {
        for (double g : {0.1, 0.3, 0.6}) {
            CHECK(chebyshev_u(n, std::cos(g)) ==
                  Approx(std::sin((n + 1) * g) / std::sin(g)).epsilon(1e-12));
        }
    }
}

TEST_CASE("chebyshev boundary closed values") {
    CHECK(chebyshev_boundary(1, 3) == Approx(kPi / 3).margin(1e-10));
    CHECK(chebyshev_boundary(1, 4) == Approx(kPi / 4).margin(1e-10));
    CHECK(chebyshev_boundary(1, 5) == Approx(kPi / 5).margin(1e-10));
    CHECK(chebyshev_boundary(1, 7) == Approx(kPi / 7).margin(1e-10));
    CHECK(chebyshev_boundary(2, 4) ==
          Approx(std::acos(std::sqrt(1.0 + std::sqrt(2.0)) / 2.0)).margin(1e-10));
    CHECK(chebyshev_boundary(2, 4) == Approx(0.217 * kPi).margin(1e-3));
    CHECK(chebyshev_boundary(3, 5) == Approx(0.172 * kPi).margin(1e-3));
    CHECK_THROWS_AS(chebyshev_boundary(1, 2), DomainError);
}

TEST_CASE("conjecture 1 support on a reduced budget") {
    const auto report = conjecture1_support(8, 42);
    CHECK(report.supported);
    // the predicted bounds include the tabulated ones
    for (const auto& c : report.cases) {
        if (c.two_S == 2 && c.s == 1) CHECK(c.bound == Approx(kPi / 6));
        if (c.two_S == 3 && c.s == 1) CHECK(c.bound == Approx(kPi / 7));
        if (c.two_S == 3 && c.s == 2) CHECK(c.bound == Approx(kPi / 9));
    }
}

TEST_CASE("conjecture 2 support for short chains") {
    const auto report = conjecture2_support(4, 1e-4);
    CHECK(report.max_abs_diff < 2e-3);
}

TEST_CASE("conjecture 3 support on a reduced budget") {
    const auto report = conjecture3_support(1, 3, 30, 7);
    CHECK(report.real_count == 30);
    CHECK(report.counterexamples.empty());
    // reproducibility: same seed, same counts
    const auto again = conjecture3_support(1, 3, 30, 7);
    CHECK(again.real_count == report.real_count);
}
