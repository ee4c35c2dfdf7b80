#include "qspin/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace qspin;

TEST_CASE("spin strings parse exactly") {
    CHECK(parse_spin_string("1/2") == 1);
    CHECK(parse_spin_string("1") == 2);
    CHECK(parse_spin_string("3/2") == 3);
    CHECK(parse_spin_string("2") == 4);
    CHECK(parse_spin_string("5/2") == 5);
    CHECK_THROWS_AS(parse_spin_string("0.5"), DomainError);
    CHECK_THROWS_AS(parse_spin_string("1/3"), DomainError);
    CHECK_THROWS_AS(parse_spin_string("-1/2"), DomainError);
    CHECK_THROWS_AS(parse_spin_string("spin"), DomainError);
    CHECK(spin_to_string(3) == "3/2");
    CHECK(spin_to_string(4) == "2");
}

TEST_CASE("chain spec round trip") {
    const json doc = {{"S", "1/2"},
                      {"N", 4},
                      {"gamma", 0.3},
                      {"coupling", {{"type", "single_s"}, {"s", 0}, {"a", {1.0, -1.0, 1.0}}}}};
    const ChainSpec spec = parse_chain_spec(doc);
    CHECK(spec.params.two_S == 1);
    CHECK(spec.N == 4);
    const ChainSpec back = parse_chain_spec(chain_spec_to_json(spec));
    CHECK((hamiltonian(spec).mat - hamiltonian(back).mat).norm() == 0.0);

    const json gen = {{"S", "1"},
                      {"N", 3},
                      {"gamma", 0.25},
                      {"coupling", {{"type", "general"}, {"b", {{0.0, 1.0, 0.5}, {1.0, 0.0, 0.0}}}}}};
    const ChainSpec gspec = parse_chain_spec(gen);
    CHECK_FALSE(gspec.coupling.is_single());
    const ChainSpec gback = parse_chain_spec(chain_spec_to_json(gspec));
    CHECK((hamiltonian(gspec).mat - hamiltonian(gback).mat).norm() == 0.0);
}

TEST_CASE("malformed chain specs are rejected") {
    CHECK_THROWS_AS(parse_chain_spec(json{{"S", "1/2"}}), DomainError);
    CHECK_THROWS_AS(parse_chain_spec(json{{"S", "1/2"},
                                          {"N", 3},
                                          {"gamma", 0.3},
                                          {"coupling", {{"type", "weird"}}}}),
                    DomainError);
    // wrong bond count
    CHECK_THROWS_AS(parse_chain_spec(json{{"S", "1/2"},
                                          {"N", 3},
                                          {"gamma", 0.3},
                                          {"coupling", {{"type", "single_s"}, {"s", 0}, {"a", {1.0}}}}}),
                    DomainError);
}

TEST_CASE("matrix json round trip") {
    DetRng rng(2);
    const Matrix m = rng.complex_matrix(5, 5);
    const Matrix back = matrix_from_json(matrix_to_json(m));
    CHECK((m - back).norm() == 0.0);
}

TEST_CASE("scan csv is parseable and ordered") {
    ChainSpec spec;
    spec.params = {0.3, 1};
    spec.N      = 3;
    spec.coupling.value = CouplingSchedule::SingleS{0, {1.0, -1.0}};
    auto family = [&](double g) {
        ChainSpec varied    = spec;
        varied.params.gamma = g;
        return hamiltonian(varied);
    };
    ScanOptions opt;
    opt.grid_points = 25;
    const auto scan = reality_boundary(family, 1.4, opt);
    std::ostringstream csv;
    write_scan_csv(csv, scan);
    std::istringstream in(csv.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "gamma,max_abs_imag,is_real");
    int rows = 0;
    double prev = -1.0;
    std::string line;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double g = std::stod(line.substr(0, comma));
        CHECK(g > prev);
        prev = g;
        ++rows;
    }
    CHECK(rows == 25);

    const json j = to_json(scan);
    CHECK(j.contains("boundary"));
    CHECK(j.contains("bracket"));
    CHECK(j["curve"].size() == 25);
}

TEST_CASE("report serializations carry the required fields") {
    const auto rep = run_identity("yang_baxter", {1, 3, 0.3, 5});
    const json j = to_json(rep);
    for (const char* key : {"identity_name", "statement", "residual", "tolerance", "pass", "params"})
        CHECK(j.contains(key));
    CHECK(j["params"]["S"] == "1/2");

    const auto c3 = conjecture3_support(1, 3, 5, 11);
    const json jc = to_json(c3);
    CHECK(jc["trials"] == 5);
    CHECK(jc["seed"] == 11);
    CHECK(jc.contains("counterexamples"));

    const auto sp = spectrum_of(Matrix::Identity(3, 3));
    const json js = to_json(sp);
    CHECK(js["is_real"] == true);
    CHECK(js["eigenvalues"].size() == 3);
}
