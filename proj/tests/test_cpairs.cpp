#include "ellimod/cpairs.hpp"

#include <doctest.h>

#include <random>

using namespace ellimod;
using Eigen::MatrixXcd;

TEST_CASE("clock_shift basics") {
  SUBCASE("SU(2): commutator is -I") {
    auto p = clock_shift(2, 1);
    CHECK(unitarity_residual(p) <= kConstructionTol);
    MatrixXcd comm = p.a * p.b * p.a.inverse() * p.b.inverse();
    CHECK(max_entry_norm(comm + MatrixXcd::Identity(2, 2)) <= kConstructionTol);
    CHECK(std::abs(p.a.determinant() - 1.0) <= 1e-10);
    CHECK(std::abs(p.b.determinant() - 1.0) <= 1e-10);
  }
  SUBCASE("SU(3): commutator phase is a primitive cube root") {
    auto p = clock_shift(3, 1);
    CHECK(commutator_residual(p) <= kConstructionTol);
    MatrixXcd comm = p.a * p.b * p.a.inverse() * p.b.inverse();
    std::complex<double> omega = std::polar(1.0, 2.0 * 3.14159265358979323846 / 3.0);
    CHECK(std::abs(comm(0, 0) - omega) <= 1e-12);
  }
  SUBCASE("gcd(n,k) != 1 is refused") {
    CHECK_THROWS_AS(clock_shift(4, 2), input_error);
    CHECK_THROWS_AS(clock_shift(6, 3), input_error);
  }
  SUBCASE("full sweep n <= 8") {
    for (long n = 2; n <= 8; ++n)
      for (long k = 1; k < n; ++k) {
        if (gcd(Int(n), Int(k)) != 1) continue;
        auto p = clock_shift(n, k);
        CHECK(commutator_residual(p) <= kConstructionTol);
        CHECK(commutant_dimension({p.a, p.b}) == 1);
      }
  }
}

TEST_CASE("commutant dimensions") {
  MatrixXcd id2 = MatrixXcd::Identity(2, 2);
  CHECK(commutant_dimension({id2, id2}) == 4);

  MatrixXcd d1 = MatrixXcd::Zero(3, 3), d2 = MatrixXcd::Zero(3, 3);
  d1.diagonal() << 1.0, 2.0, 3.0;
  d2.diagonal() << -1.0, 0.5, 7.0;
  CHECK(commutant_dimension({d1, d2}) == 3);

  SUBCASE("invariance under simultaneous unitary conjugation") {
    std::mt19937_64 rng(2024);
    auto p = clock_shift(3, 1);
    for (int t = 0; t < 5; ++t) {
      MatrixXcd m = MatrixXcd::Random(3, 3);
      Eigen::HouseholderQR<MatrixXcd> qr(m);
      MatrixXcd q = qr.householderQ();
      CHECK(commutant_dimension({q * p.a * q.adjoint(), q * p.b * q.adjoint()}) == 1);
    }
  }
  SUBCASE("size mismatch is an input error") {
    CHECK_THROWS_AS(commutant_dimension({id2, MatrixXcd::Identity(3, 3)}), input_error);
  }
}

TEST_CASE("build_cpair") {
  SUBCASE("GL(2) degree 1: one SU(2) block") {
    auto g = build_group("GL(2)");
    auto jl = jordan_holder_levi(g, degree_from_ints(g, {1}));
    auto p = build_cpair(jl.levi);
    REQUIRE(p.blocks.size() == 1);
    CHECK(p.n == 2);
    MatrixXcd comm = p.a * p.b * p.a.inverse() * p.b.inverse();
    CHECK(max_entry_norm(comm + MatrixXcd::Identity(2, 2)) <= kConstructionTol);
  }
  SUBCASE("GL(4) degree 2: two SU(2) blocks, commutator -I_4") {
    auto g = build_group("GL(4)");
    auto jl = jordan_holder_levi(g, degree_from_ints(g, {2}));
    auto p = build_cpair(jl.levi);
    REQUIRE(p.blocks.size() == 2);
    CHECK(p.n == 4);
    MatrixXcd comm = p.a * p.b * p.a.inverse() * p.b.inverse();
    CHECK(max_entry_norm(comm + MatrixXcd::Identity(4, 4)) <= kConstructionTol);
  }
  SUBCASE("degree 0 is the torus case") {
    auto g = build_group("GL(3)");
    auto jl = jordan_holder_levi(g, degree_from_ints(g, {0}));
    auto p = build_cpair(jl.levi);
    CHECK(p.torus_case());
  }
  SUBCASE("adjoined generic Higgs matrix cuts the commutant to the block count") {
    // On the GL(n) family the commutant of {a, b, z} has dimension gcd(n, d),
    // the number of blocks and the lattice rank.
    for (long n = 2; n <= 6; ++n)
      for (long d = 0; d < n; ++d) {
        long h = to_long(gcd(Int(n), Int(d)));
        if (h == n && d != 0) continue;
        auto g = build_group("GL(" + std::to_string(n) + ")");
        auto jl = jordan_holder_levi(g, degree_from_ints(g, {d}));
        auto p = build_cpair(jl.levi);
        if (p.torus_case()) continue;  // d = 0
        std::vector<std::complex<double>> coords;
        for (int i = 0; i < jl.levi.rank(); ++i)
          coords.emplace_back(0.917 + i, -0.413 * (i + 1));  // generic values
        auto higgs = make_higgs(g, jl.levi, coords);
        CHECK(commutant_dimension({p.a, p.b, higgs.z}) == static_cast<int>(h));
        CHECK(static_cast<long>(p.blocks.size()) == h);
        CHECK(jl.levi.rank() == static_cast<int>(h));
      }
  }
}

TEST_CASE("splitting residuals") {
  MatrixXcd d2 = MatrixXcd::Zero(2, 2);
  d2.diagonal() << 1.0, -1.0;
  CHECK(verify_splitting(d2) == 0.0);

  MatrixXcd dc = MatrixXcd::Zero(2, 2);
  dc.diagonal() << std::complex<double>(1, 1), std::complex<double>(-1, -1);
  CHECK(verify_splitting(dc) <= 1e-15);

  // Negative control: a nilpotent is not a valid Higgs representative and the
  // residual sees it.
  MatrixXcd nil = MatrixXcd::Zero(2, 2);
  nil(0, 1) = 1.0;
  CHECK(verify_splitting(nil) > 0.5);

  SUBCASE("generated representatives are exactly normal") {
    auto g = build_group("GL(3)");
    auto jl = jordan_holder_levi(g, degree_from_ints(g, {1}));
    auto h = make_higgs(g, jl.levi, {{0.3, 0.7}});
    CHECK(verify_splitting(h) <= kConstructionTol);
    CHECK(h.z.rows() == 3);
    // central coordinate folded onto the diagonal for z = 1: trace/n recovers it
  }
  SUBCASE("non type-A ambient groups are refused") {
    auto g = build_group("Spin(7)");
    auto jl = jordan_holder_levi(g, degree_from_ints(g, {0}));
    CHECK_THROWS_AS(make_higgs(g, jl.levi, std::vector<std::complex<double>>(3, 0.0)),
                    input_error);
  }
}
