#include "ellimod/intlat.hpp"

#include <doctest.h>

#include <random>

using namespace ellimod;

namespace {

IMat random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  IMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = Int(static_cast<long>(rng() % (2 * bound + 1)) - bound);
  return m;
}

IMat random_unimodular(std::mt19937_64& rng, std::size_t n) {
  // Product of elementary row operations on the identity.
  IMat u = IMat::identity(n);
  for (int step = 0; step < 12; ++step) {
    std::size_t a = rng() % n, b = rng() % n;
    if (a == b) continue;
    Int q(static_cast<long>(rng() % 5) - 2);
    for (std::size_t j = 0; j < n; ++j) u(a, j) += q * u(b, j);
  }
  return u;
}

}  // namespace

TEST_CASE("hermite and smith forms on the pinned examples") {
  IMat id2 = IMat::identity(2);
  auto h = hermite_form(id2);
  CHECK(h.h == id2);
  auto s = smith_form(id2);
  CHECK(s.s == id2);

  IMat a2 = {{Int(2), Int(-1)}, {Int(-1), Int(2)}};  // hand reduction gives diag(1,3)
  auto sa = smith_form(a2);
  CHECK(sa.s(0, 0) == 1);
  CHECK(sa.s(1, 1) == 3);

  IMat diag2 = {{Int(2), Int(0)}, {Int(0), Int(2)}};
  auto sd = smith_form(diag2);
  CHECK(sd.s(0, 0) == 2);
  CHECK(sd.s(1, 1) == 2);
}

TEST_CASE("normal form transforms verify on random matrices") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    IMat m = random_matrix(rng, rows, cols, 9);
    auto h = hermite_form(m);  // throws on transform mismatch
    CHECK(h.u * m == h.h);
    auto s = smith_form(m);
    CHECK(s.u * m * s.v == s.s);
    // divisibility chain
    for (std::size_t i = 0; i + 1 < std::min(rows, cols); ++i) {
      if (s.s(i + 1, i + 1) == 0) continue;
      CHECK(mod_floor(s.s(i + 1, i + 1), s.s(i, i) == 0 ? Int(1) : s.s(i, i)) == 0);
    }
  }
}

TEST_CASE("lattice intersection, saturation and quotients") {
  // Z^2 inside (1/2)Z x (1/2)Z has quotient Z_2 x Z_2.
  QMat half = {{make_rat(1, 2), Rat(0)}, {Rat(0), make_rat(1, 2)}};
  Lattice fine = Lattice::from_rows(half);
  Lattice coarse = Lattice::standard(2);
  auto q = quotient_group(fine, coarse);
  REQUIRE(q.divisors.size() == 2);
  CHECK(q.divisors[0] == 2);
  CHECK(q.divisors[1] == 2);

  // saturate (2,4) -> (1,2)
  QMat row24 = {{Rat(2), Rat(4)}};
  Lattice sat = saturate(Lattice::from_rows(row24));
  REQUIRE(sat.rank() == 1);
  CHECK(sat.integer_basis()(0, 0) == 1);
  CHECK(sat.integer_basis()(0, 1) == 2);
  CHECK(sat.denominator() == 1);

  // coweights(A_2) over coroots(A_2) is Z_3.
  QMat coweights = {{make_rat(2, 3), make_rat(1, 3)}, {make_rat(1, 3), make_rat(2, 3)}};
  auto z3 = quotient_group(Lattice::from_rows(coweights), Lattice::standard(2));
  REQUIRE(z3.divisors.size() == 1);
  CHECK(z3.divisors[0] == 3);

  // intersect: Z^2 with the lattice spanned by (1/2,1/2) and (0,1).
  QMat glue = {{make_rat(1, 2), make_rat(1, 2)}, {Rat(0), Rat(1)}};
  Lattice g = Lattice::from_rows(glue);
  Lattice inter = intersect(g, Lattice::standard(2));
  CHECK(inter == Lattice::standard(2));  // integer points of g are all of Z^2

  SUBCASE("quotient requires containment") {
    QMat shifted = {{make_rat(1, 3), Rat(0)}, {Rat(0), Rat(1)}};
    CHECK_THROWS_AS(quotient_group(Lattice::standard(2), Lattice::from_rows(shifted)),
                    input_error);
  }
}

TEST_CASE("lattice operation properties") {
  std::mt19937_64 rng(777);
  std::vector<Lattice> samples;
  for (int t = 0; t < 6; ++t) {
    IMat m = random_matrix(rng, 2 + rng() % 2, 3, 6);
    QMat q(m.rows(), m.cols());
    Int den(1 + static_cast<long>(rng() % 3));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = make_rat(m(i, j), den);
    samples.push_back(Lattice::from_rows(q));
  }
  for (const auto& a : samples) {
    CHECK(saturate(saturate(a)) == saturate(a));
    for (const auto& b : samples) {
      CHECK(intersect(a, b) == intersect(b, a));
      for (const auto& c : samples)
        CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    }
  }
}

TEST_CASE("fixed point counts of torus automorphisms") {
  TorusAutomorphism minus_one{IMat{{Int(-1)}}};
  auto r = fixed_point_report(minus_one, 2);
  CHECK(r.isolated);
  CHECK(r.count == 4);

  TorusAutomorphism id3{IMat::identity(3)};
  auto ri = fixed_point_report(id3, 2);
  CHECK_FALSE(ri.isolated);
  CHECK(ri.fixed_dim == 6);

  // Coxeter element of A_2 in the coroot basis.
  TorusAutomorphism cox{IMat{{Int(0), Int(-1)}, {Int(1), Int(-1)}}};
  auto rc = fixed_point_report(cox, 2);
  CHECK(rc.isolated);
  CHECK(rc.count == 9);

  SUBCASE("count is conjugation invariant") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 20; ++t) {
      IMat g = random_unimodular(rng, 2);
      auto ginv = q_inverse(to_rational(g));
      REQUIRE(ginv);
      auto [gi, den] = clear_denominators(*ginv);
      REQUIRE(den == 1);
      TorusAutomorphism conj{g * cox.m * gi};
      auto rr = fixed_point_report(conj, 2);
      CHECK(rr.isolated == rc.isolated);
      CHECK(rr.count == rc.count);
    }
  }

  SUBCASE("non-unimodular matrices are rejected") {
    CHECK_THROWS_AS(TorusAutomorphism{IMat{{Int(2)}}}, input_error);
  }
}

TEST_CASE("integer solving and kernels") {
  IMat m = {{Int(2), Int(4)}, {Int(1), Int(3)}};
  auto x = solve_integer(m, {Int(2), Int(2)});
  REQUIRE(x);
  CHECK(m * *x == IVec{Int(2), Int(2)});
  CHECK_FALSE(solve_integer(IMat{{Int(2)}}, {Int(1)}));

  IMat k = integer_row_kernel(IMat{{Int(1)}, {Int(2)}});  // rows x with x0 + 2 x1 = 0
  REQUIRE(k.rows() == 1);
  CHECK(k(0, 0) * Int(1) + k(0, 1) * Int(2) == 0);
}
