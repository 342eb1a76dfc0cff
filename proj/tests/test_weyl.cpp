#include "ellimod/weyl.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace ellimod;

TEST_CASE("make_dominant") {
  auto a1 = build_root_datum(parse_cartan_types("A1"));
  SUBCASE("dominant input is a fixed point") {
    auto [v, w] = make_dominant(a1, {Rat(2)});
    CHECK(v == QVec{Rat(2)});
    CHECK(w.is_identity());
    CHECK(w.word.empty());
  }
  SUBCASE("one reflection") {
    auto [v, w] = make_dominant(a1, {Rat(-3)});
    CHECK(v == QVec{Rat(3)});
    CHECK(w.word == std::vector<int>{0});
  }
  SUBCASE("post-conditions on random A3 vectors") {
    auto a3 = build_root_datum(parse_cartan_types("A3"));
    std::mt19937_64 rng(4242);
    for (int t = 0; t < 50; ++t) {
      QVec v(3);
      for (auto& x : v) x = make_rat(static_cast<long>(rng() % 41) - 20, 1 + rng() % 7);
      auto [dom, w] = make_dominant(a3, v);
      // w * v == dom
      QVec image(3, Rat(0));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) image[i] += Rat(w.m(i, j)) * v[j];
      CHECK(image == dom);
      for (int i = 0; i < 3; ++i) {
        IVec alpha(3, Int(0));
        alpha[i] = 1;
        CHECK(a3.pairing(alpha, dom) >= 0);
      }
      // the stored word multiplies out to the matrix
      IMat prod = IMat::identity(3);
      for (int g : w.word) prod = prod * simple_reflection_matrix(a3, g);
      CHECK(prod == w.m);
    }
  }
}

TEST_CASE("Weyl enumeration") {
  auto a2 = build_root_datum(parse_cartan_types("A2"));
  auto all = enumerate_weyl_vec(a2, Int(100));
  CHECK(all.size() == 6);
  std::set<IMat> distinct;
  for (const auto& w : all) {
    distinct.insert(w.m);
    CHECK(preserves_root_set(a2, w.m));
    IMat prod = IMat::identity(2);
    for (int g : w.word) prod = prod * simple_reflection_matrix(a2, g);
    CHECK(prod == w.m);
  }
  CHECK(distinct.size() == 6);

  auto a1a1 = build_root_datum(parse_cartan_types("A1xA1"));
  CHECK(enumerate_weyl_vec(a1a1, Int(100)).size() == 4);

  SUBCASE("E6 count matches the classical order") {
    auto e6 = build_root_datum(parse_cartan_types("E6"));
    std::size_t n = 0;
    enumerate_weyl(e6, default_weyl_cap(), [&](const IMat&) { ++n; });
    CHECK(n == 51840);
  }

  SUBCASE("cap refusal names the order") {
    auto a3 = build_root_datum(parse_cartan_types("A3"));
    CHECK_THROWS_WITH_AS(enumerate_weyl_vec(a3, Int(10)),
                         doctest::Contains("|W| = 24"), input_error);
  }
}

TEST_CASE("omega_c") {
  SUBCASE("trivial centre element gives the identity") {
    for (auto name : {"A2", "B2", "G2", "A1xA1"}) {
      auto rd = build_root_datum(parse_cartan_types(name));
      auto center = center_of_simply_connected(rd);
      IVec c(center.num_generators(), Int(0));
      auto om = omega_c(rd, center, c);
      CHECK(om.omega.is_identity());
    }
  }
  SUBCASE("A1 nontrivial is the reflection") {
    auto a1 = build_root_datum(parse_cartan_types("A1"));
    auto center = center_of_simply_connected(a1);
    auto om = omega_c(a1, center, {Int(1)});
    CHECK(om.omega.m == IMat{{Int(-1)}});
  }
  SUBCASE("generators of Z_n act without fixed vectors on A_{n-1}") {
    for (int n = 2; n <= 6; ++n) {
      auto rd = build_root_datum({CartanType('A', n - 1)});
      auto center = center_of_simply_connected(rd);
      auto om = omega_c(rd, center, {Int(1)});
      CHECK(fixed_subspace(om.omega.m).rows() == 0);
    }
  }
  SUBCASE("composition law against independent per-element computation") {
    for (auto name : {"A1", "A2", "A3", "B2", "B3", "C3", "D3"}) {
      auto rd = build_root_datum(parse_cartan_types(name));
      auto center = center_of_simply_connected(rd);
      std::vector<IVec> elements;
      IVec cur(center.num_generators(), Int(0));
      while (true) {
        elements.push_back(cur);
        std::size_t p = 0;
        for (; p < cur.size(); ++p) {
          cur[p] += 1;
          if (cur[p] < center.group.divisors[p]) break;
          cur[p] = 0;
        }
        if (p == cur.size()) break;
      }
      for (const auto& c1 : elements)
        for (const auto& c2 : elements) {
          auto om1 = omega_c(rd, center, c1);
          auto om2 = omega_c(rd, center, c2);
          auto om12 = omega_c(rd, center, center.reduce(vec_add(c1, c2)));
          CHECK(om12.omega.m == om1.omega.m * om2.omega.m);
          // a_{c1 c2} = a_{c1} + omega_{c1}(a_{c2}) as exact vectors
          QVec expected = om1.a_c;
          for (int i = 0; i < rd.rank(); ++i)
            for (int j = 0; j < rd.rank(); ++j)
              if (om1.omega.m(i, j) != 0) expected[i] += Rat(om1.omega.m(i, j)) * om2.a_c[j];
          CHECK(om12.a_c == expected);
        }
    }
  }
}

TEST_CASE("alcove vertices satisfy the wall inequalities with the right equality count") {
  for (auto name : {"A2", "B2", "G2", "C3", "A2xB2"}) {
    auto rd = build_root_datum(parse_cartan_types(name));
    for (std::size_t f = 0; f < rd.factors.size(); ++f) {
      Alcove a = fundamental_alcove(rd, static_cast<int>(f));
      CHECK(a.vertices.rows() == static_cast<std::size_t>(rd.factors[f].rank) + 1);
      for (std::size_t i = 0; i < a.vertices.rows(); ++i) {
        QVec v = a.vertices.row(i);
        int equalities = 0;
        for (const auto& [alpha, level] : a.walls) {
          Rat p = rd.pairing(alpha, v);
          if (level == 0) {
            CHECK(p >= 0);
            if (p == 0) ++equalities;
          } else {
            CHECK(p <= 1);
            if (p == 1) ++equalities;
          }
        }
        CHECK(equalities == rd.factors[f].rank);
      }
    }
  }
}

TEST_CASE("fixed subspaces") {
  auto a2 = build_root_datum(parse_cartan_types("A2"));
  CHECK(fixed_subspace(IMat::identity(2)).rows() == 2);
  auto a1 = build_root_datum(parse_cartan_types("A1"));
  CHECK(fixed_subspace(simple_reflection_matrix(a1, 0)).rows() == 0);
  IMat cox = simple_reflection_matrix(a2, 0) * simple_reflection_matrix(a2, 1);
  CHECK(fixed_subspace(cox).rows() == 0);
  // s_1 on A2 fixes a line, saturated.
  IMat fix = fixed_subspace(simple_reflection_matrix(a2, 0));
  REQUIRE(fix.rows() == 1);
  CHECK(gcd(fix(0, 0), fix(0, 1)) == 1);
}

TEST_CASE("levi_and_wc on the pinned data") {
  SUBCASE("GL(2)-shaped datum") {
    auto a1 = build_root_datum(parse_cartan_types("A1"));
    auto center = center_of_simply_connected(a1);
    auto om = omega_c(a1, center, {Int(1)});
    auto levi = levi_and_wc(a1, 1, om.omega, om.a_c, {Int(1)});
    CHECK(levi.rank() == 1);
    CHECK(levi.w_c.size() == 1);
    REQUIRE(levi.d_c_factors.size() == 1);
    CHECK(levi.d_c_factors[0].type.name() == "A1");
    CHECK(levi.s_basis.rows() == 1);  // s_c is the central line
    CHECK(levi.levi_roots.size() == 1);
  }
  SUBCASE("GL(4)-shaped datum at the square of the generator") {
    auto a3 = build_root_datum(parse_cartan_types("A3"));
    auto center = center_of_simply_connected(a3);
    auto om = omega_c(a3, center, {Int(2)});
    auto levi = levi_and_wc(a3, 1, om.omega, om.a_c, {Int(2)});
    CHECK(levi.rank() == 2);
    CHECK(levi.w_c.size() == 2);
    REQUIRE(levi.d_c_factors.size() == 2);
    for (const auto& f : levi.d_c_factors) {
      CHECK(f.type.name() == "A1");
      CHECK(f.p_class == IVec{Int(1)});  // (-1,-1), each generating Z_2
    }
  }
  SUBCASE("trivial centre element recovers the full Weyl group") {
    auto a2 = build_root_datum(parse_cartan_types("A2"));
    WeylElement id{IMat::identity(2), {}};
    auto levi = levi_and_wc(a2, 0, id, QVec(2, Rat(0)), {Int(0)});
    CHECK(levi.levi_roots.empty());
    CHECK(levi.d_c_factors.empty());
    CHECK(levi.rank() == 2);
    CHECK(levi.w_c.size() == 6);
    // faithful: all matrices distinct, identity first
    std::set<IMat> distinct(levi.w_c.begin(), levi.w_c.end());
    CHECK(distinct.size() == 6);
    CHECK(levi.w_c.front().is_identity());
  }
}

TEST_CASE("levi_and_wc on B2 at the nontrivial centre element") {
  // Hand computation in so(5) coordinates: a_c = e1, omega_c is the sign flip
  // of the first coordinate, the Levi system is the short root pair {±e1},
  // the stabilizer of span(e2) is the diagonal sign group of order 4, and
  // F_c = Z e2 / Z 2e2.
  auto b2 = build_root_datum(parse_cartan_types("B2"));
  auto center = center_of_simply_connected(b2);
  auto om = omega_c(b2, center, {Int(1)});
  CHECK(fixed_subspace(om.omega.m).rows() == 1);
  auto levi = levi_and_wc(b2, 0, om.omega, om.a_c, {Int(1)});
  CHECK(levi.rank() == 1);
  CHECK(levi.w_c.size() == 2);
  CHECK(levi.stabilizer_order == 4);
  CHECK(levi.w_levi_order == 2);
  REQUIRE(levi.d_c_factors.size() == 1);
  CHECK(levi.d_c_factors[0].type.name() == "A1");
  CHECK(levi.d_c_factors[0].p_class == IVec{Int(1)});
  CHECK(levi.f_c.divisors == std::vector<Int>{Int(2)});
  CHECK(levi.p_c_in_s_c);  // c = exp(e2) lands on the centre torus even untwisted
  CHECK(levi.p_c_in_f_c == IVec{Int(1)});
}

TEST_CASE("fixed dimension of omega_c on A_{n-1} is gcd(n,k) - 1") {
  for (int n = 2; n <= 7; ++n) {
    auto rd = build_root_datum({CartanType('A', n - 1)});
    auto center = center_of_simply_connected(rd);
    for (long k = 0; k < n; ++k) {
      auto om = omega_c(rd, center, {Int(k)});
      Int expected = gcd(Int(n), Int(k)) - 1;
      CHECK_MESSAGE(Int(static_cast<long>(fixed_subspace(om.omega.m).rows())) == expected,
                    "A", n - 1, " k=", k);
    }
  }
}

TEST_CASE("point centralizers") {
  auto a2 = build_root_datum(parse_cartan_types("A2"));
  WeylElement id{IMat::identity(2), {}};
  auto levi = levi_and_wc(a2, 0, id, QVec(2, Rat(0)), {Int(0)});

  SUBCASE("zero is fixed by everything") {
    auto cent = point_centralizer(levi.w_c, QVec(2, Rat(0)), QVec(2, Rat(0)));
    CHECK(cent.size() == levi.w_c.size());
  }
  SUBCASE("sign group on rank one") {
    std::vector<IMat> pm = {IMat::identity(1), IMat{{Int(-1)}}};
    auto cent = point_centralizer(pm, {Rat(1)}, {Rat(0)});
    CHECK(cent.size() == 1);
  }
  SUBCASE("regular points have trivial centralizer") {
    auto cent = point_centralizer(levi.w_c, {make_rat(7, 3), make_rat(1, 5)}, {Rat(0), Rat(2)});
    CHECK(cent.size() == 1);
  }
  SUBCASE("the coordinate swap fixes a point iff its coordinates agree") {
    std::vector<IMat> s2 = {IMat::identity(2), IMat{{Int(0), Int(1)}, {Int(1), Int(0)}}};
    CHECK(point_centralizer(s2, {Rat(3), Rat(5)}, {Rat(0), Rat(0)}).size() == 1);
    CHECK(point_centralizer(s2, {Rat(3), Rat(3)}, {make_rat(1, 2), make_rat(1, 2)}).size() == 2);
    CHECK(point_centralizer(s2, {Rat(3), Rat(3)}, {make_rat(1, 2), Rat(0)}).size() == 1);
  }
}
