#include "ellimod/moduli.hpp"

#include <doctest.h>

#include <set>

using namespace ellimod;

TEST_CASE("describe_moduli on the pinned examples") {
  SUBCASE("SL(2) degree 0 Higgs moduli is (T*X (x) Z)/{±1}") {
    auto g = build_group("SL(2)");
    auto md = describe_moduli(g, degree_from_ints(g, {0}), Space::Higgs);
    CHECK(md.lattice_rank == 1);
    CHECK(md.w_c_order == 2);
    CHECK(md.complex_dimension == 2);
    CHECK_FALSE(md.is_point);
    CHECK_FALSE(md.is_isomorphism);
    CHECK(md.orbifold_note);
    REQUIRE(md.w_c_generators.size() == 1);
    CHECK(md.w_c_generators[0] == IMat{{Int(-1)}});
  }
  SUBCASE("GL(2) degree 1 bundle moduli is X itself") {
    auto g = build_group("GL(2)");
    auto md = describe_moduli(g, degree_from_ints(g, {1}), Space::Bundles);
    CHECK(md.lattice_rank == 1);
    CHECK(md.w_c_order == 1);
    CHECK(md.complex_dimension == 1);
    CHECK(md.is_isomorphism);
  }
  SUBCASE("PGL(2) degree 1 is a point in every space") {
    auto g = build_group("PGL(2)");
    auto jl = jordan_holder_levi(g, degree_from_ints(g, {1}));
    for (Space sp : {Space::Bundles, Space::Higgs, Space::Representations, Space::Connections,
                     Space::HitchinBase}) {
      auto md = describe_from_levi(jl, sp);
      CHECK(md.is_point);
      CHECK(md.complex_dimension == 0);
    }
  }
}

TEST_CASE("dimension report") {
  auto g = build_group("SL(2)");
  auto rep = dimension_report(g, degree_from_ints(g, {0}));
  CHECK(rep.dim_higgs == 2);
  CHECK(rep.dim_bundles == 1);
  CHECK(rep.dim_base == 1);
  CHECK(rep.dim_fibre == 1);

  auto pgl3 = build_group("PGL(3)");
  CHECK(dimension_report(pgl3, degree_from_ints(pgl3, {1})).dim_higgs == 0);

  for (long n = 2; n <= 5; ++n) {
    auto gl = build_group("GL(" + std::to_string(n) + ")");
    for (long d = 0; d < n; ++d)
      CHECK(Int(dimension_report(gl, degree_from_ints(gl, {d})).dim_higgs) ==
            2 * gcd(Int(n), Int(d)));
  }
}

TEST_CASE("hitchin reports") {
  auto sl2 = build_group("SL(2)");
  auto d0 = degree_from_ints(sl2, {0});
  SUBCASE("strata of SL(2) at degree 0") {
    auto hr = hitchin_report(sl2, d0, {});
    CHECK(hr.base.lattice_rank == 1);
    CHECK(hr.generic_fibre_dim == 1);
    REQUIRE(hr.strata.size() == 1);  // the class of -1
    CHECK(hr.strata[0].fixed_dim == 0);
    CHECK(hr.strata[0].class_size == 1);
  }
  SUBCASE("fibre over zero sees the involution with 4 fixed points") {
    ExactComplexVec zero{{Rat(0)}, {Rat(0)}};
    auto hr = hitchin_report(sl2, d0, {zero});
    REQUIRE(hr.fibres.size() == 1);
    CHECK(hr.fibres[0].centralizer_order == 2);
    CHECK_FALSE(hr.fibres[0].generic);
    REQUIRE(hr.fibres[0].torsion_data.size() == 1);
    CHECK(hr.fibres[0].torsion_data[0].second.isolated);
    CHECK(hr.fibres[0].torsion_data[0].second.count == 4);
  }
  SUBCASE("fibre over a regular point is the abelian variety") {
    ExactComplexVec s{{Rat(1)}, {Rat(0)}};
    auto hr = hitchin_report(sl2, d0, {s});
    REQUIRE(hr.fibres.size() == 1);
    CHECK(hr.fibres[0].centralizer_order == 1);
    CHECK(hr.fibres[0].generic);
  }
  SUBCASE("wrong fibre dimension is an input error") {
    ExactComplexVec bad{{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
    CHECK_THROWS_AS(hitchin_report(sl2, d0, {bad}), input_error);
  }
  SUBCASE("PGL(2) degree 1: base and fibre are points") {
    auto pgl2 = build_group("PGL(2)");
    ExactComplexVec empty{{}, {}};
    auto hr = hitchin_report(pgl2, degree_from_ints(pgl2, {1}), {empty});
    CHECK(hr.base.is_point);
    CHECK(hr.strata.empty());
    REQUIRE(hr.fibres.size() == 1);
    CHECK(hr.fibres[0].centralizer_order == 1);
  }
}

TEST_CASE("conjugacy classes by exhaustive conjugation") {
  auto a2 = build_root_datum(parse_cartan_types("A2"));
  WeylElement id{IMat::identity(2), {}};
  auto levi = levi_and_wc(a2, 0, id, QVec(2, Rat(0)), {Int(0)});
  auto classes = conjugacy_classes(levi.w_c);
  // S_3 has three classes of sizes 1, 3, 2.
  REQUIRE(classes.size() == 3);
  std::multiset<std::size_t> sizes;
  for (const auto& c : classes) sizes.insert(c.size());
  const std::multiset<std::size_t> expected{1, 2, 3};
  CHECK(sizes == expected);
}

TEST_CASE("JSON reports are deterministic and carry the schema") {
  auto g = build_group("GL(2)");
  auto d = degree_from_ints(g, {1});
  auto j1 = full_report_json(g, d, {});
  auto j2 = full_report_json(g, d, {});
  CHECK(j1.dump(2) == j2.dump(2));
  CHECK(j1["schema"] == "1");
  CHECK(j1["spaces"]["TstarX"]["lattice_rank"] == 1);
  CHECK(j1["spaces"]["TstarX"]["w_c_order"] == "1");
  CHECK(j1["levi"]["ell_d_u"] == nlohmann::ordered_json::array({"1/2"}));
  // rationals rendered as p/q strings
  CHECK(j1["degree"]["u"][0] == "1/2");
}
