#include "ellimod/selftest.hpp"

#include "ellimod/cpairs.hpp"
#include "ellimod/moduli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace ellimod {

namespace {

Int factorial(long n) {
  Int f(1);
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<CartanType> simple_types_rank_le_4() {
  return {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'B', 4},
          {'C', 2}, {'C', 3}, {'C', 4}, {'D', 3}, {'D', 4}, {'F', 4}, {'G', 2}};
}

std::vector<IVec> all_center_elements(const CenterInfo& center) {
  std::vector<IVec> out;
  IVec cur(center.num_generators(), Int(0));
  while (true) {
    out.push_back(cur);
    std::size_t pos = 0;
    for (; pos < cur.size(); ++pos) {
      cur[pos] += 1;
      if (cur[pos] < center.group.divisors[pos]) break;
      cur[pos] = 0;
    }
    if (pos == cur.size()) break;
  }
  return out;
}

GroupDatum simply_connected_group(const CartanType& t) {
  return build_group_raw(0, {t}, IMat(0, 0), QMat(0, 0), "simply-connected " + t.name());
}

Degree trivial_degree(const GroupDatum& g) {
  return validate_degree(g, QVec(g.central_rank, Rat(0)), IVec(g.center.num_generators(), Int(0)));
}

struct Criterion {
  std::string label;
  std::function<bool(std::string&)> run;
};

// Exact pseudo-random rationals with a fixed seed.
struct RatGen {
  std::mt19937_64 rng{0x5eed5eedULL};
  Rat next() {
    long num = static_cast<long>(rng() % 401) - 200;
    long den = static_cast<long>(rng() % 49) + 1;
    return make_rat(num, den);
  }
};

}  // namespace

int run_acceptance(std::ostream& out) {
  std::vector<Criterion> criteria;

  // Shared sweeps, built lazily inside the criteria to keep each self-contained.

  criteria.push_back({"Atiyah gcd law: GL(n) lattice rank equals gcd(n,d), n <= 6", [](std::string& why) {
    for (long n = 1; n <= 6; ++n) {
      GroupDatum g = build_group("GL(" + std::to_string(n) + ")");
      for (long d = 0; d < n; ++d) {
        auto md = describe_moduli(g, degree_from_ints(g, {d}), Space::Bundles);
        if (Int(md.lattice_rank) != gcd(Int(n), Int(d))) {
          why = "GL(" + std::to_string(n) + ") d=" + std::to_string(d) + " gave rank " +
                std::to_string(md.lattice_rank);
          return false;
        }
      }
    }
    return true;
  }});

  criteria.push_back({"Symmetric-group law: |W_c| equals gcd(n,d)! on the same sweep", [](std::string& why) {
    for (long n = 1; n <= 6; ++n) {
      GroupDatum g = build_group("GL(" + std::to_string(n) + ")");
      for (long d = 0; d < n; ++d) {
        auto md = describe_moduli(g, degree_from_ints(g, {d}), Space::Bundles);
        Int expected = factorial(to_long(gcd(Int(n), Int(d))));
        if (md.w_c_order != expected) {
          why = "GL(" + std::to_string(n) + ") d=" + std::to_string(d) + " gave |W_c| = " +
                to_string(md.w_c_order) + ", expected " + to_string(expected);
          return false;
        }
      }
    }
    return true;
  }});

  criteria.push_back({"Point moduli: PGL(n) with gcd(n,d)=1 is a point in all four spaces", [](std::string& why) {
    for (long n = 2; n <= 6; ++n) {
      GroupDatum g = build_group("PGL(" + std::to_string(n) + ")");
      for (long d = 0; d < n; ++d) {
        if (gcd(Int(n), Int(d)) != 1) continue;
        JordanLevi jl = jordan_holder_levi(g, degree_from_ints(g, {d}));
        for (Space sp : {Space::Bundles, Space::Higgs, Space::Representations, Space::Connections}) {
          auto md = describe_from_levi(jl, sp);
          if (!md.is_point) {
            why = "PGL(" + std::to_string(n) + ") d=" + std::to_string(d) + " not a point in " +
                  space_name(sp);
            return false;
          }
        }
      }
    }
    return true;
  }});

  criteria.push_back({"Trivial degree: omega_c = id, W_c = W with the classical order, rank = rank(G)", [](std::string& why) {
    for (const auto& t : simple_types_rank_le_4()) {
      GroupDatum g = simply_connected_group(t);
      Degree d = trivial_degree(g);
      JordanLevi jl = jordan_holder_levi(g, d);
      if (!jl.levi.omega.is_identity()) {
        why = t.name() + ": omega_c is not the identity at d = 0";
        return false;
      }
      Int expected = weyl_order(t);
      if (Int(static_cast<unsigned long>(jl.levi.w_c.size())) != expected) {
        why = t.name() + ": |W_c| = " + std::to_string(jl.levi.w_c.size()) + ", expected " +
              to_string(expected);
        return false;
      }
      if (jl.levi.rank() != t.rank) {
        why = t.name() + ": lattice rank " + std::to_string(jl.levi.rank());
        return false;
      }
    }
    return true;
  }});

  criteria.push_back({"Alcove identity: omega_c maps A onto A - a_c and is unique in W", [](std::string& why) {
    for (const auto& t : simple_types_rank_le_4()) {
      RootDatum rd = build_root_datum({t});
      CenterInfo center = center_of_simply_connected(rd);
      Alcove alcove = fundamental_alcove(rd, 0);
      std::vector<QVec> base;
      for (std::size_t i = 0; i < alcove.vertices.rows(); ++i) base.push_back(alcove.vertices.row(i));
      for (const auto& c : all_center_elements(center)) {
        OmegaResult om = omega_c(rd, center, c);
        std::vector<QVec> shifted;
        for (const auto& v : base) shifted.push_back(vec_sub(v, om.a_c));
        std::sort(shifted.begin(), shifted.end());
        auto maps_alcove = [&](const IMat& w) {
          std::vector<QVec> mapped;
          for (const auto& v : base) {
            QVec img(rd.rank(), Rat(0));
            for (int p = 0; p < rd.rank(); ++p)
              for (int q = 0; q < rd.rank(); ++q)
                if (w(p, q) != 0) img[p] += Rat(w(p, q)) * v[q];
            mapped.push_back(img);
          }
          std::sort(mapped.begin(), mapped.end());
          return mapped == shifted;
        };
        if (!maps_alcove(om.omega.m)) {
          why = t.name() + ": returned omega_c does not map A to A - a_c";
          return false;
        }
        long count = 0;
        enumerate_weyl(rd, default_weyl_cap(), [&](const IMat& w) {
          if (maps_alcove(w)) ++count;
        });
        if (count != 1) {
          why = t.name() + ": " + std::to_string(count) + " Weyl elements map A to A - a_c";
          return false;
        }
      }
    }
    return true;
  }});

  criteria.push_back({"Levi classification: D_c is a product of type-A factors and p(c) generates each centre", [](std::string& why) {
    for (const auto& t : simple_types_rank_le_4()) {
      RootDatum rd = build_root_datum({t});
      CenterInfo center = center_of_simply_connected(rd);
      for (const auto& c : all_center_elements(center)) {
        OmegaResult om = omega_c(rd, center, c);
        LeviDatum levi = levi_and_wc(rd, 0, om.omega, om.a_c, c, nullptr, false);
        for (const auto& f : levi.d_c_factors) {
          if (f.type.letter != 'A') {
            why = t.name() + ": D_c contains a factor of type " + f.type.name();
            return false;
          }
          // p(c) must generate the cyclic centre Z_{n}.
          Int n(f.type.rank + 1);
          if (f.p_class.size() != 1 || gcd(n, mod_floor(f.p_class[0], n)) != 1) {
            why = t.name() + ": p(c) does not generate the centre of " + f.type.name();
            return false;
          }
        }
      }
    }
    return true;
  }});

  criteria.push_back({"Stability cross-check: fixed-space and classification methods agree, n <= 8", [](std::string& why) {
    std::vector<std::string> presets;
    for (long n = 2; n <= 8; ++n) {
      presets.push_back("GL(" + std::to_string(n) + ")");
      presets.push_back("SL(" + std::to_string(n) + ")");
      presets.push_back("PGL(" + std::to_string(n) + ")");
    }
    for (const auto& name : presets) {
      GroupDatum g = build_group(name);
      long n = g.rd.rank() + 1;
      for (long d = 0; d < n; ++d) {
        Degree deg;
        try {
          deg = degree_from_ints(g, {d});
        } catch (const input_error&) {
          continue;  // simply connected presets only admit d = 0
        }
        try {
          auto rep = stable_exists(g, deg);
          if (!rep.methods_agree) {
            why = name + " d=" + std::to_string(d) + ": methods disagree";
            return false;
          }
        } catch (const defect_error& e) {
          why = name + " d=" + std::to_string(d) + ": " + e.what();
          return false;
        }
      }
    }
    // A fixed list of products, componentwise degrees.
    std::vector<std::pair<std::string, std::vector<long>>> products = {
        {"GL(2)xPGL(3)", {1, 1}}, {"GL(2)xPGL(3)", {0, 2}}, {"GL(4)xSL(2)", {2, 0}},
        {"C*xPGL(4)", {3, 2}},    {"SL(3)xGL(2)", {0, 1}},  {"GL(3)xGL(2)", {2, 0}}};
    for (const auto& [name, ds] : products) {
      GroupDatum g = build_group(name);
      try {
        auto rep = stable_exists(g, degree_from_ints(g, ds));
        if (!rep.methods_agree) {
          why = name + ": methods disagree";
          return false;
        }
      } catch (const defect_error& e) {
        why = name + ": " + std::string(e.what());
        return false;
      }
    }
    return true;
  }});

  criteria.push_back({"Dimension formula: dim of the Higgs moduli equals twice the lattice rank", [](std::string& why) {
    for (long n = 1; n <= 6; ++n) {
      GroupDatum g = build_group("GL(" + std::to_string(n) + ")");
      for (long d = 0; d < n; ++d) {
        Degree deg = degree_from_ints(g, {d});
        auto rep = dimension_report(g, deg);
        auto md = describe_moduli(g, deg, Space::Higgs);
        if (rep.dim_higgs != 2 * md.lattice_rank || md.complex_dimension != rep.dim_higgs) {
          why = "GL(" + std::to_string(n) + ") d=" + std::to_string(d);
          return false;
        }
      }
    }
    for (const auto& t : simple_types_rank_le_4()) {
      GroupDatum g = simply_connected_group(t);
      Degree deg = trivial_degree(g);
      auto rep = dimension_report(g, deg);
      if (rep.dim_higgs != 2 * t.rank) {
        why = t.name() + " at d = 0";
        return false;
      }
    }
    return true;
  }});

  criteria.push_back({"Hitchin fibres: generic centralizer trivial off the strata; s = 0 sees all of W_c", [](std::string& why) {
    RatGen gen;
    std::vector<std::pair<std::string, long>> cases = {{"SL(2)", 0}, {"GL(3)", 0}, {"GL(4)", 2}};
    for (const auto& [name, d] : cases) {
      GroupDatum g = build_group(name);
      Degree deg = degree_from_ints(g, {d});
      JordanLevi jl = jordan_holder_levi(g, deg);
      int rank = jl.levi.rank();
      // Stratum subspaces: fixed spaces of the nontrivial elements.
      std::vector<IMat> stratum_kernels;
      for (const auto& w : jl.levi.w_c)
        if (!w.is_identity()) stratum_kernels.push_back(fixed_subspace(w));
      int accepted = 0;
      while (accepted < 100) {
        ExactComplexVec s;
        for (int i = 0; i < rank; ++i) {
          s.re.push_back(gen.next());
          s.im.push_back(gen.next());
        }
        bool on_stratum = false;
        for (const auto& ker : stratum_kernels) {
          QMat rows = to_rational(ker);
          if (q_in_rowspace(rows, s.re) && q_in_rowspace(rows, s.im)) {
            on_stratum = true;
            break;
          }
        }
        if (on_stratum) continue;
        ++accepted;
        auto cent = point_centralizer(jl.levi.w_c, s.re, s.im);
        if (cent.size() != 1) {
          why = name + ": random point off the strata has centralizer of order " +
                std::to_string(cent.size());
          return false;
        }
      }
      // s = 0 is fixed by all of W_c.
      ExactComplexVec zero{QVec(rank, Rat(0)), QVec(rank, Rat(0))};
      auto cent0 = point_centralizer(jl.levi.w_c, zero.re, zero.im);
      if (cent0.size() != jl.levi.w_c.size()) {
        why = name + ": centralizer of 0 is not all of W_c";
        return false;
      }
    }
    // SL(2), d = 0: the involution on X (x) Lambda has exactly 4 fixed points.
    GroupDatum sl2 = build_group("SL(2)");
    Degree d0 = degree_from_ints(sl2, {0});
    ExactComplexVec zero{QVec(1, Rat(0)), QVec(1, Rat(0))};
    HitchinReport hr = hitchin_report(sl2, d0, {zero});
    if (hr.fibres.size() != 1 || hr.fibres[0].torsion_data.size() != 1) {
      why = "SL(2) d=0: unexpected fibre data at s = 0";
      return false;
    }
    const auto& fp = hr.fibres[0].torsion_data[0].second;
    if (!fp.isolated || fp.count != 4) {
      why = "SL(2) d=0: involution fixed-point count " + to_string(fp.count);
      return false;
    }
    return true;
  }});

  criteria.push_back({"c-pairs: commutator and splitting residuals within 1e-12, commutant dimension 1", [](std::string& why) {
    for (long n = 2; n <= 8; ++n)
      for (long k = 1; k < n; ++k) {
        if (gcd(Int(n), Int(k)) != 1) continue;
        UnitaryPair p = clock_shift(n, k);
        if (unitarity_residual(p) > kConstructionTol || commutator_residual(p) > kConstructionTol) {
          why = "clock_shift(" + std::to_string(n) + "," + std::to_string(k) + ") residual too large";
          return false;
        }
        if (commutant_dimension({p.a, p.b}) != 1) {
          why = "clock_shift(" + std::to_string(n) + "," + std::to_string(k) + ") is not irreducible";
          return false;
        }
      }
    // Splitting residual across generated Higgs representatives.
    std::vector<std::pair<std::string, long>> cases = {
        {"GL(2)", 0}, {"GL(2)", 1}, {"GL(3)", 1}, {"GL(4)", 2}, {"SL(2)", 0}, {"PGL(3)", 1}};
    for (const auto& [name, d] : cases) {
      GroupDatum g = build_group(name);
      Degree deg = degree_from_ints(g, {d});
      JordanLevi jl = jordan_holder_levi(g, deg);
      std::vector<std::complex<double>> coords;
      for (int i = 0; i < jl.levi.rank(); ++i)
        coords.emplace_back((i + 1) / 3.0, (2.0 * i - 1) / 5.0);
      HiggsRepresentative h = make_higgs(g, jl.levi, coords);
      if (verify_splitting(h) > kConstructionTol) {
        why = name + " d=" + std::to_string(d) + ": splitting residual too large";
        return false;
      }
    }
    return true;
  }});

  criteria.push_back({"Coefficient-space coherence: identical (rank, W_c) in all spaces, Higgs dim doubles", [](std::string& why) {
    std::vector<std::pair<std::string, long>> cases;
    for (long n = 1; n <= 6; ++n)
      for (long d = 0; d < n; ++d) cases.emplace_back("GL(" + std::to_string(n) + ")", d);
    for (const auto& [name, d] : cases) {
      GroupDatum g = build_group(name);
      JordanLevi jl = jordan_holder_levi(g, degree_from_ints(g, {d}));
      auto x = describe_from_levi(jl, Space::Bundles);
      for (Space sp : {Space::Higgs, Space::Representations, Space::Connections}) {
        auto md = describe_from_levi(jl, sp);
        if (md.lattice_rank != x.lattice_rank || md.w_c_order != x.w_c_order ||
            !(md.w_c_generators == x.w_c_generators)) {
          why = name + " d=" + std::to_string(d) + ": " + space_name(sp) +
                " carries different (rank, W_c) data";
          return false;
        }
        if (md.complex_dimension != 2 * x.complex_dimension) {
          why = name + " d=" + std::to_string(d) + ": " + space_name(sp) + " dimension not doubled";
          return false;
        }
        if ((sp == Space::Higgs) != md.orbifold_note) {
          why = name + ": orbifold note on the wrong space";
          return false;
        }
      }
    }
    return true;
  }});

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string why;
    bool ok = false;
    try {
      ok = criteria[i].run(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!ok) ++failures;
    out << "[" << std::setw(2) << (i + 1) << "] " << (ok ? "PASS" : "FAIL") << "  "
        << criteria[i].label;
    if (!ok && !why.empty()) out << "  (" << why << ")";
    out << "\n";
  }
  out << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
      << "\n";
  return failures;
}

}  // namespace ellimod
