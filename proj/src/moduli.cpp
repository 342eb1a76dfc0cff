#include "ellimod/moduli.hpp"

#include <algorithm>
#include <map>

namespace ellimod {

const char* space_name(Space s) {
  switch (s) {
    case Space::Bundles: return "X";
    case Space::Higgs: return "TstarX";
    case Space::Representations: return "Cstar2";
    case Space::Connections: return "Xsharp";
    case Space::HitchinBase: return "Cline";
  }
  throw defect_error("unreachable space tag");
}

Space parse_space(const std::string& name) {
  std::string n;
  for (char c : name) n += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (n == "x" || n == "bundles") return Space::Bundles;
  if (n == "tstarx" || n == "t*x" || n == "higgs") return Space::Higgs;
  if (n == "cstar2" || n == "reps" || n == "representations") return Space::Representations;
  if (n == "xsharp" || n == "x#" || n == "connections") return Space::Connections;
  if (n == "cline" || n == "base" || n == "hitchin-base") return Space::HitchinBase;
  throw input_error("unknown coefficient space: " + name);
}

int space_dimension_factor(Space s) {
  switch (s) {
    case Space::Bundles: return 1;
    case Space::Higgs: return 2;
    case Space::Representations: return 2;
    case Space::Connections: return 2;
    case Space::HitchinBase: return 1;
  }
  throw defect_error("unreachable space tag");
}

ModuliDescription describe_from_levi(const JordanLevi& jl, Space space) {
  ModuliDescription md;
  md.space = space;
  md.lattice_rank = jl.levi.rank();
  md.w_c_order = Int(static_cast<unsigned long>(jl.levi.w_c.size()));
  md.w_c_generators = group_generators(jl.levi.w_c);
  md.complex_dimension = space_dimension_factor(space) * md.lattice_rank;
  md.is_point = md.lattice_rank == 0;
  md.is_isomorphism = space == Space::Bundles;
  md.orbifold_note = space == Space::Higgs;
  return md;
}

ModuliDescription describe_moduli(const GroupDatum& g, const Degree& d, Space space,
                                  const Int& cap) {
  return describe_from_levi(jordan_holder_levi(g, d, true, cap), space);
}

DimensionReport dimension_report(const GroupDatum& g, const Degree& d, const Int& cap) {
  JordanLevi jl = jordan_holder_levi(g, d, false, cap);
  DimensionReport rep;
  rep.dim_bundles = jl.levi.rank();
  rep.dim_higgs = 2 * rep.dim_bundles;
  rep.dim_base = rep.dim_bundles;
  rep.dim_fibre = rep.dim_bundles;
  return rep;
}

std::vector<std::vector<std::size_t>> conjugacy_classes(const std::vector<IMat>& elements) {
  std::map<IMat, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = i;
  std::vector<QMat> inverses;
  inverses.reserve(elements.size());
  for (const auto& m : elements) {
    auto inv = q_inverse(to_rational(m));
    if (!inv) throw defect_error("singular element in a finite matrix group");
    inverses.push_back(*inv);
  }
  std::vector<bool> assigned(elements.size(), false);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (assigned[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t h = 0; h < elements.size(); ++h) {
      QMat conj_q = to_rational(elements[h] * elements[i]) * inverses[h];
      auto [conj, den] = clear_denominators(conj_q);
      if (den != 1) throw defect_error("conjugation left the integer group");
      auto it = index.find(conj);
      if (it == index.end()) throw defect_error("conjugation escaped the group");
      if (!assigned[it->second]) {
        assigned[it->second] = true;
        cls.push_back(it->second);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

HitchinReport hitchin_report(const GroupDatum& g, const Degree& d,
                             const std::vector<ExactComplexVec>& queries, const Int& cap) {
  JordanLevi jl = jordan_holder_levi(g, d, true, cap);
  HitchinReport rep;
  rep.base = describe_from_levi(jl, Space::HitchinBase);
  rep.generic_fibre_dim = jl.levi.rank();

  auto classes = conjugacy_classes(jl.levi.w_c);
  for (const auto& cls : classes) {
    const IMat& repm = jl.levi.w_c[cls.front()];
    if (repm.is_identity()) continue;
    HitchinStratum st;
    st.representative = repm;
    st.class_size = Int(static_cast<unsigned long>(cls.size()));
    st.fixed_dim = static_cast<int>(fixed_subspace(repm).rows());
    rep.strata.push_back(std::move(st));
  }

  for (const auto& q : queries) {
    if (q.re.size() != static_cast<std::size_t>(jl.levi.rank()) || q.im.size() != q.re.size())
      throw input_error("fibre point has wrong dimension: expected rank " +
                        std::to_string(jl.levi.rank()));
    FibreQuery fq;
    fq.point = q;
    auto cent = point_centralizer(jl.levi.w_c, q.re, q.im);
    fq.centralizer_order = Int(static_cast<unsigned long>(cent.size()));
    fq.centralizer_generators = group_generators(cent);
    fq.generic = cent.size() == 1;
    for (const auto& w : cent) {
      if (w.is_identity()) continue;
      fq.torsion_data.emplace_back(w, fixed_point_report(TorusAutomorphism(w), 2));
    }
    rep.fibres.push_back(std::move(fq));
  }
  return rep;
}

// ---- JSON ----

namespace {

using json = nlohmann::ordered_json;

json vec_json(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json vec_json(const IVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json mat_json(const IMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i)));
  return rows;
}

json mat_json(const QMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i)));
  return rows;
}

json group_json(const FiniteAbelianGroup& g) {
  json j;
  j["divisors"] = json::array();
  for (const auto& d : g.divisors) j["divisors"].push_back(to_string(d));
  j["order"] = to_string(g.order());
  j["generators"] = mat_json(g.generators);
  return j;
}

json complex_vec_json(const ExactComplexVec& v) {
  json j;
  j["re"] = vec_json(v.re);
  j["im"] = vec_json(v.im);
  return j;
}

}  // namespace

json moduli_json(const ModuliDescription& md) {
  json j;
  j["space"] = space_name(md.space);
  j["lattice_rank"] = md.lattice_rank;
  j["w_c_order"] = to_string(md.w_c_order);
  j["w_c_generators"] = json::array();
  for (const auto& m : md.w_c_generators) j["w_c_generators"].push_back(mat_json(m));
  j["complex_dimension"] = md.complex_dimension;
  j["is_point"] = md.is_point;
  j["is_isomorphism"] = md.is_isomorphism;
  if (md.space == Space::Higgs) j["cotangent_orbifold_of_bundles"] = md.orbifold_note;
  return j;
}

json hitchin_json(const HitchinReport& hr) {
  json j;
  j["base"] = moduli_json(hr.base);
  j["generic_fibre"] = {{"abelian_variety_dim", hr.generic_fibre_dim}};
  j["strata"] = json::array();
  for (const auto& st : hr.strata) {
    json s;
    s["representative"] = mat_json(st.representative);
    s["class_size"] = to_string(st.class_size);
    s["fixed_dim"] = st.fixed_dim;
    j["strata"].push_back(s);
  }
  j["fibres"] = json::array();
  for (const auto& f : hr.fibres) {
    json s;
    s["s"] = complex_vec_json(f.point);
    s["centralizer_order"] = to_string(f.centralizer_order);
    s["centralizer_generators"] = json::array();
    for (const auto& m : f.centralizer_generators)
      s["centralizer_generators"].push_back(mat_json(m));
    s["generic"] = f.generic;
    s["fixed_points"] = json::array();
    for (const auto& [w, fp] : f.torsion_data) {
      json t;
      t["element"] = mat_json(w);
      t["isolated"] = fp.isolated;
      if (fp.isolated)
        t["count"] = to_string(fp.count);
      else
        t["fixed_dim"] = fp.fixed_dim;
      s["fixed_points"].push_back(t);
    }
    j["fibres"].push_back(s);
  }
  return j;
}

json full_report_json(const GroupDatum& g, const Degree& d,
                      const std::vector<ExactComplexVec>& fibre_queries, const Int& cap) {
  JordanLevi jl = jordan_holder_levi(g, d, true, cap);
  json j;
  j["schema"] = "1";
  j["group"] = {{"name", g.name},
                {"central_rank", g.central_rank},
                {"factors", format_cartan_types(g.rd.factors)}};
  j["degree"] = {{"u", vec_json(d.u)}, {"c", vec_json(d.c)}};

  json levi;
  levi["a_c"] = vec_json(jl.levi.a_c);
  levi["omega_c_word"] = jl.levi.omega.word;
  json dc = json::array();
  for (const auto& f : jl.levi.d_c_factors) {
    json fj;
    fj["type"] = f.type.name();
    fj["p_class"] = vec_json(f.p_class);
    dc.push_back(fj);
  }
  levi["d_c_factors"] = dc;
  levi["f_c"] = group_json(jl.levi.f_c);
  levi["p_c_in_f_c"] = vec_json(jl.levi.p_c_in_f_c);
  levi["ell_d_u"] = vec_json(jl.u);
  levi["lambda_rank"] = jl.levi.rank();
  levi["lambda_sbar_basis"] = mat_json(jl.levi.lambda_sbar.basis_rows());
  j["levi"] = levi;

  json spaces;
  for (Space sp : {Space::Bundles, Space::Higgs, Space::Representations, Space::Connections})
    spaces[space_name(sp)] = moduli_json(describe_from_levi(jl, sp));
  j["spaces"] = spaces;

  HitchinReport hr = hitchin_report(g, d, fibre_queries, cap);
  j["hitchin"] = hitchin_json(hr);
  return j;
}

}  // namespace ellimod
