// Normalized moduli descriptions over the four coefficient spaces and the
// Hitchin fibration report: base, strata, and exact fibre queries.
#pragma once

#include "ellimod/group.hpp"

#include <json.hpp>

namespace ellimod {

enum class Space { Bundles, Higgs, Representations, Connections, HitchinBase };

const char* space_name(Space s);
Space parse_space(const std::string& name);
int space_dimension_factor(Space s);  // complex dimension per lattice generator

struct ModuliDescription {
  Space space = Space::Bundles;
  int lattice_rank = 0;
  Int w_c_order = 1;
  std::vector<IMat> w_c_generators;
  int complex_dimension = 0;
  bool is_point = false;
  // The Bundles description is the moduli space itself; the other spaces are
  // normalizations (bijective morphisms onto the moduli space).
  bool is_isomorphism = false;
  // Flags the Higgs case as the cotangent orbifold bundle of the Bundles case.
  bool orbifold_note = false;
};

ModuliDescription describe_moduli(const GroupDatum& g, const Degree& d, Space space,
                                  const Int& cap = default_weyl_cap());
ModuliDescription describe_from_levi(const JordanLevi& jl, Space space);

struct DimensionReport {
  int dim_bundles = 0;  // complex dimension of M(G)_d
  int dim_higgs = 0;    // = 2 * dim_bundles
  int dim_base = 0;
  int dim_fibre = 0;
};
DimensionReport dimension_report(const GroupDatum& g, const Degree& d,
                                 const Int& cap = default_weyl_cap());

struct ExactComplexVec {
  QVec re, im;
};

struct HitchinStratum {
  IMat representative;  // nontrivial conjugacy class representative in W_c
  Int class_size;
  int fixed_dim;        // complex dimension of its fixed subspace in C (x) Lambda
};

struct FibreQuery {
  ExactComplexVec point;
  Int centralizer_order;
  std::vector<IMat> centralizer_generators;
  bool generic = false;  // trivial centralizer: the fibre is X (x) Lambda itself
  // Fixed-point data of every nontrivial centralizer element on X (x) Lambda.
  std::vector<std::pair<IMat, FixedPointReport>> torsion_data;
};

struct HitchinReport {
  ModuliDescription base;
  int generic_fibre_dim = 0;  // dimension of the abelian variety X (x) Lambda
  std::vector<HitchinStratum> strata;
  std::vector<FibreQuery> fibres;
};

HitchinReport hitchin_report(const GroupDatum& g, const Degree& d,
                             const std::vector<ExactComplexVec>& queries,
                             const Int& cap = default_weyl_cap());

// Conjugacy classes by exhaustive pairwise conjugation; representatives in
// first-seen order, the identity class first.
std::vector<std::vector<std::size_t>> conjugacy_classes(const std::vector<IMat>& elements);

// Documented JSON report (schema "1"); all Int/Rat values encoded as strings.
nlohmann::ordered_json full_report_json(const GroupDatum& g, const Degree& d,
                                        const std::vector<ExactComplexVec>& fibre_queries,
                                        const Int& cap = default_weyl_cap());
nlohmann::ordered_json moduli_json(const ModuliDescription& md);
nlohmann::ordered_json hitchin_json(const HitchinReport& hr);

}  // namespace ellimod
