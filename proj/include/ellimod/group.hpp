// Reductive group data G = Z_0 x_tau D: assembly from presets or raw pieces,
// fundamental groups, degree validation, the Jordan-Holder Levi package, and
// the two-route existence test for stable objects.
#pragma once

#include "ellimod/weyl.hpp"

namespace ellimod {

struct GroupDatum {
  std::string name;
  int central_rank = 0;
  RootDatum rd;          // semisimple part D (may be empty)
  CenterInfo center;     // centre of D
  IMat c_gens;           // rows: C-generators, coordinates over the canonical centre generators
  QMat tau;              // row i: tau of the i-th C-generator, entries in [0,1)

  // C enumerated as a subgroup of the centre: canonical coordinates of each
  // element and one expression over the C-generators.
  std::vector<IVec> c_elements;
  std::vector<IVec> c_expressions;

  int rank() const { return central_rank + rd.rank(); }
  // tau of an arbitrary element of C, reduced to [0,1)^z; input_error if c is
  // not in C. Returns the expression over the C-generators through `expr`.
  QVec tau_of(const IVec& c_center_coords, IVec* expr = nullptr) const;
  bool c_contains(const IVec& c_center_coords) const;
};

// Presets: GL(n), SL(n), PGL(n), Sp(2n), Spin(n), C* (also written GL(1)),
// GL(n)/Zk; products with 'x', e.g. "GL(2)xPGL(3)". Case-insensitive.
GroupDatum build_group(const std::string& spec);
// Raw assembly; generators are rows over the canonical centre generators of D.
GroupDatum build_group_raw(int central_rank, const std::vector<CartanType>& factors,
                           const IMat& c_generators, const QMat& tau, std::string name = "");
// Key = value text format (see README): either `preset = ...` or the raw
// fields central_rank / factors / C_generators / tau.
GroupDatum parse_group_file(const std::string& text);

struct FundamentalGroup {
  int free_rank = 0;
  std::vector<Int> torsion;  // nontrivial finite orders
  // Generators as (u, c) pairs: u rational z-vector, c over the canonical
  // centre generators. Torsion generators first, then free ones.
  std::vector<std::pair<QVec, IVec>> generators;
};
FundamentalGroup fundamental_group(const GroupDatum& g);

struct Degree {
  QVec u;     // exact z-vector with u mod Z^z == tau(c)
  IVec c;     // canonical centre coordinates, reduced
  IVec c_expr;  // one expression of c over the C-generators
};
Degree validate_degree(const GroupDatum& g, const QVec& u, const IVec& c_center_coords);
// Sugar: one integer per preset factor, e.g. GL(n) expands d to (d/n, gen^d).
Degree degree_from_ints(const GroupDatum& g, const std::vector<long>& d);

struct JordanLevi {
  LeviDatum levi;
  QVec u;  // ell_d = (u, p(c)); p(c) is carried by levi.p_c_in_f_c / d_c_factors
};
JordanLevi jordan_holder_levi(const GroupDatum& g, const Degree& d, bool need_wc = true,
                              const Int& cap = default_weyl_cap());

struct StabilityFactor {
  CartanType type;
  Int centre_order;
  Int c_exponent;  // class of the degree in pi_1 of the adjoint factor
  Int gcd_value;
  bool passes;
};
struct StabilityReport {
  bool exists = false;
  bool methods_agree = false;
  int fixed_dimension = 0;              // method (i): dim of h'^{omega_c}
  std::vector<StabilityFactor> factors;  // method (ii) factor data
  std::string reason;                    // failing criterion or witness summary
};
StabilityReport stable_exists(const GroupDatum& g, const Degree& d);

// Lattice twist rows encoding ker(exp) of the glued Cartan torus.
QMat lattice_twist_rows(const GroupDatum& g);

}  // namespace ellimod
