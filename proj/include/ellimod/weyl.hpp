// Weyl-group and alcove algorithms: dominance, full enumeration over reduced
// words, the alcove element omega_c, fixed subspaces, Levi subsystems, and the
// finite groups W_c acting on the lattice of the Levi centre.
#pragma once

#include "ellimod/rootdata.hpp"

#include <functional>
#include <optional>

namespace ellimod {

struct WeylElement {
  IMat m;                 // action on the simple-coroot basis
  std::vector<int> word;  // simple reflection indices, leftmost factor first

  bool is_identity() const { return m.is_identity(); }
};

IMat simple_reflection_matrix(const RootDatum& rd, int i);
Int weyl_order(const RootDatum& rd);
// Does the matrix permute the coroot set? (Equivalent to permuting the roots.)
bool preserves_root_set(const RootDatum& rd, const IMat& m);

inline Int default_weyl_cap() { return Int(10000000); }

// Breadth-first enumeration over reduced words, deduplicated by matrix, in a
// stable order (by length, then discovery). Refuses when |W| exceeds cap.
void enumerate_weyl(const RootDatum& rd, const Int& cap,
                    const std::function<void(const IMat&)>& sink);
std::vector<WeylElement> enumerate_weyl_vec(const RootDatum& rd, const Int& cap);

// Greedy dominance: repeatedly reflect at the lowest simple root with negative
// pairing. Returns (v_dom, w) with w * v == v_dom.
std::pair<QVec, WeylElement> make_dominant(const RootDatum& rd, QVec v);

struct Alcove {
  int factor;
  QMat vertices;  // rank_f + 1 rows in global coordinates; row 0 is the origin
  // Walls: (root coefficients, level); level 0 for simple roots, 1 for the
  // highest root.
  std::vector<std::pair<IVec, Int>> walls;
};
Alcove fundamental_alcove(const RootDatum& rd, int factor);

struct OmegaResult {
  QVec a_c;
  WeylElement omega;
};
// The unique w in W with A - a_c = w(A); verified on vertex sets exactly.
OmegaResult omega_c(const RootDatum& rd, const CenterInfo& center, const IVec& c);
WeylElement omega_for_vertex(const RootDatum& rd, const QVec& a_c);

// Saturated integer basis (rows) of ker(w - 1) in the coroot lattice.
IMat fixed_subspace(const IMat& w);

struct LeviFactor {
  CartanType type;
  // Positions in the Levi simple system, ordered to match the Bourbaki
  // template of `type`.
  std::vector<int> simple_positions;
  // Class of the canonical central lift of c in this factor's centre,
  // coordinates over the factor's canonical generators.
  IVec p_class;
};

struct LeviDatum {
  int central_rank = 0;
  QVec a_c;
  WeylElement omega;
  QMat s_basis;          // rows spanning s_c inside Q^{z+r}
  std::vector<Root> levi_roots;      // positive roots vanishing on s_c
  std::vector<int> levi_simple;      // indices into levi_roots of the simple system
  std::vector<LeviFactor> d_c_factors;
  Lattice lambda_s;      // ker exp on s_c
  Lattice lambda_sbar;   // preimage of F_c
  FiniteAbelianGroup f_c;
  // Whether p(c) lands on the centre torus S_c for the supplied kernel
  // lattice. Always true once the group-level gluing is in force; false for an
  // untwisted lattice with c nontrivial (the direct product has trivial C).
  bool p_c_in_s_c = true;
  IVec p_c_in_f_c;       // class of p(c) over the f_c generators, when applicable
  std::vector<IMat> w_c;             // faithful action on the lambda_sbar basis; [0] = id
  Int w_levi_order = 1;              // |W(levi_roots)|
  Int stabilizer_order = 0;          // |setwise stabilizer of s_c in W|

  int rank() const { return static_cast<int>(lambda_sbar.rank()); }
  LeviDatum() : lambda_s(0), lambda_sbar(0) {}
};

// Core Levi computation. `lattice_twists` rows (in Q^{z+r}) are adjoined to
// Z^{z+r} to form the kernel lattice of exp on the full Cartan; untwisted
// callers (simply connected D times a central torus) pass nothing.
LeviDatum levi_and_wc(const RootDatum& rd, int central_rank, const WeylElement& omega,
                      const QVec& a_c, const IVec& c, const QMat* lattice_twists = nullptr,
                      bool need_wc = true, const Int& cap = default_weyl_cap());

// Z_{W_c}(s) for an exact complex point s = re + i*im over the lambda_sbar basis.
std::vector<IMat> point_centralizer(const std::vector<IMat>& w_c, const QVec& s_re,
                                    const QVec& s_im);

// Small generating subset (greedy) of a full element list.
std::vector<IMat> group_generators(const std::vector<IMat>& elements);

}  // namespace ellimod
