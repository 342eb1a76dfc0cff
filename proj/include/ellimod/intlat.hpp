// Exact integer/rational lattice arithmetic: Hermite and Smith normal forms
// with unimodular transforms, lattice intersection/saturation, finite
// quotients, and fixed-point counts for integer torus automorphisms.
#pragma once

#include "ellimod/matrix.hpp"

#include <optional>

namespace ellimod {

struct HermiteResult {
  IMat h;            // row Hermite form, zero rows at the bottom
  IMat u;            // unimodular, u * input == h
  std::size_t rank;  // number of nonzero rows of h
};

struct SmithResult {
  IMat s;            // diagonal, d_1 | d_2 | ..., nonnegative
  IMat u, v;         // unimodular, u * input * v == s
  std::size_t rank;
};

// Both verify their transform identities by exact multiplication before
// returning and throw defect_error on mismatch.
HermiteResult hermite_form(const IMat& m);
SmithResult smith_form(const IMat& m);

// Basis (rows) of {x : x * m == 0}, the full integer solution lattice.
IMat integer_row_kernel(const IMat& m);

// One integer solution of m * x == t, if any.
std::optional<IVec> solve_integer(const IMat& m, const IVec& t);

// A lattice in Q^n stored as den^-1 * (integer row span), basis in HNF.
class Lattice {
 public:
  explicit Lattice(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
  static Lattice standard(std::size_t n);
  static Lattice from_rows(const QMat& rows);

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const Int& denominator() const { return den_; }
  const IMat& integer_basis() const { return basis_; }
  QMat basis_rows() const;  // rational rows, basis_ / den_

  bool contains(const QVec& v) const;
  // Integer coordinates of v over the basis rows; nullopt if v is not in the lattice.
  std::optional<IVec> coordinates_of(const QVec& v) const;
  bool contains_lattice(const Lattice& other) const;

  bool operator==(const Lattice& o) const {
    return ambient_ == o.ambient_ && den_ == o.den_ && basis_ == o.basis_;
  }

 private:
  std::size_t ambient_;
  Int den_ = 1;
  IMat basis_;
  void normalize();
};

Lattice intersect(const Lattice& a, const Lattice& b);
Lattice saturate(const Lattice& l);

struct FiniteAbelianGroup {
  std::vector<Int> divisors;  // order of each listed generator, all > 1
  QMat generators;            // one representative vector per divisor
  Int order() const {
    Int o(1);
    for (const auto& d : divisors) o *= d;
    return o;
  }
  bool trivial() const { return divisors.empty(); }
};

// sup/sub for equal-rank sub <= sup; throws input_error otherwise.
FiniteAbelianGroup quotient_group(const Lattice& sup, const Lattice& sub);

struct TorusAutomorphism {
  IMat m;
  explicit TorusAutomorphism(IMat mat);
};

struct FixedPointReport {
  bool isolated;
  Int count;      // valid when isolated
  int fixed_dim;  // valid when not isolated (real dimension, k * dim ker)
};

// Fixed points of w acting on (k-torus) tensor Lambda: |det(w-1)|^k when
// det(w-1) != 0, otherwise the positive-dimensional fixed set dimension.
FixedPointReport fixed_point_report(const TorusAutomorphism& w, int circle_factors);

// Z^num_gens modulo the row span of relations, as cyclic factors. orders[i] == 0
// marks a free factor; otherwise the order (> 1; trivial factors are dropped).
// gen_combos column j expresses the j-th new generator over the old ones.
struct AbelianPresentation {
  std::vector<Int> orders;
  IMat gen_combos;
};
AbelianPresentation abelian_quotient_presentation(std::size_t num_gens, const IMat& relations);

}  // namespace ellimod
