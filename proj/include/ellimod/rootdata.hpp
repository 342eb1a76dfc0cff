// Root-system data for products of simple Cartan types, in the simple-coroot
// coordinate basis (Bourbaki numbering throughout). A vector v in the Cartan
// algebra is stored by its coefficients over the simple coroots, so the
// pairing of the i-th simple root with v is row i of the Cartan matrix dotted
// with v, and ker(exp) is exactly the integer lattice.
#pragma once

#include "ellimod/intlat.hpp"

#include <string>
#include <string_view>

namespace ellimod {

struct CartanType {
  char letter;  // one of A B C D E F G
  int rank;
  CartanType(char l, int r);
  std::string name() const { return std::string(1, letter) + std::to_string(rank); }
  bool operator==(const CartanType& o) const { return letter == o.letter && rank == o.rank; }
};

std::vector<CartanType> parse_cartan_types(std::string_view text);  // "A3xD4xE6"
std::string format_cartan_types(const std::vector<CartanType>& factors);

IMat cartan_matrix(const CartanType& type);
Int classical_positive_root_count(const CartanType& type);
Int weyl_order(const CartanType& type);

struct Root {
  IVec root_coeff;    // coefficients over the simple roots
  IVec coroot_coeff;  // the dual root's coefficients over the simple coroots
  int factor;
  Int height() const {
    Int h(0);
    for (const auto& c : root_coeff) h += c;
    return h;
  }
};

struct RootDatum {
  std::vector<CartanType> factors;
  IMat cartan;                               // block diagonal, full rank
  std::vector<std::pair<int, int>> factor_span;  // [begin, end) node range per factor
  std::vector<int> factor_of_node;
  std::vector<Root> positive_roots;          // factor-major, then height, then lex
  QMat fundamental_coweights;                // row j = coweight dual to simple root j
  std::vector<Root> highest_roots;           // one per factor
  std::vector<IVec> marks;                   // highest-root coefficients per factor

  int rank() const { return static_cast<int>(cartan.rows()); }
  static RootDatum empty();

  // <alpha, v> for a root given by simple-root coefficients and v in coroot coords.
  Rat pairing(const IVec& root_coeff, const QVec& v) const;
  Int pairing(const IVec& root_coeff, const IVec& v) const;
};

RootDatum build_root_datum(const std::vector<CartanType>& factors);

// Center of the simply connected group, as the coweight/coroot quotient with a
// fixed generator table (classes of special fundamental coweights, documented
// in the README).
struct CenterInfo {
  FiniteAbelianGroup group;      // one divisor per canonical generator
  std::vector<int> gen_node;     // global node index of each generator's coweight
  std::vector<std::pair<int, int>> factor_gen_span;  // generator range per factor

  // Coordinates of the class of a coweight over the canonical generators,
  // reduced mod the divisors. input_error if v is not a coweight.
  IVec classify(const RootDatum& rd, const QVec& coweight) const;
  // Representative coweight of the element with the given coordinates.
  QVec representative(const RootDatum& rd, const IVec& coords) const;
  IVec reduce(const IVec& coords) const;
  bool is_identity(const IVec& coords) const;

  std::size_t num_generators() const { return group.divisors.size(); }
};

CenterInfo center_of_simply_connected(const RootDatum& rd);

// The alcove vertex a_c with exp(a_c) = c; zero block for trivial components.
QVec cominuscule_vertex(const RootDatum& rd, const CenterInfo& center, const IVec& c);

}  // namespace ellimod
