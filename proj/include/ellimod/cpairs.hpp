// Numeric construction and verification of the explicit irreducible c-pairs
// (clock/shift unitaries) and the algebraic splitting residual of the Hitchin
// equation. This is the only module that uses floating point; construction
// tolerance 1e-12, rank decisions 1e-8 relative.
#pragma once

#include "ellimod/group.hpp"

#include <Eigen/Dense>
#include <complex>

namespace ellimod {

inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kRankTol = 1e-8;

struct UnitaryPair {
  Eigen::MatrixXcd a, b;
  long n = 0;              // total size; 0 flags the torus case (no semisimple part)
  std::vector<std::pair<long, long>> blocks;  // (n_i, k_i) per clock/shift block
  bool torus_case() const { return n == 0; }
};

// Clock and shift in SU(n) with commutator exp(2 pi i k/n) * I. Refuses when
// gcd(n, k) != 1 (the pair would be reducible).
UnitaryPair clock_shift(long n, long k);

// Block-diagonal pair over the type-A factors of D_c, block phases from the
// canonical central lift carried by the LeviDatum.
UnitaryPair build_cpair(const LeviDatum& levi);

// max |entry| of a matrix.
double max_entry_norm(const Eigen::MatrixXcd& m);
// Largest deviation of a a^* and b b^* from the identity.
double unitarity_residual(const UnitaryPair& p);
// max |entry| of a b a^-1 b^-1 - exp(2 pi i k/n) I over the blocks.
double commutator_residual(const UnitaryPair& p);

// Complex dimension of {X : X m = m X for all m}, by SVD nullity of the
// stacked Sylvester operators. input_error on size mismatch.
int commutant_dimension(const std::vector<Eigen::MatrixXcd>& mats);

struct HiggsRepresentative {
  Eigen::MatrixXcd z;                    // diagonal in the standard embedding
  std::vector<std::complex<double>> u_component;  // central coordinates kept separate when z > 1
};

// Diagonal Higgs representative for a point of C (x) Lambda_Sbar, in the
// ambient diagonal model (requires every simple factor of D to be type A;
// central coordinate folded in when the central rank is 1).
HiggsRepresentative make_higgs(const GroupDatum& g, const LeviDatum& levi,
                               const std::vector<std::complex<double>>& s_coords);

// ||[z, z^*]||_max; zero for any normal (in particular diagonal) matrix.
double verify_splitting(const Eigen::MatrixXcd& z);
inline double verify_splitting(const HiggsRepresentative& h) { return verify_splitting(h.z); }

}  // namespace ellimod
