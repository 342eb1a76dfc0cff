#include "ellimod/cpairs.hpp"

#include <numbers>

namespace ellimod {

namespace {

using Eigen::MatrixXcd;
using std::complex;

constexpr double kPi = std::numbers::pi;

MatrixXcd su_normalize(const MatrixXcd& m) {
  // Divide out the determinant phase along the principal branch.
  complex<double> det = m.determinant();
  double theta = std::arg(det);
  long n = m.rows();
  return m * std::polar(1.0, -theta / static_cast<double>(n));
}

}  // namespace

UnitaryPair clock_shift(long n, long k) {
  if (n < 2) throw input_error("clock_shift needs n >= 2");
  long kk = to_long(mod_floor(Int(k), Int(n)));
  if (gcd(Int(n), Int(kk)) != 1)
    throw input_error("clock_shift(" + std::to_string(n) + "," + std::to_string(k) +
                      "): gcd(n,k) != 1, the pair would be reducible; build the "
                      "block pair through build_cpair instead");
  UnitaryPair p;
  p.n = n;
  p.blocks.emplace_back(n, kk);
  p.a = MatrixXcd::Zero(n, n);
  for (long j = 0; j < n; ++j)
    p.a(j, j) = std::polar(1.0, 2.0 * kPi * static_cast<double>(kk) * static_cast<double>(j) /
                                    static_cast<double>(n));
  p.a = su_normalize(p.a);
  // Down-shift with a corner sign so that the determinant is exactly 1.
  p.b = MatrixXcd::Zero(n, n);
  for (long j = 0; j + 1 < n; ++j) p.b(j + 1, j) = 1.0;
  p.b(0, n - 1) = (n % 2 == 0) ? -1.0 : 1.0;
  double comm = commutator_residual(p);
  if (comm > kConstructionTol)
    throw defect_error("clock/shift commutator residual " + std::to_string(comm));
  return p;
}

UnitaryPair build_cpair(const LeviDatum& levi) {
  std::vector<std::pair<long, long>> blocks;
  for (const auto& f : levi.d_c_factors) {
    if (f.type.letter != 'A')
      throw input_error("build_cpair: D_c has a factor of type " + f.type.name() +
                        "; only type-A Levi factors carry irreducible c-pairs");
    long n = f.type.rank + 1;
    if (f.p_class.size() != 1) throw defect_error("type-A centre should have one generator");
    long k = to_long(mod_floor(f.p_class[0], Int(n)));
    if (gcd(Int(n), Int(k)) != 1)
      throw defect_error("p(c) does not generate the centre of an A-factor");
    blocks.emplace_back(n, k);
  }
  UnitaryPair p;
  if (blocks.empty()) {
    p.n = 0;  // torus case
    p.a = Eigen::MatrixXcd(0, 0);
    p.b = Eigen::MatrixXcd(0, 0);
    return p;
  }
  long total = 0;
  for (auto [n, k] : blocks) total += n;
  p.n = total;
  p.blocks = blocks;
  p.a = Eigen::MatrixXcd::Zero(total, total);
  p.b = Eigen::MatrixXcd::Zero(total, total);
  long off = 0;
  for (auto [n, k] : blocks) {
    UnitaryPair blk = clock_shift(n, k);
    p.a.block(off, off, n, n) = blk.a;
    p.b.block(off, off, n, n) = blk.b;
    off += n;
  }
  return p;
}

double max_entry_norm(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_residual(const UnitaryPair& p) {
  if (p.torus_case()) return 0.0;
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(p.n, p.n);
  return std::max(max_entry_norm(p.a * p.a.adjoint() - id),
                  max_entry_norm(p.b * p.b.adjoint() - id));
}

double commutator_residual(const UnitaryPair& p) {
  if (p.torus_case()) return 0.0;
  Eigen::MatrixXcd comm =
      p.a * p.b * p.a.inverse() * p.b.inverse();
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(p.n, p.n);
  long off = 0;
  for (auto [n, k] : p.blocks) {
    std::complex<double> phase =
        std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
    for (long j = 0; j < n; ++j) expected(off + j, off + j) = phase;
    off += n;
  }
  return max_entry_norm(comm - expected);
}

int commutant_dimension(const std::vector<Eigen::MatrixXcd>& mats) {
  if (mats.empty()) throw input_error("commutant_dimension needs at least one matrix");
  const long n = mats.front().rows();
  for (const auto& m : mats)
    if (m.rows() != n || m.cols() != n)
      throw input_error("commutant_dimension: matrices must be square of equal size");
  if (n == 0) return 0;
  const long nn = n * n;
  Eigen::MatrixXcd stacked = Eigen::MatrixXcd::Zero(static_cast<long>(mats.size()) * nn, nn);
  for (std::size_t t = 0; t < mats.size(); ++t) {
    const Eigen::MatrixXcd& m = mats[t];
    long base = static_cast<long>(t) * nn;
    // vec(mX - Xm) with column-major vec: X(i,j) sits at j*n + i.
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        long row = base + j * n + i;
        for (long k = 0; k < n; ++k) {
          stacked(row, j * n + k) += m(i, k);   // (mX)(i,j)
          stacked(row, k * n + i) -= m(k, j);   // -(Xm)(i,j)
        }
      }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return static_cast<int>(nn);
  double smax = sv(0);
  if (smax == 0.0) return static_cast<int>(nn);
  int nullity = 0;
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) <= kRankTol * smax) ++nullity;
  nullity += static_cast<int>(nn - sv.size());
  return nullity;
}

HiggsRepresentative make_higgs(const GroupDatum& g, const LeviDatum& levi,
                               const std::vector<std::complex<double>>& s_coords) {
  for (const auto& f : g.rd.factors)
    if (f.letter != 'A')
      throw input_error("make_higgs: the ambient diagonal model needs every simple factor "
                        "of type A; " + f.name() + " present");
  if (s_coords.size() != static_cast<std::size_t>(levi.rank()))
    throw input_error("make_higgs: expected " + std::to_string(levi.rank()) +
                      " coordinates over Lambda_Sbar");
  const int z = levi.central_rank;
  const int r = g.rd.rank();
  std::vector<std::complex<double>> v(z + r, 0.0);
  QMat basis = levi.lambda_sbar.basis_rows();
  for (std::size_t j = 0; j < s_coords.size(); ++j)
    for (int t = 0; t < z + r; ++t) v[t] += s_coords[j] * basis(j, t).get_d();

  HiggsRepresentative h;
  for (int t = 0; t < z; ++t) h.u_component.push_back(v[t]);

  // Ambient diagonal of the h'-part: per A-factor, sum x_i (e_i - e_{i+1}).
  long total = 0;
  std::vector<long> factor_offset;
  for (const auto& f : g.rd.factors) {
    factor_offset.push_back(total);
    total += f.rank + 1;
  }
  std::vector<std::complex<double>> diag(total, 0.0);
  for (std::size_t fi = 0; fi < g.rd.factors.size(); ++fi) {
    auto [b, e] = g.rd.factor_span[fi];
    (void)e;
    long m = g.rd.factors[fi].rank + 1;
    for (long t = 0; t < m; ++t) {
      std::complex<double> d = 0.0;
      if (t < m - 1) d += v[z + b + t];
      if (t > 0) d -= v[z + b + t - 1];
      diag[factor_offset[fi] + t] = d;
    }
  }

  // Ambient index set of each Levi factor: union of the supports of its simple
  // coroots under the same diagonal embedding. Listing these first, factor by
  // factor, aligns the diagonal with the consecutive blocks of build_cpair.
  auto coroot_support = [&](const IVec& coroot) {
    std::vector<long> support;
    for (std::size_t fi = 0; fi < g.rd.factors.size(); ++fi) {
      auto [b, e] = g.rd.factor_span[fi];
      long m = g.rd.factors[fi].rank + 1;
      for (long t = 0; t < m; ++t) {
        Int d(0);
        if (t < m - 1) d += coroot[b + t];
        if (t > 0) d -= coroot[b + t - 1];
        if (d != 0) support.push_back(factor_offset[fi] + t);
      }
    }
    return support;
  };
  std::vector<long> order;
  std::vector<bool> taken(total, false);
  for (const auto& f : levi.d_c_factors) {
    std::vector<long> members;
    for (int sp : f.simple_positions) {
      const Root& beta = levi.levi_roots[levi.levi_simple[sp]];
      for (long idx : coroot_support(beta.coroot_coeff))
        if (!taken[idx]) {
          taken[idx] = true;
          members.push_back(idx);
        }
    }
    std::sort(members.begin(), members.end());
    if (members.size() != static_cast<std::size_t>(f.type.rank + 1))
      throw defect_error("Levi factor index set has unexpected size");
    // The diagonal is constant on the factor's index set (z is central there).
    for (long idx : members)
      if (std::abs(diag[idx] - diag[members.front()]) > kConstructionTol)
        throw defect_error("Higgs diagonal is not central on a Levi block");
    order.insert(order.end(), members.begin(), members.end());
  }
  for (long idx = 0; idx < total; ++idx)
    if (!taken[idx]) order.push_back(idx);

  h.z = Eigen::MatrixXcd::Zero(total, total);
  for (long t = 0; t < total; ++t) h.z(t, t) = diag[order[t]];
  if (z == 1) h.z += v[0] * Eigen::MatrixXcd::Identity(total, total);
  return h;
}

double verify_splitting(const Eigen::MatrixXcd& z) {
  if (z.rows() != z.cols()) throw input_error("verify_splitting needs a square matrix");
  return max_entry_norm(z * z.adjoint() - z.adjoint() * z);
}

}  // namespace ellimod
