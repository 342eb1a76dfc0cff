#include "ellimod/intlat.hpp"

#include <algorithm>
#include <map>

namespace ellimod {

namespace {

void swap_rows(IMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[a] -= q * row[b]
void add_row(IMat& m, std::size_t a, std::size_t b, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) -= q * m(b, j);
}

void add_col(IMat& m, std::size_t a, std::size_t b, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) -= q * m(i, b);
}

void negate_row(IMat& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}

}  // namespace

HermiteResult hermite_form(const IMat& m) {
  IMat h = m;
  IMat u = IMat::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Euclidean reduction in column c among rows >= r.
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        if (best == h.rows() || cmp(abs(h(i, c)), abs(h(best, c))) < 0) best = i;
      }
      if (best == h.rows()) break;
      swap_rows(h, r, best);
      swap_rows(u, r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Int q = floor_div(h(i, c), h(r, c));
        add_row(h, i, r, q);
        add_row(u, i, r, q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      add_row(h, i, r, q);
      add_row(u, i, r, q);
    }
    ++r;
  }
  if (u * m != h) throw defect_error("hermite_form: transform verification failed");
  return {h, u, r};
}

SmithResult smith_form(const IMat& m) {
  IMat s = m;
  IMat u = IMat::identity(m.rows());
  IMat v = IMat::identity(m.cols());
  std::size_t n = std::min(s.rows(), s.cols());
  std::size_t t = 0;
  for (; t < n; ++t) {
    // Find a pivot of minimal absolute value in the trailing block.
    std::size_t pi = s.rows(), pj = 0;
    for (std::size_t i = t; i < s.rows(); ++i)
      for (std::size_t j = t; j < s.cols(); ++j) {
        if (s(i, j) == 0) continue;
        if (pi == s.rows() || cmp(abs(s(i, j)), abs(s(pi, pj))) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi == s.rows()) break;  // trailing block is zero
    swap_rows(s, t, pi);
    swap_rows(u, t, pi);
    swap_cols(s, t, pj);
    swap_cols(v, t, pj);
    while (true) {
      bool again = false;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        Int q = floor_div(s(i, t), s(t, t));
        add_row(s, i, t, q);
        add_row(u, i, t, q);
        if (s(i, t) != 0) {
          swap_rows(s, t, i);
          swap_rows(u, t, i);
          again = true;
        }
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        Int q = floor_div(s(t, j), s(t, t));
        add_col(s, j, t, q);
        add_col(v, j, t, q);
        if (s(t, j) != 0) {
          swap_cols(s, t, j);
          swap_cols(v, t, j);
          again = true;
        }
      }
      if (again) continue;
      // Enforce divisibility of the trailing block by the pivot.
      bool fixed = true;
      for (std::size_t i = t + 1; i < s.rows() && fixed; ++i)
        for (std::size_t j = t + 1; j < s.cols() && fixed; ++j)
          if (mod_floor(s(i, j), s(t, t)) != 0) {
            add_row(s, t, i, Int(-1));  // row t += row i
            add_row(u, t, i, Int(-1));
            fixed = false;
          }
      if (fixed) break;
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
  }
  if (u * m * v != s) throw defect_error("smith_form: transform verification failed");
  return {s, u, v, t};
}

IMat integer_row_kernel(const IMat& m) {
  auto hr = hermite_form(m);
  IMat kernel(0, m.rows());
  for (std::size_t i = hr.rank; i < m.rows(); ++i) kernel.append_row(hr.u.row(i));
  return kernel;
}

std::optional<IVec> solve_integer(const IMat& m, const IVec& t) {
  // m (p x n), t (p): find x in Z^n with m x == t, via u m v = s.
  auto sr = smith_form(m);
  IVec ut = sr.u * t;
  std::size_t n = m.cols();
  IVec y(n, Int(0));
  for (std::size_t i = 0; i < ut.size(); ++i) {
    Int d = (i < std::min(sr.s.rows(), sr.s.cols())) ? sr.s(i, i) : Int(0);
    if (d == 0) {
      if (ut[i] != 0) return std::nullopt;
    } else {
      if (mod_floor(ut[i], d) != 0) return std::nullopt;
      if (i < n) y[i] = ut[i] / d;
    }
  }
  return sr.v * y;
}

// ---- Lattice ----

Lattice Lattice::standard(std::size_t n) {
  Lattice l(n);
  l.basis_ = IMat::identity(n);
  return l;
}

Lattice Lattice::from_rows(const QMat& rows) {
  Lattice l(rows.cols());
  auto [im, d] = clear_denominators(rows);
  l.basis_ = im;
  l.den_ = d;
  l.normalize();
  return l;
}

void Lattice::normalize() {
  auto hr = hermite_form(basis_);
  IMat trimmed(0, ambient_);
  for (std::size_t i = 0; i < hr.rank; ++i) trimmed.append_row(hr.h.row(i));
  basis_ = trimmed;
  // Reduce the stored denominator by the content.
  Int g = den_;
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    for (std::size_t j = 0; j < basis_.cols(); ++j) g = gcd(g, basis_(i, j));
  if (g > 1) {
    for (std::size_t i = 0; i < basis_.rows(); ++i)
      for (std::size_t j = 0; j < basis_.cols(); ++j) basis_(i, j) /= g;
    den_ /= g;
  }
  if (den_ == 0) throw defect_error("lattice denominator vanished");
}

QMat Lattice::basis_rows() const {
  QMat q(basis_.rows(), ambient_);
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) q(i, j) = Rat(basis_(i, j)) / Rat(den_);
  return q;
}

std::optional<IVec> Lattice::coordinates_of(const QVec& v) const {
  if (v.size() != ambient_) throw input_error("vector dimension does not match lattice ambient");
  // v = x * basis / den  <=>  basis^T x = den * v (must be integral after clearing).
  QVec target(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) target[j] = v[j] * Rat(den_);
  auto [tv, td] = clear_denominators(target);
  if (td != 1) return std::nullopt;
  return solve_integer(basis_.transposed(), tv);
}

bool Lattice::contains(const QVec& v) const { return coordinates_of(v).has_value(); }

bool Lattice::contains_lattice(const Lattice& other) const {
  if (other.ambient() != ambient_) return false;
  for (std::size_t i = 0; i < other.rank(); ++i) {
    QMat rows = other.basis_rows();
    if (!contains(rows.row(i))) return false;
  }
  return true;
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  if (a.ambient() != b.ambient()) throw input_error("intersect: ambient dimension mismatch");
  Int e = lcm(a.denominator(), b.denominator());
  Int fa = e / a.denominator(), fb = e / b.denominator();
  IMat A = a.integer_basis(), B = b.integer_basis();
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) *= fa;
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) B(i, j) *= fb;
  // (x, y) with x A - y B = 0 <=> (x,y) in the row kernel of [A; -B].
  IMat stacked(0, a.ambient());
  for (std::size_t i = 0; i < A.rows(); ++i) stacked.append_row(A.row(i));
  for (std::size_t i = 0; i < B.rows(); ++i) {
    IVec r = B.row(i);
    for (auto& x : r) x = -x;
    stacked.append_row(r);
  }
  IMat ker = integer_row_kernel(stacked);
  QMat rows(0, a.ambient());
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    IVec full = ker.row(i);
    IVec x(full.begin(), full.begin() + A.rows());
    IVec prod = vec_mat(x, A);
    QVec qrow(prod.size());
    for (std::size_t j = 0; j < prod.size(); ++j) qrow[j] = Rat(prod[j]) / Rat(e);
    rows.append_row(qrow);
  }
  return Lattice::from_rows(rows);
}

Lattice saturate(const Lattice& l) {
  // Saturation of the integer span inside Z^n, denominator kept.
  IMat k1 = integer_row_kernel(l.integer_basis().transposed());  // {x : basis x^T = 0}
  IMat sat = integer_row_kernel(k1.transposed());                // {v : k1 v^T = 0}
  QMat rows(0, l.ambient());
  for (std::size_t i = 0; i < sat.rows(); ++i) {
    QVec qrow(l.ambient());
    for (std::size_t j = 0; j < l.ambient(); ++j) qrow[j] = Rat(sat(i, j)) / Rat(l.denominator());
    rows.append_row(qrow);
  }
  return Lattice::from_rows(rows);
}

FiniteAbelianGroup quotient_group(const Lattice& sup, const Lattice& sub) {
  if (sup.ambient() != sub.ambient()) throw input_error("quotient_group: ambient mismatch");
  if (sup.rank() != sub.rank()) throw input_error("quotient_group: ranks differ");
  // Express sub's basis over sup's: rows of X with X * sup_basis == sub_basis.
  QMat supq = sup.basis_rows(), subq = sub.basis_rows();
  IMat x(sub.rank(), sup.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto coords = sup.coordinates_of(subq.row(i));
    if (!coords) throw input_error("quotient_group: sub is not contained in sup");
    x.set_row(i, *coords);
  }
  auto pres = abelian_quotient_presentation(sup.rank(), x);
  FiniteAbelianGroup g;
  g.generators = QMat(0, sup.ambient());
  for (std::size_t j = 0; j < pres.orders.size(); ++j) {
    if (pres.orders[j] == 0)
      throw defect_error("quotient_group: free factor in a finite quotient");
    g.divisors.push_back(pres.orders[j]);
    QVec rep(sup.ambient(), Rat(0));
    for (std::size_t i = 0; i < sup.rank(); ++i) {
      if (pres.gen_combos(i, j) == 0) continue;
      rep = vec_add(rep, vec_scale(Rat(pres.gen_combos(i, j)), supq.row(i)));
    }
    g.generators.append_row(rep);
  }
  return g;
}

TorusAutomorphism::TorusAutomorphism(IMat mat) : m(std::move(mat)) {
  if (m.rows() != m.cols()) throw input_error("torus automorphism must be square");
  Rat d = q_det(to_rational(m));
  if (d != 1 && d != -1) throw input_error("torus automorphism must be unimodular");
}

FixedPointReport fixed_point_report(const TorusAutomorphism& w, int circle_factors) {
  std::size_t n = w.m.rows();
  IMat diff = w.m - IMat::identity(n);
  Rat d = q_det(to_rational(diff));
  FixedPointReport rep;
  if (d != 0) {
    rep.isolated = true;
    Int cnt = abs(d.get_num());
    rep.count = 1;
    for (int i = 0; i < circle_factors; ++i) rep.count *= cnt;
    rep.fixed_dim = 0;
  } else {
    rep.isolated = false;
    rep.count = 0;
    std::size_t ker = n - q_rank(to_rational(diff));
    rep.fixed_dim = circle_factors * static_cast<int>(ker);
  }
  return rep;
}

AbelianPresentation abelian_quotient_presentation(std::size_t num_gens, const IMat& relations) {
  IMat rel = relations;
  if (rel.rows() == 0) rel = IMat(0, num_gens);
  if (rel.cols() != num_gens) throw defect_error("presentation relation width mismatch");
  // Group = Z^g / rowspan(rel) = Z^g / (rel^T columns). With u rel^T v = s the
  // class of x maps to u x, so the generator of factor i is u^-1 e_i.
  auto sr = smith_form(rel.transposed());
  QMat uinv_q = *q_inverse(to_rational(sr.u));
  auto [uinv, d] = clear_denominators(uinv_q);
  if (d != 1) throw defect_error("unimodular inverse not integral");
  AbelianPresentation out;
  out.gen_combos = IMat(num_gens, 0);
  std::vector<IVec> cols;
  for (std::size_t i = 0; i < num_gens; ++i) {
    Int order = (i < std::min(sr.s.rows(), sr.s.cols())) ? sr.s(i, i) : Int(0);
    if (order == 1) continue;  // trivial factor
    out.orders.push_back(order);
    cols.push_back(uinv.col(i));
  }
  out.gen_combos = IMat(num_gens, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < num_gens; ++i) out.gen_combos(i, j) = cols[j][i];
  return out;
}

}  // namespace ellimod
