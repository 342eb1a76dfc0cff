#include "ellimod/weyl.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>

namespace ellimod {

IMat simple_reflection_matrix(const RootDatum& rd, int i) {
  int r = rd.rank();
  IMat s = IMat::identity(r);
  for (int k = 0; k < r; ++k) s(i, k) -= rd.cartan(i, k);
  return s;
}

Int weyl_order(const RootDatum& rd) {
  Int o(1);
  for (const auto& f : rd.factors) o *= weyl_order(f);
  return o;
}

bool preserves_root_set(const RootDatum& rd, const IMat& m) {
  std::set<IVec> coroots;
  for (const auto& root : rd.positive_roots) {
    coroots.insert(root.coroot_coeff);
    IVec neg = root.coroot_coeff;
    for (auto& x : neg) x = -x;
    coroots.insert(neg);
  }
  for (const auto& x : coroots)
    if (!coroots.count(m * x)) return false;
  return true;
}

// ---- enumeration ----

namespace {

// Flat arena of int8 matrices keyed by bytes; |entries| of Weyl matrices in the
// coroot basis stay far below 127 for every admissible type.
class WeylArena {
 public:
  explicit WeylArena(int r) : r_(r), size_(static_cast<std::size_t>(r) * r) {}

  std::size_t count() const { return data_.size() / std::max<std::size_t>(size_, 1); }

  const int8_t* at(std::size_t idx) const { return data_.data() + idx * size_; }

  // Returns {index, inserted}.
  std::pair<std::size_t, bool> insert(const std::vector<int8_t>& m) {
    std::size_t h = hash_bytes(m.data());
    auto range = index_.equal_range(h);
    for (auto it = range.first; it != range.second; ++it)
      if (std::equal(m.begin(), m.end(), at(it->second))) return {it->second, false};
    std::size_t idx = count();
    data_.insert(data_.end(), m.begin(), m.end());
    index_.emplace(h, idx);
    return {idx, true};
  }

 private:
  int r_;
  std::size_t size_;
  std::vector<int8_t> data_;
  std::unordered_multimap<std::size_t, std::size_t> index_;

  std::size_t hash_bytes(const int8_t* p) const {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < size_; ++i) {
      h ^= static_cast<std::size_t>(static_cast<uint8_t>(p[i]));
      h *= 1099511628211ull;
    }
    return h;
  }
};

IMat arena_to_imat(const int8_t* p, int r) {
  IMat m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = Int(static_cast<long>(p[i * r + j]));
  return m;
}

struct EnumState {
  WeylArena arena;
  std::vector<std::size_t> parent;
  std::vector<int> gen;
};

void enumerate_core(const RootDatum& rd, const Int& cap, EnumState& st,
                    const std::function<void(std::size_t, const IMat&)>& sink) {
  Int order = weyl_order(rd);
  if (order > cap)
    throw input_error("Weyl enumeration refused: |W| = " + to_string(order) +
                      " exceeds the cap " + to_string(cap));
  int r = rd.rank();
  if (r == 0) {
    st.parent.push_back(0);
    st.gen.push_back(-1);
    sink(0, IMat(0, 0));
    return;
  }
  std::vector<std::vector<long>> refl(r, std::vector<long>(static_cast<std::size_t>(r) * r));
  for (int i = 0; i < r; ++i) {
    IMat s = simple_reflection_matrix(rd, i);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) refl[i][a * r + b] = to_long(s(a, b));
  }
  std::vector<int8_t> id(static_cast<std::size_t>(r) * r, 0);
  for (int i = 0; i < r; ++i) id[i * r + i] = 1;
  st.arena.insert(id);
  st.parent.push_back(0);
  st.gen.push_back(-1);
  sink(0, arena_to_imat(id.data(), r));
  std::size_t head = 0;
  std::vector<int8_t> next(static_cast<std::size_t>(r) * r);
  while (head < st.arena.count()) {
    std::vector<int8_t> cur(st.arena.at(head), st.arena.at(head) + static_cast<std::size_t>(r) * r);
    for (int g = 0; g < r; ++g) {
      // next = S_g * cur: only row g changes.
      std::copy(cur.begin(), cur.end(), next.begin());
      for (int b = 0; b < r; ++b) {
        long acc = 0;
        for (int c = 0; c < r; ++c) acc += refl[g][g * r + c] * cur[c * r + b];
        if (acc < -127 || acc > 127) throw defect_error("Weyl matrix entry out of int8 range");
        next[g * r + b] = static_cast<int8_t>(acc);
      }
      auto [idx, inserted] = st.arena.insert(next);
      if (inserted) {
        st.parent.push_back(head);
        st.gen.push_back(g);
        sink(idx, arena_to_imat(next.data(), r));
      }
    }
    ++head;
  }
  if (Int(static_cast<unsigned long>(st.arena.count())) != order)
    throw defect_error("Weyl enumeration produced " + std::to_string(st.arena.count()) +
                       " elements, expected " + to_string(order));
}

}  // namespace

void enumerate_weyl(const RootDatum& rd, const Int& cap,
                    const std::function<void(const IMat&)>& sink) {
  EnumState st{WeylArena(rd.rank()), {}, {}};
  enumerate_core(rd, cap, st, [&](std::size_t, const IMat& m) { sink(m); });
}

std::vector<WeylElement> enumerate_weyl_vec(const RootDatum& rd, const Int& cap) {
  EnumState st{WeylArena(rd.rank()), {}, {}};
  std::vector<WeylElement> out;
  enumerate_core(rd, cap, st, [&](std::size_t idx, const IMat& m) {
    WeylElement e;
    e.m = m;
    for (std::size_t cur = idx; st.gen[cur] >= 0; cur = st.parent[cur]) e.word.push_back(st.gen[cur]);
    out.push_back(std::move(e));
  });
  return out;
}

// ---- dominance ----

std::pair<QVec, WeylElement> make_dominant(const RootDatum& rd, QVec v) {
  int r = rd.rank();
  WeylElement w;
  w.m = IMat::identity(r);
  while (true) {
    int neg = -1;
    for (int i = 0; i < r && neg < 0; ++i) {
      Rat p(0);
      for (int j = 0; j < r; ++j) p += Rat(rd.cartan(i, j)) * v[j];
      if (p < 0) neg = i;
    }
    if (neg < 0) break;
    IMat s = simple_reflection_matrix(rd, neg);
    QVec nv(r, Rat(0));
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b)
        if (s(a, b) != 0) nv[a] += Rat(s(a, b)) * v[b];
    v = nv;
    w.m = s * w.m;
    w.word.insert(w.word.begin(), neg);
  }
  return {v, w};
}

// ---- alcove ----

Alcove fundamental_alcove(const RootDatum& rd, int factor) {
  auto [b, e] = rd.factor_span[factor];
  Alcove a;
  a.factor = factor;
  a.vertices = QMat(0, rd.rank());
  a.vertices.append_row(QVec(rd.rank(), Rat(0)));
  for (int i = b; i < e; ++i) {
    QVec v = rd.fundamental_coweights.row(i);
    Rat inv_mark = Rat(1) / Rat(rd.marks[factor][i - b]);
    a.vertices.append_row(vec_scale(inv_mark, v));
  }
  for (int i = b; i < e; ++i) {
    IVec alpha(rd.rank(), Int(0));
    alpha[i] = 1;
    a.walls.emplace_back(alpha, Int(0));
  }
  a.walls.emplace_back(rd.highest_roots[factor].root_coeff, Int(1));
  return a;
}

namespace {

bool is_regular(const RootDatum& rd, const QVec& v) {
  for (const auto& root : rd.positive_roots)
    if (rd.pairing(root.root_coeff, v) == 0) return false;
  return true;
}

QVec interior_regular_point(const RootDatum& rd) {
  QVec b(rd.rank(), Rat(0));
  for (std::size_t f = 0; f < rd.factors.size(); ++f) {
    Alcove a = fundamental_alcove(rd, static_cast<int>(f));
    QVec sum(rd.rank(), Rat(0));
    for (std::size_t i = 0; i < a.vertices.rows(); ++i) sum = vec_add(sum, a.vertices.row(i));
    Rat inv_count = Rat(1) / Rat(static_cast<long>(a.vertices.rows()));
    sum = vec_scale(inv_count, sum);
    b = vec_add(b, sum);
  }
  if (is_regular(rd, b)) return b;
  // Fallback: unequal positive weights keep the point interior.
  b.assign(rd.rank(), Rat(0));
  for (std::size_t f = 0; f < rd.factors.size(); ++f) {
    Alcove a = fundamental_alcove(rd, static_cast<int>(f));
    QVec sum(rd.rank(), Rat(0));
    Rat total(0);
    for (std::size_t i = 0; i < a.vertices.rows(); ++i) {
      Rat w(static_cast<long>(i + 1));
      sum = vec_add(sum, vec_scale(w, a.vertices.row(i)));
      total += w;
    }
    Rat inv_total = Rat(1) / total;
    b = vec_add(b, vec_scale(inv_total, sum));
  }
  if (!is_regular(rd, b)) throw defect_error("no regular interior point found");
  return b;
}

std::vector<QVec> sorted_rows(const QMat& m) {
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

WeylElement omega_for_vertex(const RootDatum& rd, const QVec& a_c) {
  QVec b = interior_regular_point(rd);
  auto [dom, w] = make_dominant(rd, vec_sub(b, a_c));
  (void)dom;
  QMat winv_q = *q_inverse(to_rational(w.m));
  auto [winv, den] = clear_denominators(winv_q);
  if (den != 1) throw defect_error("Weyl inverse not integral");
  WeylElement omega;
  omega.m = winv;
  omega.word.assign(w.word.rbegin(), w.word.rend());
  // Exact check: omega maps the vertex set of A onto that of A - a_c. The
  // product alcove is a product of simplices, so this holds iff it holds per
  // factor with a_c restricted to the factor's block.
  for (std::size_t f = 0; f < rd.factors.size(); ++f) {
    Alcove a = fundamental_alcove(rd, static_cast<int>(f));
    QVec a_c_block(rd.rank(), Rat(0));
    auto [fb, fe] = rd.factor_span[f];
    for (int j = fb; j < fe; ++j) a_c_block[j] = a_c[j];
    QMat mapped(0, rd.rank()), shifted(0, rd.rank());
    for (std::size_t i = 0; i < a.vertices.rows(); ++i) {
      QVec v = a.vertices.row(i);
      QVec img(rd.rank(), Rat(0));
      for (int p = 0; p < rd.rank(); ++p)
        for (int q = 0; q < rd.rank(); ++q)
          if (omega.m(p, q) != 0) img[p] += Rat(omega.m(p, q)) * v[q];
      mapped.append_row(img);
      shifted.append_row(vec_sub(v, a_c_block));
    }
    if (sorted_rows(mapped) != sorted_rows(shifted))
      throw defect_error("omega_c verification failed: alcove vertex sets differ");
  }
  return omega;
}

OmegaResult omega_c(const RootDatum& rd, const CenterInfo& center, const IVec& c) {
  OmegaResult res;
  res.a_c = cominuscule_vertex(rd, center, c);
  res.omega = omega_for_vertex(rd, res.a_c);
  return res;
}

IMat fixed_subspace(const IMat& w) {
  std::size_t n = w.rows();
  IMat diff = w - IMat::identity(n);
  return integer_row_kernel(diff.transposed());
}

// ---- Levi and W_c ----

namespace {

IMat embed_central(const IMat& w, int z) {
  int r = static_cast<int>(w.rows());
  IMat full = IMat::identity(z + r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) full(z + i, z + j) = w(i, j);
  return full;
}

// Integer annihilator rows of the row space of `rows` (functionals x with
// rows * x == 0), denominators cleared.
IMat integer_annihilator(const QMat& rows, std::size_t ambient) {
  if (rows.rows() == 0) return IMat::identity(ambient);
  QMat ker = q_kernel_right(rows);
  auto [im, d] = clear_denominators(ker);
  (void)d;
  return im;
}

// Match a connected Cartan matrix against the Bourbaki template of some type;
// returns the type and node order.
std::pair<CartanType, std::vector<int>> classify_component(const IMat& c,
                                                           const std::vector<int>& members) {
  int n = static_cast<int>(members.size());
  std::vector<CartanType> candidates;
  candidates.emplace_back('A', n);
  if (n >= 2) candidates.emplace_back('B', n);
  if (n >= 2) candidates.emplace_back('C', n);
  if (n >= 3) candidates.emplace_back('D', n);
  if (n >= 6 && n <= 8) candidates.emplace_back('E', n);
  if (n == 4) candidates.emplace_back('F', 4);
  if (n == 2) candidates.emplace_back('G', 2);
  for (const auto& type : candidates) {
    IMat tmpl = cartan_matrix(type);
    std::vector<int> assign(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> place = [&](int pos) -> bool {
      if (pos == n) return true;
      for (int cand = 0; cand < n; ++cand) {
        if (used[cand]) continue;
        bool ok = true;
        for (int prev = 0; prev < pos && ok; ++prev) {
          if (tmpl(pos, prev) != c(members[cand], members[assign[prev]])) ok = false;
          if (ok && tmpl(prev, pos) != c(members[assign[prev]], members[cand])) ok = false;
        }
        if (!ok) continue;
        assign[pos] = cand;
        used[cand] = true;
        if (place(pos + 1)) return true;
        used[cand] = false;
        assign[pos] = -1;
      }
      return false;
    };
    if (place(0)) {
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = members[assign[i]];
      return {type, order};
    }
  }
  throw defect_error("Levi component does not match any finite Cartan type");
}

}  // namespace

LeviDatum levi_and_wc(const RootDatum& rd, int central_rank, const WeylElement& omega,
                      const QVec& a_c, const IVec& c, const QMat* lattice_twists, bool need_wc,
                      const Int& cap) {
  const int z = central_rank;
  const int r = rd.rank();
  const int n = z + r;
  LeviDatum out;
  out.central_rank = z;
  out.a_c = a_c;
  out.omega = omega;
  (void)c;

  // s_c = central block + fixed subspace of omega on h'.
  IMat fix = fixed_subspace(omega.m);
  const int f = static_cast<int>(fix.rows());
  out.s_basis = QMat(0, n);
  for (int i = 0; i < z; ++i) {
    QVec row(n, Rat(0));
    row[i] = 1;
    out.s_basis.append_row(row);
  }
  for (int i = 0; i < f; ++i) {
    QVec row(n, Rat(0));
    for (int j = 0; j < r; ++j) row[z + j] = Rat(fix(i, j));
    out.s_basis.append_row(row);
  }

  // Roots vanishing on s_c (the central block pairs to zero automatically).
  for (const auto& root : rd.positive_roots) {
    bool vanishes = true;
    for (int i = 0; i < f && vanishes; ++i)
      if (rd.pairing(root.root_coeff, fix.row(i)) != 0) vanishes = false;
    if (vanishes) out.levi_roots.push_back(root);
  }

  // Simple system: positive Levi roots that are not sums of two others.
  std::set<IVec> levi_set;
  for (const auto& root : out.levi_roots) levi_set.insert(root.root_coeff);
  for (std::size_t i = 0; i < out.levi_roots.size(); ++i) {
    bool decomposable = false;
    for (const auto& other : out.levi_roots) {
      IVec diff = vec_sub(out.levi_roots[i].root_coeff, other.root_coeff);
      bool nonzero = false;
      for (const auto& x : diff)
        if (x != 0) nonzero = true;
      if (!nonzero) continue;  // other == this root
      if (levi_set.count(diff)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) out.levi_simple.push_back(static_cast<int>(i));
  }
  const int q = static_cast<int>(out.levi_simple.size());
  if (q != r - f) throw defect_error("Levi simple system has unexpected size");

  // Cartan matrix of the Levi simple system.
  IMat levi_cartan(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const Root& bi = out.levi_roots[out.levi_simple[i]];
      const Root& bj = out.levi_roots[out.levi_simple[j]];
      levi_cartan(i, j) = rd.pairing(bi.root_coeff, bj.coroot_coeff);
    }
  {
    // Split into connected components and classify each.
    std::vector<int> comp(q, -1);
    int ncomp = 0;
    for (int i = 0; i < q; ++i) {
      if (comp[i] >= 0) continue;
      std::vector<int> stack{i};
      comp[i] = ncomp;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < q; ++u)
          if (comp[u] < 0 && levi_cartan(v, u) != 0) {
            comp[u] = ncomp;
            stack.push_back(u);
          }
      }
      ++ncomp;
    }
    for (int k = 0; k < ncomp; ++k) {
      std::vector<int> members;
      for (int i = 0; i < q; ++i)
        if (comp[i] == k) members.push_back(i);
      auto [type, order] = classify_component(levi_cartan, members);
      out.d_c_factors.push_back(LeviFactor{type, order, {}});
    }
    std::sort(out.d_c_factors.begin(), out.d_c_factors.end(),
              [](const LeviFactor& a, const LeviFactor& b) {
                return a.simple_positions.front() < b.simple_positions.front();
              });
  }

  // Canonical central lift: mu = a_c + m inside the span of the Levi coroots,
  // classified factor by factor in the centre of the simply connected D_c.
  QMat levi_coroots(0, r);
  for (int i = 0; i < q; ++i)
    levi_coroots.append_row(to_rational(out.levi_roots[out.levi_simple[i]].coroot_coeff));
  if (q > 0 || !a_c.empty()) {
    IMat ann = integer_annihilator(levi_coroots, r);  // functionals vanishing on h_c
    // Solve ann * (a_c + m) == 0 for integer m.
    IMat sys(ann.rows(), r);
    IVec rhs(ann.rows(), Int(0));
    {
      QMat sysq(ann.rows(), static_cast<std::size_t>(r) + 1);
      for (std::size_t i = 0; i < ann.rows(); ++i) {
        Rat b(0);
        for (int j = 0; j < r; ++j) {
          sysq(i, j) = Rat(ann(i, j));
          b -= Rat(ann(i, j)) * a_c[j];
        }
        sysq(i, r) = b;
      }
      auto [cleared, d] = clear_denominators(sysq);
      (void)d;
      for (std::size_t i = 0; i < ann.rows(); ++i) {
        for (int j = 0; j < r; ++j) sys(i, j) = cleared(i, j);
        rhs[i] = cleared(i, r);
      }
    }
    auto m = solve_integer(sys, rhs);
    if (!m) throw defect_error("no integral translate of a_c lies in the Levi coroot span");
    QVec mu(r);
    for (int j = 0; j < r; ++j) mu[j] = a_c[j] + Rat((*m)[j]);
    QVec coords(q, Rat(0));
    if (q > 0) {
      auto sol = q_solve_in_rowspace(levi_coroots, mu);
      if (!sol) throw defect_error("central lift escapes the Levi coroot span");
      coords = *sol;
    }
    for (auto& factor : out.d_c_factors) {
      RootDatum frd = build_root_datum({factor.type});
      CenterInfo fcenter = center_of_simply_connected(frd);
      QVec local(factor.type.rank);
      for (int i = 0; i < factor.type.rank; ++i) local[i] = coords[factor.simple_positions[i]];
      try {
        factor.p_class = fcenter.classify(frd, local);
      } catch (const input_error& e) {
        throw defect_error(std::string("central lift is not central in D_c: ") + e.what());
      }
    }
  }

  // Kernel lattice of exp on the Cartan algebra: Z^{z+r} plus any twists.
  QMat lambda_h_rows(0, n);
  for (int i = 0; i < n; ++i) {
    QVec row(n, Rat(0));
    row[i] = 1;
    lambda_h_rows.append_row(row);
  }
  if (lattice_twists)
    for (std::size_t i = 0; i < lattice_twists->rows(); ++i)
      lambda_h_rows.append_row(lattice_twists->row(i));
  Lattice lambda_h = Lattice::from_rows(lambda_h_rows);
  QMat bh = lambda_h.basis_rows();

  // Embedded Levi coroot rows (the complement h_c of s_c inside h).
  QMat hc_rows(0, n);
  for (int i = 0; i < q; ++i) {
    QVec row(n, Rat(0));
    for (int j = 0; j < r; ++j) row[z + j] = levi_coroots(i, j);
    hc_rows.append_row(row);
  }
  QMat decomp(0, n);
  for (std::size_t i = 0; i < out.s_basis.rows(); ++i) decomp.append_row(out.s_basis.row(i));
  for (std::size_t i = 0; i < hc_rows.rows(); ++i) decomp.append_row(hc_rows.row(i));
  if (q_rank(decomp) != static_cast<std::size_t>(n))
    throw defect_error("s_c and the Levi coroots do not span the Cartan algebra");

  // Lambda_{S_c} = Lambda_H intersected with s_c.
  IMat ann_s = integer_annihilator(out.s_basis, n);
  {
    QMat constraint(bh.rows(), ann_s.rows());
    for (std::size_t i = 0; i < bh.rows(); ++i)
      for (std::size_t j = 0; j < ann_s.rows(); ++j) {
        Rat acc(0);
        for (int k = 0; k < n; ++k) acc += bh(i, k) * Rat(ann_s(j, k));
        constraint(i, j) = acc;
      }
    auto [ci, d] = clear_denominators(constraint);
    (void)d;
    IMat ys = integer_row_kernel(ci);
    QMat rows(0, n);
    for (std::size_t i = 0; i < ys.rows(); ++i) {
      QVec row(n, Rat(0));
      for (std::size_t k = 0; k < bh.rows(); ++k)
        if (ys(i, k) != 0) row = vec_add(row, vec_scale(Rat(ys(i, k)), bh.row(k)));
      rows.append_row(row);
    }
    out.lambda_s = Lattice::from_rows(rows);
  }

  // Lambda_{Sbar_c}: projection of Lambda_H onto s_c along h_c.
  {
    QMat rows(0, n);
    for (std::size_t i = 0; i < bh.rows(); ++i) {
      auto sol = q_solve_in_rowspace(decomp, bh.row(i));
      if (!sol) throw defect_error("projection decomposition failed");
      QVec proj(n, Rat(0));
      for (std::size_t k = 0; k < out.s_basis.rows(); ++k)
        if ((*sol)[k] != 0) proj = vec_add(proj, vec_scale((*sol)[k], out.s_basis.row(k)));
      rows.append_row(proj);
    }
    out.lambda_sbar = Lattice::from_rows(rows);
  }
  if (!out.lambda_sbar.contains_lattice(out.lambda_s))
    throw defect_error("Lambda_S is not contained in Lambda_Sbar");
  if (out.lambda_s.rank() != out.lambda_sbar.rank() ||
      out.lambda_sbar.rank() != static_cast<std::size_t>(z + f))
    throw defect_error("unexpected lattice rank in the Levi centre");
  out.f_c = quotient_group(out.lambda_sbar, out.lambda_s);

  // Class of p(c) in F_c: find ell = (0|a_c) + x with x in Lambda_H, ell in s_c.
  {
    QVec v_c(n, Rat(0));
    for (int j = 0; j < r; ++j) v_c[z + j] = a_c[j];
    QMat sysq(ann_s.rows(), bh.rows() + 1);
    for (std::size_t e = 0; e < ann_s.rows(); ++e) {
      for (std::size_t i = 0; i < bh.rows(); ++i) {
        Rat acc(0);
        for (int k = 0; k < n; ++k) acc += Rat(ann_s(e, k)) * bh(i, k);
        sysq(e, i) = acc;
      }
      Rat b(0);
      for (int k = 0; k < n; ++k) b -= Rat(ann_s(e, k)) * v_c[k];
      sysq(e, bh.rows()) = b;
    }
    auto [cleared, d] = clear_denominators(sysq);
    (void)d;
    IMat sys(ann_s.rows(), bh.rows());
    IVec rhs(ann_s.rows());
    for (std::size_t e = 0; e < ann_s.rows(); ++e) {
      for (std::size_t i = 0; i < bh.rows(); ++i) sys(e, i) = cleared(e, i);
      rhs[e] = cleared(e, bh.rows());
    }
    auto y = solve_integer(sys, rhs);
    if (!y) {
      out.p_c_in_s_c = false;  // only possible without the group-level gluing
    } else {
      QVec ell = v_c;
      for (std::size_t i = 0; i < bh.rows(); ++i)
        if ((*y)[i] != 0) ell = vec_add(ell, vec_scale(Rat((*y)[i]), bh.row(i)));
      if (!out.lambda_sbar.contains(ell))
        throw defect_error("p(c) representative escapes Lambda_Sbar");
      // Identify the class of ell over the f_c generators by direct search.
      std::size_t t = out.f_c.divisors.size();
      IVec idx(t, Int(0));
      bool found = false;
      while (true) {
        QVec cand = ell;
        for (std::size_t g = 0; g < t; ++g)
          if (idx[g] != 0) cand = vec_sub(cand, vec_scale(Rat(idx[g]), out.f_c.generators.row(g)));
        if (out.lambda_s.contains(cand)) {
          out.p_c_in_f_c = idx;
          found = true;
          break;
        }
        std::size_t pos = 0;
        for (; pos < t; ++pos) {
          idx[pos] += 1;
          if (idx[pos] < out.f_c.divisors[pos]) break;
          idx[pos] = 0;
        }
        if (pos == t) break;
      }
      if (!found) throw defect_error("class of p(c) not found in F_c");
    }
  }

  // W(levi) by closure of the Levi reflections.
  std::set<IMat> levi_group;
  {
    std::vector<IMat> gens;
    for (int i = 0; i < q; ++i) {
      const Root& beta = out.levi_roots[out.levi_simple[i]];
      IMat refl = IMat::identity(r);
      // s_beta(v) = v - <beta, v> beta^vee
      IVec arow(r, Int(0));
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) arow[b] += beta.root_coeff[a] * rd.cartan(a, b);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) refl(a, b) -= beta.coroot_coeff[a] * arow[b];
      gens.push_back(refl);
    }
    std::vector<IMat> frontier{IMat::identity(r)};
    levi_group.insert(frontier[0]);
    while (!frontier.empty()) {
      std::vector<IMat> next;
      for (const auto& m : frontier)
        for (const auto& g : gens) {
          IMat prod = g * m;
          if (levi_group.insert(prod).second) next.push_back(prod);
        }
      frontier = std::move(next);
    }
  }
  out.w_levi_order = Int(static_cast<unsigned long>(levi_group.size()));

  if (need_wc) {
    QMat sbar_rows = out.lambda_sbar.basis_rows();
    std::size_t rank_bar = out.lambda_sbar.rank();
    // Square decomposition basis [Lambda_Sbar basis; Levi coroots]; its
    // inverse turns the per-element coordinate solves into one matrix-vector
    // product each.
    QMat full_basis(0, n);
    for (std::size_t i = 0; i < sbar_rows.rows(); ++i) full_basis.append_row(sbar_rows.row(i));
    for (std::size_t i = 0; i < hc_rows.rows(); ++i) full_basis.append_row(hc_rows.row(i));
    auto basis_inv_t = q_inverse(full_basis.transposed());
    if (!basis_inv_t) throw defect_error("Lambda_Sbar basis and Levi coroots do not span");
    std::map<IMat, bool> seen;
    std::vector<IMat> w_c;
    Int stab(0);
    enumerate_weyl(rd, cap, [&](const IMat& w) {
      for (int i = 0; i < f; ++i) {
        IVec img = w * fix.row(i);
        for (std::size_t e = 0; e < ann_s.rows(); ++e) {
          Int acc(0);
          for (int j = 0; j < r; ++j) acc += ann_s(e, z + j) * img[j];
          if (acc != 0) return;  // does not stabilize s_c
        }
      }
      ++stab;
      IMat full = embed_central(w, z);
      IMat action(rank_bar, rank_bar);
      for (std::size_t j = 0; j < rank_bar; ++j) {
        QVec img(n, Rat(0));
        QVec base = sbar_rows.row(j);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            if (full(a, b) != 0) img[a] += Rat(full(a, b)) * base[b];
        QVec coords = *basis_inv_t * img;
        for (std::size_t i = 0; i < rank_bar; ++i) {
          if (!is_integer(coords[i])) throw defect_error("W_c does not preserve Lambda_Sbar");
          action(i, j) = coords[i].get_num();
        }
        for (std::size_t i = rank_bar; i < coords.size(); ++i)
          if (coords[i] != 0) throw defect_error("W_c image escapes the span of Lambda_Sbar");
      }
      if (seen.emplace(action, true).second) w_c.push_back(action);
    });
    out.stabilizer_order = stab;
    if (Int(static_cast<unsigned long>(w_c.size())) * out.w_levi_order != stab)
      throw defect_error("W_c action on Lambda_Sbar is not faithful");
    // Identity first (it is discovered first by the BFS).
    if (w_c.empty() || !w_c.front().is_identity())
      throw defect_error("W_c enumeration did not start at the identity");
    out.w_c = std::move(w_c);
  }
  return out;
}

std::vector<IMat> point_centralizer(const std::vector<IMat>& w_c, const QVec& s_re,
                                    const QVec& s_im) {
  std::vector<IMat> out;
  for (const auto& w : w_c) {
    if (w.rows() != s_re.size() || s_re.size() != s_im.size())
      throw input_error("point has wrong dimension for W_c");
    QVec re(s_re.size(), Rat(0)), im(s_im.size(), Rat(0));
    for (std::size_t i = 0; i < w.rows(); ++i)
      for (std::size_t j = 0; j < w.cols(); ++j) {
        if (w(i, j) == 0) continue;
        re[i] += Rat(w(i, j)) * s_re[j];
        im[i] += Rat(w(i, j)) * s_im[j];
      }
    if (re == s_re && im == s_im) out.push_back(w);
  }
  return out;
}

std::vector<IMat> group_generators(const std::vector<IMat>& elements) {
  if (elements.empty()) return {};
  std::set<IMat> closure;
  closure.insert(IMat::identity(elements.front().rows()));
  std::vector<IMat> gens;
  for (const auto& e : elements) {
    if (closure.count(e)) continue;
    gens.push_back(e);
    // Re-close.
    std::vector<IMat> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<IMat> next;
      for (const auto& m : frontier)
        for (const auto& g : gens) {
          IMat prod = g * m;
          if (closure.insert(prod).second) next.push_back(prod);
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

}  // namespace ellimod
