#include "ellimod/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace ellimod {

CartanType::CartanType(char l, int r) : letter(static_cast<char>(std::toupper(l))), rank(r) {
  bool ok = false;
  switch (letter) {
    case 'A': ok = rank >= 1; break;
    case 'B': ok = rank >= 2; break;
    case 'C': ok = rank >= 2; break;
    case 'D': ok = rank >= 3; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: ok = false;
  }
  if (!ok)
    throw input_error("inadmissible Cartan type " + std::string(1, letter) +
                      std::to_string(rank));
}

std::vector<CartanType> parse_cartan_types(std::string_view text) {
  std::vector<CartanType> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char letter = text[i++];
    if (!std::isalpha(static_cast<unsigned char>(letter)))
      throw input_error("bad Cartan type string: " + std::string(text));
    std::string digits;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      digits += text[i++];
    if (digits.empty()) throw input_error("missing rank in Cartan type string: " + std::string(text));
    out.emplace_back(letter, std::stoi(digits));
    if (i < text.size()) {
      if (text[i] != 'x' && text[i] != 'X')
        throw input_error("expected 'x' separator in Cartan type string: " + std::string(text));
      ++i;
      if (i == text.size()) throw input_error("trailing separator in Cartan type string");
    }
  }
  if (out.empty()) throw input_error("empty Cartan type string");
  return out;
}

std::string format_cartan_types(const std::vector<CartanType>& factors) {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "x";
    s += factors[i].name();
  }
  return s;
}

IMat cartan_matrix(const CartanType& t) {
  int n = t.rank;
  IMat a(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 2;
  auto link = [&](int i, int j, int aij, int aji) {
    a(i, j) = aij;
    a(j, i) = aji;
  };
  auto chain = [&](int from, int to) {
    for (int i = from; i < to; ++i) link(i, i + 1, -1, -1);
  };
  switch (t.letter) {
    case 'A':
      chain(0, n - 1);
      break;
    case 'B':
      chain(0, n - 2);
      link(n - 2, n - 1, -2, -1);  // alpha_{n-1} long, alpha_n short
      break;
    case 'C':
      chain(0, n - 2);
      link(n - 2, n - 1, -1, -2);
      break;
    case 'D':
      chain(0, n - 3);
      link(n - 3, n - 2, -1, -1);
      link(n - 3, n - 1, -1, -1);
      break;
    case 'E':
      // Bourbaki: chain 1-3-4-5-6(-7)(-8) with node 2 attached to node 4.
      link(0, 2, -1, -1);
      link(1, 3, -1, -1);
      for (int i = 2; i < n - 1; ++i) link(i, i + 1, -1, -1);
      break;
    case 'F':
      link(0, 1, -1, -1);
      link(1, 2, -2, -1);
      link(2, 3, -1, -1);
      break;
    case 'G':
      link(0, 1, -1, -3);
      break;
  }
  return a;
}

Int classical_positive_root_count(const CartanType& t) {
  long n = t.rank;
  switch (t.letter) {
    case 'A': return Int(n * (n + 1) / 2);
    case 'B':
    case 'C': return Int(n * n);
    case 'D': return Int(n * (n - 1));
    case 'E': return n == 6 ? Int(36) : (n == 7 ? Int(63) : Int(120));
    case 'F': return Int(24);
    case 'G': return Int(6);
  }
  throw defect_error("unreachable Cartan letter");
}

Int weyl_order(const CartanType& t) {
  long n = t.rank;
  Int f(1);
  switch (t.letter) {
    case 'A':
      for (long i = 2; i <= n + 1; ++i) f *= i;
      return f;
    case 'B':
    case 'C':
      for (long i = 2; i <= n; ++i) f *= i;
      for (long i = 0; i < n; ++i) f *= 2;
      return f;
    case 'D':
      for (long i = 2; i <= n; ++i) f *= i;
      for (long i = 0; i < n - 1; ++i) f *= 2;
      return f;
    case 'E': return n == 6 ? Int(51840) : (n == 7 ? Int(2903040) : Int(696729600));
    case 'F': return Int(1152);
    case 'G': return Int(12);
  }
  throw defect_error("unreachable Cartan letter");
}

RootDatum RootDatum::empty() {
  RootDatum rd;
  rd.cartan = IMat(0, 0);
  rd.fundamental_coweights = QMat(0, 0);
  return rd;
}

Rat RootDatum::pairing(const IVec& root_coeff, const QVec& v) const {
  // <sum c_i alpha_i, v> = c^T A v
  QVec av(rank(), Rat(0));
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) av[i] += Rat(cartan(i, j)) * v[j];
  Rat s(0);
  for (int i = 0; i < rank(); ++i) s += Rat(root_coeff[i]) * av[i];
  return s;
}

Int RootDatum::pairing(const IVec& root_coeff, const IVec& v) const {
  Int s(0);
  for (int i = 0; i < rank(); ++i) {
    if (root_coeff[i] == 0) continue;
    Int av(0);
    for (int j = 0; j < rank(); ++j) av += cartan(i, j) * v[j];
    s += root_coeff[i] * av;
  }
  return s;
}

namespace {

// Simple reflection s_j acting on root coefficients: c_j -= sum_i c_i A_{ij}.
IVec reflect_root(const IMat& a, const IVec& c, int j) {
  IVec out = c;
  Int p(0);
  for (std::size_t i = 0; i < c.size(); ++i) p += c[i] * a(i, j);
  out[j] -= p;
  return out;
}

// Simple reflection s_j acting on coroot coordinates: x_j -= sum_i A_{ji} x_i.
IVec reflect_coroot(const IMat& a, const IVec& x, int j) {
  IVec out = x;
  Int p(0);
  for (std::size_t i = 0; i < x.size(); ++i) p += a(j, i) * x[i];
  out[j] -= p;
  return out;
}

}  // namespace

RootDatum build_root_datum(const std::vector<CartanType>& factors) {
  if (factors.empty()) throw input_error("build_root_datum: no factors");
  RootDatum rd;
  rd.factors = factors;
  int r = 0;
  for (const auto& f : factors) {
    rd.factor_span.emplace_back(r, r + f.rank);
    r += f.rank;
  }
  rd.cartan = IMat(r, r);
  rd.factor_of_node.assign(r, 0);
  for (std::size_t f = 0; f < factors.size(); ++f) {
    IMat block = cartan_matrix(factors[f]);
    auto [b, e] = rd.factor_span[f];
    for (int i = b; i < e; ++i) {
      rd.factor_of_node[i] = static_cast<int>(f);
      for (int j = b; j < e; ++j) rd.cartan(i, j) = block(i - b, j - b);
    }
  }

  QMat inv = *q_inverse(to_rational(rd.cartan));
  rd.fundamental_coweights = QMat(r, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) rd.fundamental_coweights(j, i) = inv(i, j);  // column j of A^-1

  // Reflection closure from the simple roots, tracking root and coroot sides.
  std::set<IVec> seen;
  std::vector<Root> all;
  for (int i = 0; i < r; ++i) {
    Root root;
    root.root_coeff.assign(r, Int(0));
    root.coroot_coeff.assign(r, Int(0));
    root.root_coeff[i] = 1;
    root.coroot_coeff[i] = 1;
    root.factor = rd.factor_of_node[i];
    if (seen.insert(root.root_coeff).second) all.push_back(root);
  }
  for (std::size_t head = 0; head < all.size(); ++head) {
    Root cur = all[head];
    auto [b, e] = rd.factor_span[cur.factor];
    for (int j = b; j < e; ++j) {
      Root next;
      next.root_coeff = reflect_root(rd.cartan, cur.root_coeff, j);
      next.coroot_coeff = reflect_coroot(rd.cartan, cur.coroot_coeff, j);
      next.factor = cur.factor;
      if (seen.insert(next.root_coeff).second) all.push_back(next);
    }
  }
  for (auto& root : all) {
    bool positive = true;
    for (const auto& c : root.root_coeff)
      if (c < 0) positive = false;
    if (positive) rd.positive_roots.push_back(root);
  }
  std::sort(rd.positive_roots.begin(), rd.positive_roots.end(), [](const Root& a, const Root& b) {
    if (a.factor != b.factor) return a.factor < b.factor;
    Int ha = a.height(), hb = b.height();
    if (ha != hb) return ha < hb;
    return a.root_coeff < b.root_coeff;
  });

  for (std::size_t f = 0; f < factors.size(); ++f) {
    Int expected = classical_positive_root_count(factors[f]);
    Int got(0);
    const Root* highest = nullptr;
    for (const auto& root : rd.positive_roots) {
      if (root.factor != static_cast<int>(f)) continue;
      ++got;
      if (!highest || root.height() > highest->height()) highest = &root;
    }
    if (got != expected)
      throw defect_error("positive root count mismatch for " + factors[f].name() + ": got " +
                         to_string(got) + ", expected " + to_string(expected));
    rd.highest_roots.push_back(*highest);
    auto [b, e] = rd.factor_span[f];
    IVec marks(highest->root_coeff.begin() + b, highest->root_coeff.begin() + e);
    rd.marks.push_back(marks);
  }
  return rd;
}

// ---- center ----

namespace {

// Canonical generator nodes (0-indexed within the factor), Bourbaki numbering.
std::vector<int> canonical_generator_nodes(const CartanType& t) {
  int n = t.rank;
  switch (t.letter) {
    case 'A': return {0};
    case 'B': return {0};
    case 'C': return {n - 1};
    case 'D': return n % 2 == 0 ? std::vector<int>{n - 2, n - 1} : std::vector<int>{n - 1};
    case 'E':
      if (n == 6) return {0};
      if (n == 7) return {6};
      return {};
    case 'F':
    case 'G': return {};
  }
  throw defect_error("unreachable Cartan letter");
}

}  // namespace

CenterInfo center_of_simply_connected(const RootDatum& rd) {
  CenterInfo info;
  info.group.generators = QMat(0, rd.rank());
  for (std::size_t f = 0; f < rd.factors.size(); ++f) {
    auto [b, e] = rd.factor_span[f];
    int gen_begin = static_cast<int>(info.gen_node.size());
    Int det_abs = abs(q_det(to_rational(cartan_matrix(rd.factors[f]))).get_num());
    Int covered(1);
    for (int local : canonical_generator_nodes(rd.factors[f])) {
      int node = b + local;
      QVec coweight = rd.fundamental_coweights.row(node);
      // Additive order of the class mod Z^r: lcm of the denominators.
      Int order(1);
      for (int j = b; j < e; ++j) order = lcm(order, coweight[j].get_den());
      if (order <= 1) throw defect_error("canonical center generator is trivial");
      info.group.divisors.push_back(order);
      info.group.generators.append_row(coweight);
      info.gen_node.push_back(node);
      covered *= order;
    }
    info.factor_gen_span.emplace_back(gen_begin, static_cast<int>(info.gen_node.size()));
    if (covered != det_abs)
      throw defect_error("canonical generators do not exhaust the center of " +
                         rd.factors[f].name());
  }
  return info;
}

IVec CenterInfo::reduce(const IVec& coords) const {
  IVec out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) out[i] = mod_floor(coords[i], group.divisors[i]);
  return out;
}

bool CenterInfo::is_identity(const IVec& coords) const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (mod_floor(coords[i], group.divisors[i]) != 0) return false;
  return true;
}

QVec CenterInfo::representative(const RootDatum& rd, const IVec& coords) const {
  if (coords.size() != num_generators())
    throw input_error("center element has wrong number of coordinates");
  QVec v(rd.rank(), Rat(0));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    v = vec_add(v, vec_scale(Rat(coords[i]), group.generators.row(i)));
  }
  return frac(v);
}

IVec CenterInfo::classify(const RootDatum& rd, const QVec& coweight) const {
  if (static_cast<int>(coweight.size()) != rd.rank())
    throw input_error("classify: vector dimension mismatch");
  // Must pair integrally with every simple root.
  for (int i = 0; i < rd.rank(); ++i) {
    IVec alpha(rd.rank(), Int(0));
    alpha[i] = 1;
    if (!is_integer(rd.pairing(alpha, coweight)))
      throw input_error("classify: vector is not a coweight");
  }
  // Enumerate the (small) center, factor by factor.
  IVec coords(num_generators(), Int(0));
  for (std::size_t f = 0; f < rd.factors.size(); ++f) {
    auto [gb, ge] = factor_gen_span[f];
    auto [b, e] = rd.factor_span[f];
    QVec target(coweight.begin() + b, coweight.begin() + e);
    target = frac(target);
    bool found = false;
    IVec local(ge - gb, Int(0));
    // Iterate all coordinate tuples for this factor.
    while (true) {
      QVec cand(rd.rank(), Rat(0));
      for (int g = gb; g < ge; ++g)
        if (local[g - gb] != 0)
          cand = vec_add(cand, vec_scale(Rat(local[g - gb]), group.generators.row(g)));
      QVec cand_block(cand.begin() + b, cand.begin() + e);
      if (frac(cand_block) == target) {
        for (int g = gb; g < ge; ++g) coords[g] = local[g - gb];
        found = true;
        break;
      }
      int pos = 0;
      for (; pos < ge - gb; ++pos) {
        local[pos] += 1;
        if (local[pos] < group.divisors[gb + pos]) break;
        local[pos] = 0;
      }
      if (pos == ge - gb) break;
    }
    if (!found) throw input_error("classify: coweight class is not in the center table");
  }
  return coords;
}

QVec cominuscule_vertex(const RootDatum& rd, const CenterInfo& center, const IVec& c) {
  if (c.size() != center.num_generators())
    throw input_error("center element has wrong number of coordinates");
  QVec a_c(rd.rank(), Rat(0));
  for (std::size_t f = 0; f < rd.factors.size(); ++f) {
    auto [gb, ge] = center.factor_gen_span[f];
    auto [b, e] = rd.factor_span[f];
    bool trivial = true;
    for (int g = gb; g < ge; ++g)
      if (mod_floor(c[g], center.group.divisors[g]) != 0) trivial = false;
    if (trivial) continue;
    QVec target(rd.rank(), Rat(0));
    for (int g = gb; g < ge; ++g)
      if (c[g] != 0) target = vec_add(target, vec_scale(Rat(c[g]), center.group.generators.row(g)));
    int found = -1;
    for (int i = b; i < e; ++i) {
      if (rd.marks[f][i - b] != 1) continue;  // only special vertices exponentiate to the center
      QVec diff = vec_sub(rd.fundamental_coweights.row(i), target);
      QVec block(diff.begin() + b, diff.begin() + e);
      if (is_integer_vec(block)) {
        if (found >= 0) throw defect_error("two special vertices in one central class");
        found = i;
      }
    }
    if (found < 0) throw defect_error("no special vertex matches the central element");
    for (int j = b; j < e; ++j) a_c[j] = rd.fundamental_coweights(found, j);
  }
  return a_c;
}

}  // namespace ellimod
