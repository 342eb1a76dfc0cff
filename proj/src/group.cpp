#include "ellimod/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace ellimod {

namespace {

struct PresetPiece {
  std::string name;
  int central_rank = 0;
  std::vector<CartanType> factors;
  std::vector<IVec> c_gens;  // over the canonical centre generators of `factors`
  std::vector<QVec> tau;
  // Degree sugar: maps an integer to (u block, c block over canonical generators).
  std::function<std::pair<QVec, IVec>(long)> sugar;
};

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

PresetPiece parse_piece(const std::string& token) {
  std::string t = upper(token);
  PresetPiece p;
  p.name = t;
  auto num_arg = [&](std::size_t from) -> long {
    auto open = t.find('(', from);
    auto close = t.find(')', from);
    if (open == std::string::npos || close == std::string::npos || close < open + 2)
      throw input_error("cannot parse group token: " + token);
    return std::stol(t.substr(open + 1, close - open - 1));
  };
  if (t == "C*" || t == "CSTAR" || t == "GL(1)") {
    p.name = "C*";
    p.central_rank = 1;
    p.sugar = [](long d) { return std::make_pair(QVec{Rat(d)}, IVec{}); };
    return p;
  }
  if (t.rfind("GL", 0) == 0) {
    long n = num_arg(0);
    if (n < 1) throw input_error("GL(n) needs n >= 1");
    long k = 1;
    auto slash = t.find("/Z");
    if (slash != std::string::npos) {
      k = std::stol(t.substr(slash + 2));
      if (k < 1 || n % k != 0) throw input_error("GL(n)/Zk needs k dividing n");
      p.name = "GL(" + std::to_string(n) + ")/Z" + std::to_string(k);
    } else {
      p.name = "GL(" + std::to_string(n) + ")";
    }
    p.central_rank = 1;
    if (n >= 2) {
      p.factors.emplace_back('A', static_cast<int>(n - 1));
      p.c_gens.push_back({Int(n - 1)});  // tau of this generator is k/n
      p.tau.push_back({make_rat(k, n)});
      p.sugar = [n, k](long d) {
        return std::make_pair(QVec{make_rat(d * k, n)}, IVec{Int(mod_floor(Int(d * (n - 1)), Int(n)))});
      };
    } else {
      p.sugar = [](long d) { return std::make_pair(QVec{Rat(d)}, IVec{}); };
    }
    return p;
  }
  if (t.rfind("SL", 0) == 0) {
    long n = num_arg(0);
    if (n < 2) throw input_error("SL(n) needs n >= 2");
    p.name = "SL(" + std::to_string(n) + ")";
    p.factors.emplace_back('A', static_cast<int>(n - 1));
    p.sugar = [n](long d) {
      if (d != 0) throw input_error("SL(n) is simply connected; only degree 0 is valid");
      return std::make_pair(QVec{}, IVec{Int(0)});
    };
    return p;
  }
  if (t.rfind("PGL", 0) == 0) {
    long n = num_arg(0);
    if (n < 2) throw input_error("PGL(n) needs n >= 2");
    p.name = "PGL(" + std::to_string(n) + ")";
    p.factors.emplace_back('A', static_cast<int>(n - 1));
    p.c_gens.push_back({Int(1)});
    p.tau.push_back({});  // z = 0
    p.sugar = [n](long d) {
      return std::make_pair(QVec{}, IVec{Int(mod_floor(Int(d), Int(n)))});
    };
    return p;
  }
  if (t.rfind("SP", 0) == 0 && t.rfind("SPIN", 0) != 0) {
    long m = num_arg(0);
    if (m < 2 || m % 2 != 0) throw input_error("Sp(2n) needs an even argument >= 2");
    long n = m / 2;
    p.name = "Sp(" + std::to_string(m) + ")";
    p.factors.push_back(n == 1 ? CartanType('A', 1) : CartanType('C', static_cast<int>(n)));
    p.sugar = [](long d) {
      if (d != 0) throw input_error("Sp(2n) is simply connected; only degree 0 is valid");
      return std::make_pair(QVec{}, IVec{Int(0)});
    };
    return p;
  }
  if (t.rfind("SPIN", 0) == 0) {
    long m = num_arg(0);
    p.name = "Spin(" + std::to_string(m) + ")";
    if (m == 3)
      p.factors.emplace_back('A', 1);
    else if (m == 4) {
      p.factors.emplace_back('A', 1);
      p.factors.emplace_back('A', 1);
    } else if (m == 5)
      p.factors.emplace_back('B', 2);
    else if (m == 6)
      p.factors.emplace_back('A', 3);
    else if (m >= 7 && m % 2 == 1)
      p.factors.emplace_back('B', static_cast<int>((m - 1) / 2));
    else if (m >= 8)
      p.factors.emplace_back('D', static_cast<int>(m / 2));
    else
      throw input_error("Spin(m) needs m >= 3");
    int gens = 0;
    for (const auto& f : p.factors) {
      RootDatum frd = build_root_datum({f});
      gens += static_cast<int>(center_of_simply_connected(frd).num_generators());
    }
    p.sugar = [gens](long d) {
      if (d != 0) throw input_error("Spin(m) is simply connected; only degree 0 is valid");
      return std::make_pair(QVec{}, IVec(gens, Int(0)));
    };
    return p;
  }
  throw input_error("unknown group preset: " + token);
}

std::vector<std::string> split_product(const std::string& spec) {
  std::vector<std::string> tokens;
  std::string cur;
  int depth = 0;
  for (char ch : spec) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if ((ch == 'x' || ch == 'X') && depth == 0) {
      tokens.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  tokens.push_back(cur);
  for (const auto& tk : tokens)
    if (tk.empty()) throw input_error("empty factor in group spec: " + spec);
  return tokens;
}

}  // namespace

struct PresetComponent;

// Stored alongside GroupDatum via a side table keyed by name; simpler to keep
// the sugar closures per build call.
namespace {
struct SugarTable {
  std::vector<std::function<std::pair<QVec, IVec>(long)>> fns;
  std::vector<int> z_offsets, gen_offsets;
};
std::map<std::string, SugarTable> g_sugar;
}  // namespace

GroupDatum build_group_raw(int central_rank, const std::vector<CartanType>& factors,
                           const IMat& c_generators, const QMat& tau, std::string name) {
  GroupDatum g;
  g.central_rank = central_rank;
  if (central_rank < 0) throw input_error("central rank must be nonnegative");
  g.rd = factors.empty() ? RootDatum::empty() : build_root_datum(factors);
  g.center = factors.empty() ? CenterInfo{} : center_of_simply_connected(g.rd);
  std::size_t m = g.center.num_generators();
  if (c_generators.rows() > 0 && c_generators.cols() != m)
    throw input_error("C generators must have one coordinate per canonical centre generator");
  if (tau.rows() != c_generators.rows())
    throw input_error("tau must assign one value row per C generator");
  if (tau.rows() > 0 && tau.cols() != static_cast<std::size_t>(central_rank))
    throw input_error("tau rows must have central_rank entries");
  g.c_gens = IMat(c_generators.rows(), m);
  for (std::size_t i = 0; i < c_generators.rows(); ++i) {
    IVec row = c_generators.row(i);
    g.c_gens.set_row(i, m ? g.center.reduce(row) : row);
  }
  g.tau = QMat(tau.rows(), central_rank);
  for (std::size_t i = 0; i < tau.rows(); ++i)
    for (int j = 0; j < central_rank; ++j) g.tau(i, j) = frac(tau(i, j));
  g.name = name.empty() ? ("raw(" + format_cartan_types(factors) + ")") : std::move(name);

  // Enumerate the subgroup C with expressions over the given generators.
  std::map<IVec, IVec> table;
  IVec zero(m, Int(0));
  table[zero] = IVec(g.c_gens.rows(), Int(0));
  std::vector<IVec> frontier{zero};
  while (!frontier.empty()) {
    std::vector<IVec> next;
    for (const auto& el : frontier)
      for (std::size_t i = 0; i < g.c_gens.rows(); ++i) {
        IVec cand = g.center.reduce(vec_add(el, g.c_gens.row(i)));
        if (table.count(cand)) continue;
        IVec expr = table[el];
        expr[i] += 1;
        table[cand] = expr;
        next.push_back(cand);
      }
    frontier = std::move(next);
  }
  for (auto& [el, expr] : table) {
    g.c_elements.push_back(el);
    g.c_expressions.push_back(expr);
  }

  // tau must kill every relation among the C generators.
  if (g.c_gens.rows() > 0) {
    IMat stacked(0, m);
    for (std::size_t i = 0; i < g.c_gens.rows(); ++i) stacked.append_row(g.c_gens.row(i));
    for (std::size_t j = 0; j < m; ++j) {
      IVec row(m, Int(0));
      row[j] = g.center.group.divisors[j];
      stacked.append_row(row);
    }
    IMat ker = integer_row_kernel(stacked);
    for (std::size_t i = 0; i < ker.rows(); ++i) {
      QVec image(central_rank, Rat(0));
      for (std::size_t a = 0; a < g.c_gens.rows(); ++a)
        for (int j = 0; j < central_rank; ++j) image[j] += Rat(ker(i, a)) * g.tau(a, j);
      if (!is_integer_vec(image))
        throw input_error("tau is not a homomorphism: a relation among the C generators "
                          "has nonintegral image");
    }
  }
  return g;
}

GroupDatum build_group(const std::string& spec) {
  auto tokens = split_product(spec);
  std::vector<PresetPiece> pieces;
  for (const auto& tk : tokens) pieces.push_back(parse_piece(tk));

  int z = 0;
  std::vector<CartanType> factors;
  for (const auto& p : pieces) {
    z += p.central_rank;
    for (const auto& f : p.factors) factors.push_back(f);
  }
  // Canonical centre generator counts per piece, to pad coordinate blocks.
  std::vector<int> gen_counts;
  for (const auto& p : pieces) {
    int cnt = 0;
    for (const auto& f : p.factors) {
      RootDatum frd = build_root_datum({f});
      cnt += static_cast<int>(center_of_simply_connected(frd).num_generators());
    }
    gen_counts.push_back(cnt);
  }
  int total_gens = 0;
  for (int c : gen_counts) total_gens += c;

  IMat c_gens(0, total_gens);
  QMat tau(0, z);
  std::string name;
  SugarTable sugar;
  int z_off = 0, gen_off = 0;
  for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
    const auto& p = pieces[pi];
    if (pi) name += "x";
    name += p.name;
    for (std::size_t i = 0; i < p.c_gens.size(); ++i) {
      IVec row(total_gens, Int(0));
      for (std::size_t j = 0; j < p.c_gens[i].size(); ++j) row[gen_off + j] = p.c_gens[i][j];
      c_gens.append_row(row);
      QVec trow(z, Rat(0));
      for (std::size_t j = 0; j < p.tau[i].size(); ++j) trow[z_off + j] = p.tau[i][j];
      tau.append_row(trow);
    }
    sugar.fns.push_back(p.sugar);
    sugar.z_offsets.push_back(z_off);
    sugar.gen_offsets.push_back(gen_off);
    z_off += p.central_rank;
    gen_off += gen_counts[pi];
  }
  GroupDatum g = build_group_raw(z, factors, c_gens, tau, name);
  g_sugar[g.name] = sugar;
  return g;
}

QVec GroupDatum::tau_of(const IVec& c_center_coords, IVec* expr) const {
  IVec reduced = center.num_generators() ? center.reduce(c_center_coords) : c_center_coords;
  for (std::size_t i = 0; i < c_elements.size(); ++i) {
    if (c_elements[i] != reduced) continue;
    if (expr) *expr = c_expressions[i];
    QVec t(central_rank, Rat(0));
    for (std::size_t a = 0; a < c_gens.rows(); ++a)
      for (int j = 0; j < central_rank; ++j) t[j] += Rat(c_expressions[i][a]) * tau(a, j);
    return frac(t);
  }
  throw input_error("central element is not in the subgroup C for " + name);
}

bool GroupDatum::c_contains(const IVec& c_center_coords) const {
  IVec reduced = center.num_generators() ? center.reduce(c_center_coords) : c_center_coords;
  for (const auto& el : c_elements)
    if (el == reduced) return true;
  return false;
}

GroupDatum parse_group_file(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      while (!s.empty() && isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
      while (!s.empty() && isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      return s;
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (kv.count("preset")) return build_group(kv["preset"]);
  if (!kv.count("central_rank") || !kv.count("factors"))
    throw input_error("group file needs either `preset` or both `central_rank` and `factors`");
  int z = std::stoi(kv["central_rank"]);
  std::vector<CartanType> factors;
  if (kv["factors"] != "none" && !kv["factors"].empty())
    factors = parse_cartan_types(kv["factors"]);
  auto parse_rows = [](const std::string& s) {
    std::vector<std::vector<std::string>> rows;
    std::string cleaned;
    for (char c : s)
      if (c != '[' && c != ']') cleaned += c;
    std::istringstream rs(cleaned);
    std::string row;
    while (std::getline(rs, row, ';')) {
      std::vector<std::string> items;
      std::istringstream is(row);
      std::string item;
      while (std::getline(is, item, ',')) {
        std::string t;
        for (char c : item)
          if (!isspace(static_cast<unsigned char>(c))) t += c;
        if (!t.empty()) items.push_back(t);
      }
      if (!items.empty()) rows.push_back(items);
    }
    return rows;
  };
  IMat c_gens(0, 0);
  QMat tau(0, 0);
  if (kv.count("C_generators") && kv["C_generators"] != "none") {
    auto rows = parse_rows(kv["C_generators"]);
    for (const auto& row : rows) {
      IVec r;
      for (const auto& item : row) r.push_back(Int(item));
      if (c_gens.rows() == 0) c_gens = IMat(0, r.size());
      c_gens.append_row(r);
    }
  }
  if (kv.count("tau") && kv["tau"] != "none") {
    auto rows = parse_rows(kv["tau"]);
    for (const auto& row : rows) {
      QVec r;
      for (const auto& item : row) r.push_back(parse_rational(item));
      if (tau.rows() == 0) tau = QMat(0, r.size());
      tau.append_row(r);
    }
  }
  if (tau.rows() == 0 && c_gens.rows() > 0) tau = QMat(c_gens.rows(), z);
  if (tau.rows() > 0 && tau.cols() == 0 && z == 0) tau = QMat(tau.rows(), 0);
  std::string name = kv.count("name") ? kv["name"] : "";
  return build_group_raw(z, factors, c_gens, tau, name);
}

FundamentalGroup fundamental_group(const GroupDatum& g) {
  std::size_t k = g.c_gens.rows();
  int z = g.central_rank;
  // Relation lattice of the C generators inside the centre.
  IMat rel_c(0, k);
  if (k > 0) {
    std::size_t m = g.center.num_generators();
    IMat stacked(0, m);
    for (std::size_t i = 0; i < k; ++i) stacked.append_row(g.c_gens.row(i));
    for (std::size_t j = 0; j < m; ++j) {
      IVec row(m, Int(0));
      row[j] = g.center.group.divisors[j];
      stacked.append_row(row);
    }
    IMat ker = integer_row_kernel(stacked);
    rel_c = IMat(ker.rows(), k);
    for (std::size_t i = 0; i < ker.rows(); ++i)
      for (std::size_t j = 0; j < k; ++j) rel_c(i, j) = ker(i, j);
  }
  IMat rels(0, k + z);
  for (std::size_t i = 0; i < rel_c.rows(); ++i) {
    IVec row(k + z, Int(0));
    QVec t(z, Rat(0));
    for (std::size_t a = 0; a < k; ++a) {
      row[a] = rel_c(i, a);
      for (int j = 0; j < z; ++j) t[j] += Rat(rel_c(i, a)) * g.tau(a, j);
    }
    for (int j = 0; j < z; ++j) {
      if (!is_integer(t[j])) throw defect_error("tau relation image not integral");
      row[k + j] = -t[j].get_num();
    }
    rels.append_row(row);
  }
  auto pres = abelian_quotient_presentation(k + z, rels);
  FundamentalGroup out;
  for (std::size_t j = 0; j < pres.orders.size(); ++j) {
    if (pres.orders[j] == 0)
      ++out.free_rank;
    else
      out.torsion.push_back(pres.orders[j]);
    QVec u(z, Rat(0));
    IVec c(g.center.num_generators(), Int(0));
    for (std::size_t a = 0; a < k; ++a) {
      if (pres.gen_combos(a, j) == 0) continue;
      for (int t = 0; t < z; ++t) u[t] += Rat(pres.gen_combos(a, j)) * g.tau(a, t);
      c = vec_add(c, vec_scale(pres.gen_combos(a, j), g.c_gens.row(a)));
    }
    for (int t = 0; t < z; ++t) u[t] += Rat(pres.gen_combos(k + t, j));
    out.generators.emplace_back(u, g.center.num_generators() ? g.center.reduce(c) : c);
  }
  return out;
}

Degree validate_degree(const GroupDatum& g, const QVec& u, const IVec& c_center_coords) {
  if (static_cast<int>(u.size()) != g.central_rank)
    throw input_error("degree u must have central_rank entries");
  if (c_center_coords.size() != g.center.num_generators())
    throw input_error("degree c must have one coordinate per canonical centre generator");
  if (!g.c_contains(c_center_coords))
    throw input_error("degree c is not an element of C for " + g.name);
  Degree d;
  d.c = g.center.num_generators() ? g.center.reduce(c_center_coords) : c_center_coords;
  QVec t = g.tau_of(d.c, &d.c_expr);
  if (frac(u) != t)
    throw input_error("invalid degree: u mod Z^z must equal tau(c)");
  d.u = u;
  return d;
}

Degree degree_from_ints(const GroupDatum& g, const std::vector<long>& d) {
  auto it = g_sugar.find(g.name);
  if (it == g_sugar.end())
    throw input_error("integer degree sugar is only available for preset groups");
  const SugarTable& tab = it->second;
  if (d.size() != tab.fns.size())
    throw input_error("degree needs " + std::to_string(tab.fns.size()) +
                      " integers for " + g.name);
  QVec u(g.central_rank, Rat(0));
  IVec c(g.center.num_generators(), Int(0));
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto [ub, cb] = tab.fns[i](d[i]);
    for (std::size_t j = 0; j < ub.size(); ++j) u[tab.z_offsets[i] + j] = ub[j];
    for (std::size_t j = 0; j < cb.size(); ++j) c[tab.gen_offsets[i] + j] = cb[j];
  }
  return validate_degree(g, u, c);
}

QMat lattice_twist_rows(const GroupDatum& g) {
  int n = g.rank();
  QMat rows(0, n);
  for (std::size_t i = 0; i < g.c_gens.rows(); ++i) {
    QVec row(n, Rat(0));
    for (int j = 0; j < g.central_rank; ++j) row[j] = -g.tau(i, j);
    QVec lambda = g.center.representative(g.rd, g.c_gens.row(i));
    for (int j = 0; j < g.rd.rank(); ++j) row[g.central_rank + j] = lambda[j];
    rows.append_row(row);
  }
  return rows;
}

JordanLevi jordan_holder_levi(const GroupDatum& g, const Degree& d, bool need_wc, const Int& cap) {
  OmegaResult om = g.rd.rank() ? omega_c(g.rd, g.center, d.c)
                                : OmegaResult{QVec{}, WeylElement{IMat(0, 0), {}}};
  QMat twists = lattice_twist_rows(g);
  LeviDatum levi = levi_and_wc(g.rd, g.central_rank, om.omega, om.a_c, d.c,
                               twists.rows() ? &twists : nullptr, need_wc, cap);
  if (!levi.p_c_in_s_c)
    throw defect_error("p(c) missed the Levi centre despite the group gluing");
  return {std::move(levi), d.u};
}

StabilityReport stable_exists(const GroupDatum& g, const Degree& d) {
  StabilityReport rep;
  // Method (i): the fixed subspace of omega_c on h' must vanish.
  if (g.rd.rank()) {
    OmegaResult om = omega_c(g.rd, g.center, d.c);
    rep.fixed_dimension = static_cast<int>(fixed_subspace(om.omega.m).rows());
  }
  bool exists_fixed = rep.fixed_dimension == 0;

  // Method (ii): every simple factor of type A with the degree class generating
  // the centre of the adjoint factor.
  bool exists_class = true;
  std::string reason;
  for (std::size_t f = 0; f < g.rd.factors.size(); ++f) {
    const CartanType& type = g.rd.factors[f];
    auto [gb, ge] = g.center.factor_gen_span[f];
    StabilityFactor sf{type, Int(1), Int(0), Int(0), false};
    if (type.letter != 'A') {
      sf.passes = false;
      exists_class = false;
      if (reason.empty()) reason = "factor " + type.name() + " is not of type A";
      rep.factors.push_back(sf);
      continue;
    }
    sf.centre_order = Int(type.rank + 1);
    sf.c_exponent = (ge > gb) ? mod_floor(d.c[gb], sf.centre_order) : Int(0);
    sf.gcd_value = gcd(sf.centre_order, sf.c_exponent);
    sf.passes = sf.gcd_value == 1;
    if (!sf.passes) {
      exists_class = false;
      if (reason.empty())
        reason = "gcd(" + to_string(sf.centre_order) + "," + to_string(sf.c_exponent) +
                 ") = " + to_string(sf.gcd_value) + " != 1 on factor " + type.name();
    }
    rep.factors.push_back(sf);
  }
  rep.exists = exists_fixed;
  rep.methods_agree = (exists_fixed == exists_class);
  if (!rep.methods_agree)
    throw defect_error("stable_exists methods disagree: fixed-space criterion says " +
                       std::string(exists_fixed ? "yes" : "no") + ", classification says " +
                       std::string(exists_class ? "yes" : "no") + " for " + g.name);
  if (rep.exists)
    rep.reason = "all simple factors are type A with degree class generating the centre";
  else if (reason.empty() && rep.fixed_dimension > 0)
    rep.reason = "omega_c has a " + std::to_string(rep.fixed_dimension) +
                 "-dimensional fixed space";
  else
    rep.reason = reason;
  return rep;
}

}  // namespace ellimod
