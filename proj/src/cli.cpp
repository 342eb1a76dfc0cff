#include "ellimod/cli.hpp"

#include "ellimod/cpairs.hpp"
#include "ellimod/moduli.hpp"
#include "ellimod/selftest.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ellimod::cli {

namespace {

Int weyl_cap_from_env() {
  const char* cap = std::getenv("ELLIMOD_WEYL_CAP");
  if (!cap || !*cap) return default_weyl_cap();
  try {
    return Int(std::string(cap));
  } catch (const std::invalid_argument&) {
    throw input_error("ELLIMOD_WEYL_CAP is not an integer");
  }
}

GroupDatum load_group(const std::string& spec, const std::string& file) {
  if (!spec.empty() && !file.empty())
    throw input_error("give either --group or --group-file, not both");
  if (!spec.empty()) return build_group(spec);
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw input_error("cannot open group file: " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_group_file(buf.str());
  }
  throw input_error("a group is required (--group or --group-file)");
}

std::vector<long> parse_int_list(const std::string& s) {
  std::vector<long> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stol(item));
  return out;
}

Degree load_degree(const GroupDatum& g, const std::string& degree, const std::string& degree_u,
                   const std::string& degree_c) {
  if (!degree.empty()) {
    if (!degree_u.empty() || !degree_c.empty())
      throw input_error("give either --degree or the raw pair --degree-u/--degree-c");
    return degree_from_ints(g, parse_int_list(degree));
  }
  QVec u;
  if (!degree_u.empty()) {
    std::istringstream in(degree_u);
    std::string item;
    while (std::getline(in, item, ',')) u.push_back(parse_rational(item));
  }
  IVec c;
  if (!degree_c.empty())
    for (long x : parse_int_list(degree_c)) c.push_back(Int(x));
  if (u.empty() && c.empty()) throw input_error("a degree is required (--degree or --degree-u/--degree-c)");
  if (u.size() != static_cast<std::size_t>(g.central_rank))
    u.resize(g.central_rank, Rat(0));
  if (c.size() != g.center.num_generators()) c.resize(g.center.num_generators(), Int(0));
  return validate_degree(g, u, c);
}

// Fibre point syntax: coordinates separated by commas, each "re" or "re:im"
// with exact rationals, e.g. "0,1/2:1".
ExactComplexVec parse_fibre_point(const std::string& s) {
  ExactComplexVec v;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      v.re.push_back(parse_rational(item));
      v.im.push_back(Rat(0));
    } else {
      v.re.push_back(parse_rational(item.substr(0, colon)));
      v.im.push_back(parse_rational(item.substr(colon + 1)));
    }
  }
  return v;
}

void print_moduli_table(std::ostream& out, const GroupDatum& g, const Degree& d,
                        const JordanLevi& jl) {
  out << "group: " << g.name << "\n";
  out << "degree: u = (";
  for (std::size_t i = 0; i < d.u.size(); ++i) out << (i ? "," : "") << to_string(d.u[i]);
  out << "), c = (";
  for (std::size_t i = 0; i < d.c.size(); ++i) out << (i ? "," : "") << to_string(d.c[i]);
  out << ")\n";
  out << "Levi: D_c = ";
  if (jl.levi.d_c_factors.empty()) out << "trivial";
  for (std::size_t i = 0; i < jl.levi.d_c_factors.size(); ++i)
    out << (i ? " x " : "") << jl.levi.d_c_factors[i].type.name();
  out << ", |F_c| = " << to_string(jl.levi.f_c.order()) << "\n";
  out << "lattice rank = " << jl.levi.rank() << ", |W_c| = " << jl.levi.w_c.size() << "\n";
  for (Space sp : {Space::Bundles, Space::Higgs, Space::Representations, Space::Connections}) {
    auto md = describe_from_levi(jl, sp);
    out << "  " << std::left << std::setw(8) << space_name(sp)
        << " dim = " << md.complex_dimension << (md.is_point ? "  (point)" : "")
        << (md.is_isomorphism ? "  [moduli space]" : "  [normalization]") << "\n";
  }
}

void print_matrix(std::ostream& out, const Eigen::MatrixXcd& m) {
  out << std::setprecision(15);
  for (long i = 0; i < m.rows(); ++i) {
    out << "  ";
    for (long j = 0; j < m.cols(); ++j) {
      std::complex<double> x = m(i, j);
      out << "(" << x.real() << (x.imag() < 0 ? "" : "+") << x.imag() << "i)"
          << (j + 1 < m.cols() ? " " : "");
    }
    out << "\n";
  }
}

nlohmann::ordered_json eigen_json(const Eigen::MatrixXcd& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (long i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (long j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

int run_checked(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ellimod: moduli of G-bundles, Higgs bundles, representations and "
               "connections over an elliptic curve, from root data"};
  app.require_subcommand(1);

  std::string group_spec, group_file, degree, degree_u, degree_c;
  std::string space_flag = "all", format = "table";
  std::vector<std::string> fibre_args;
  long su_n = 0, su_k = 1;

  auto add_common = [&](CLI::App* cmd, bool with_space) {
    cmd->add_option("--group", group_spec, "group preset, e.g. GL(3), SL(2)xPGL(4)");
    cmd->add_option("--group-file", group_file, "group description file");
    cmd->add_option("--degree", degree, "integer degree (comma list for products)");
    cmd->add_option("--degree-u", degree_u, "raw degree: rational z-vector, comma separated");
    cmd->add_option("--degree-c", degree_c, "raw degree: centre coordinates, comma separated");
    cmd->add_option("--format", format, "output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));
    if (with_space)
      cmd->add_option("--space", space_flag,
                      "coefficient space: bundles, higgs, reps, connections, base or all");
  };

  CLI::App* describe = app.add_subcommand("describe", "finite description of the moduli spaces");
  add_common(describe, true);
  CLI::App* hitchin = app.add_subcommand("hitchin", "Hitchin base, strata and fibre queries");
  add_common(hitchin, false);
  hitchin->add_option("--fibre", fibre_args,
                      "exact fibre point: comma-separated coordinates, each re or re:im");
  CLI::App* stable = app.add_subcommand("stable-exists", "existence of stable objects in degree d");
  add_common(stable, false);
  CLI::App* cpair = app.add_subcommand("cpair", "explicit irreducible c-pairs");
  add_common(cpair, false);
  cpair->add_option("--su", su_n, "build the clock/shift pair in SU(n)");
  cpair->add_option("--k", su_k, "commutator phase numerator (default 1)");
  app.add_subcommand("selftest", "run the full verification suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Int cap = weyl_cap_from_env();

  if (app.got_subcommand("selftest")) {
    int failures = run_acceptance(out);
    return failures == 0 ? 0 : 1;
  }

  if (app.got_subcommand("cpair") && su_n > 0) {
    UnitaryPair p = clock_shift(su_n, su_k);
    int cdim = commutant_dimension({p.a, p.b});
    if (format == "json") {
      nlohmann::ordered_json j;
      j["schema"] = "1";
      j["n"] = p.n;
      j["k"] = p.blocks[0].second;
      j["a"] = eigen_json(p.a);
      j["b"] = eigen_json(p.b);
      j["commutator_residual"] = commutator_residual(p);
      j["unitarity_residual"] = unitarity_residual(p);
      j["commutant_dimension"] = cdim;
      out << j.dump(2) << "\n";
    } else {
      out << "clock/shift pair in SU(" << p.n << "), commutator phase " << p.blocks[0].second
          << "/" << p.n << "\n";
      out << "a =\n";
      print_matrix(out, p.a);
      out << "b =\n";
      print_matrix(out, p.b);
      out << "commutator residual = " << commutator_residual(p) << "\n";
      out << "unitarity residual  = " << unitarity_residual(p) << "\n";
      out << "commutant dimension = " << cdim << "\n";
    }
    return 0;
  }

  GroupDatum g = load_group(group_spec, group_file);
  Degree d = load_degree(g, degree, degree_u, degree_c);

  if (app.got_subcommand("describe")) {
    if (format == "json" && space_flag != "all") {
      nlohmann::ordered_json j;
      j["schema"] = "1";
      j["group"] = g.name;
      j["moduli"] = moduli_json(describe_moduli(g, d, parse_space(space_flag), cap));
      out << j.dump(2) << "\n";
    } else if (format == "json") {
      out << full_report_json(g, d, {}, cap).dump(2) << "\n";
    } else if (space_flag == "all") {
      print_moduli_table(out, g, d, jordan_holder_levi(g, d, true, cap));
    } else {
      auto md = describe_moduli(g, d, parse_space(space_flag), cap);
      out << "space " << space_name(md.space) << ": lattice rank = " << md.lattice_rank
          << ", |W_c| = " << to_string(md.w_c_order) << ", dim = " << md.complex_dimension
          << (md.is_point ? " (point)" : "") << "\n";
    }
    return 0;
  }

  if (app.got_subcommand("hitchin")) {
    std::vector<ExactComplexVec> queries;
    for (const auto& s : fibre_args) queries.push_back(parse_fibre_point(s));
    HitchinReport hr = hitchin_report(g, d, queries, cap);
    if (format == "json") {
      nlohmann::ordered_json j;
      j["schema"] = "1";
      j["group"] = g.name;
      j["hitchin"] = hitchin_json(hr);
      out << j.dump(2) << "\n";
    } else {
      out << "Hitchin base: (C (x) Z^" << hr.base.lattice_rank << ")/W_c, |W_c| = "
          << to_string(hr.base.w_c_order) << ", dim = " << hr.base.complex_dimension << "\n";
      out << "generic fibre: abelian variety of dimension " << hr.generic_fibre_dim << "\n";
      out << "singular strata (nontrivial conjugacy classes): " << hr.strata.size() << "\n";
      for (const auto& st : hr.strata)
        out << "  class size " << to_string(st.class_size) << ", fixed dim " << st.fixed_dim
            << "\n";
      for (const auto& f : hr.fibres) {
        out << "fibre at s = (";
        for (std::size_t i = 0; i < f.point.re.size(); ++i)
          out << (i ? "," : "") << to_string(f.point.re[i]) << ":" << to_string(f.point.im[i]);
        out << "): centralizer order " << to_string(f.centralizer_order)
            << (f.generic ? " (generic: fibre = X (x) Lambda)" : "") << "\n";
        for (const auto& [w, fp] : f.torsion_data) {
          (void)w;
          if (fp.isolated)
            out << "  element with " << to_string(fp.count) << " isolated fixed points\n";
          else
            out << "  element with fixed set of real dimension " << fp.fixed_dim << "\n";
        }
      }
    }
    return 0;
  }

  if (app.got_subcommand("stable-exists")) {
    auto rep = stable_exists(g, d);
    if (format == "json") {
      nlohmann::ordered_json j;
      j["schema"] = "1";
      j["group"] = g.name;
      j["exists"] = rep.exists;
      j["methods_agree"] = rep.methods_agree;
      j["fixed_dimension"] = rep.fixed_dimension;
      j["reason"] = rep.reason;
      out << j.dump(2) << "\n";
    } else {
      out << (rep.exists ? "yes" : "no") << "\n" << rep.reason << "\n";
    }
    return 0;
  }

  if (app.got_subcommand("cpair")) {
    JordanLevi jl = jordan_holder_levi(g, d, false, cap);
    UnitaryPair p = build_cpair(jl.levi);
    if (p.torus_case()) {
      out << "torus case: D_c is trivial, the c-pair is empty\n";
      return 0;
    }
    int cdim_pair = commutant_dimension({p.a, p.b});
    if (format == "json") {
      nlohmann::ordered_json j;
      j["schema"] = "1";
      j["group"] = g.name;
      j["blocks"] = nlohmann::ordered_json::array();
      for (auto [n, k] : p.blocks) j["blocks"].push_back({{"n", n}, {"k", k}});
      j["a"] = eigen_json(p.a);
      j["b"] = eigen_json(p.b);
      j["commutator_residual"] = commutator_residual(p);
      j["unitarity_residual"] = unitarity_residual(p);
      j["commutant_dimension"] = cdim_pair;
      out << j.dump(2) << "\n";
    } else {
      out << "c-pair in SU blocks:";
      for (auto [n, k] : p.blocks) out << " SU(" << n << ") phase " << k << "/" << n << ";";
      out << "\n";
      out << "commutator residual = " << commutator_residual(p) << "\n";
      out << "commutant dimension = " << cdim_pair << "\n";
    }
    return 0;
  }

  err << "error: no command given\n";
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_checked(args, out, err);
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const defect_error& e) {
    err << "internal defect: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ellimod::cli
