// Exact integer/rational scalar layer. All lattice and root-datum arithmetic
// in this library runs on GMP bignums; floating point is confined to cpairs.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace ellimod {

using Int = mpz_class;
using Rat = mpq_class;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

// Violated precondition on user-supplied data. CLI exit code 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure (a defect, not bad input). CLI exit code 3.
class defect_error : public std::logic_error {
 public:
  explicit defect_error(const std::string& what) : std::logic_error(what) {}
};

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// mpq_class(num, den) does not canonicalize; every two-argument construction
// must go through here.
inline Rat make_rat(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}
inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline bool is_integer_vec(const QVec& v) {
  for (const auto& q : v)
    if (!is_integer(q)) return false;
  return true;
}

// Fractional part in [0,1).
inline Rat frac(const Rat& q) {
  Int fl = floor_div(q.get_num(), q.get_den());
  return q - Rat(fl);
}

inline QVec frac(const QVec& v) {
  QVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = frac(v[i]);
  return out;
}

std::string to_string(const Int& n);
std::string to_string(const Rat& q);  // "p" or "p/q", canonical
Rat parse_rational(const std::string& text);

inline long to_long(const Int& n) {
  if (!n.fits_slong_p()) throw defect_error("integer does not fit in a machine long");
  return n.get_si();
}

}  // namespace ellimod
