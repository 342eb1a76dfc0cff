#include "ellimod/numeric.hpp"

namespace ellimod {

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw input_error("empty rational literal");
  for (size_t i = 0; i < t.size(); ++i) {
    char c = t[i];
    bool ok = isdigit(static_cast<unsigned char>(c)) || c == '/' || ((c == '-' || c == '+') && (i == 0 || t[i - 1] == '/'));
    if (!ok) throw input_error("bad rational literal: " + text);
  }
  try {
    Rat q(t);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw input_error("bad rational literal: " + text);
  }
}

}  // namespace ellimod
