#include "qes/exact/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace qes::exact {

BigRat make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool is_integer_text(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  if (!out.empty() && out.front() == '+') out.erase(0, 1);
  return out;
}

}  // namespace

BigRat parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string num = strip(text.substr(0, slash));
  const std::string den = slash == std::string_view::npos ? "1" : strip(text.substr(slash + 1));
  if (!is_integer_text(num) || !is_integer_text(den))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  BigInt n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  BigRat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const BigRat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const BigRat& r) { return r.get_d(); }

}  // namespace qes::exact
