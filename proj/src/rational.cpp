#include "impsel/rational.hpp"

#include "impsel/errors.hpp"

#include <cctype>
#include <string>

namespace impsel {

Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trimmed_begin = s.find_first_not_of(" \t");
  auto trimmed_end = s.find_last_not_of(" \t");
  if (trimmed_begin == std::string::npos) throw InputError("empty rational");
  s = s.substr(trimmed_begin, trimmed_end - trimmed_begin + 1);
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-') {
      throw InputError("invalid rational '" + s + "'");
    }
  }
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw InputError("invalid rational '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_decimal(const Rational& q, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled_num = abs(q.get_num()) * scale * 2 + q.get_den();
  mpz_class scaled = scaled_num / (q.get_den() * 2);  // round half up
  std::string body = scaled.get_str();
  if (static_cast<int>(body.size()) <= digits) {
    body.insert(0, static_cast<std::size_t>(digits + 1 - static_cast<int>(body.size())), '0');
  }
  std::string out = q < 0 ? "-" : "";
  out += body.substr(0, body.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + body.substr(body.size() - static_cast<std::size_t>(digits));
  return out;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace impsel
