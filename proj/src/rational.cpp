#include "rational.hpp"

#include <cctype>
#include <cstddef>

namespace qs {

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-' || text[i] == '+') {
    neg = text[i] == '-';
    ++i;
  }
  std::string intpart, fracpart, denpart;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) intpart += text[i++];
  if (intpart.empty()) return std::nullopt;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) fracpart += text[i++];
    if (fracpart.empty()) return std::nullopt;
  } else if (i < text.size() && text[i] == '/') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) denpart += text[i++];
    if (denpart.empty()) return std::nullopt;
  }
  if (i != text.size()) return std::nullopt;

  mpz_class num(intpart);
  mpz_class den(1);
  if (!fracpart.empty()) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fracpart.size());
    num = num * scale + mpz_class(fracpart);
    den = scale;
  } else if (!denpart.empty()) {
    den = mpz_class(denpart);
    if (den == 0) return std::nullopt;
  }
  Rat q(num, den);
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace qs
