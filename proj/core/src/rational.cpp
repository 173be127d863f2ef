#include "catprob/rational.hpp"

#include <cctype>

#include "catprob/error.hpp"

namespace catprob {

std::string format_rational(const Rat& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  std::string out = num.str();
  if (den != 1) {
    out += '/';
    out += den.str();
  }
  return out;
}

Rat parse_rational(const std::string& text) {
  const auto bad = [&]() -> Error {
    return Error("ParseError", "bad rational literal '" + text + "'");
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  const std::size_t num_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_start) throw bad();
  boost::multiprecision::cpp_int num(text.substr(num_start, i - num_start));
  boost::multiprecision::cpp_int den = 1;
  if (i < text.size()) {
    if (text[i] != '/') throw bad();
    const std::size_t den_start = ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start || i != text.size()) throw bad();
    den.assign(text.substr(den_start));
    if (den == 0) throw Error("ParseError", "zero denominator in '" + text + "'");
  }
  Rat value(num, den);
  return negative ? Rat(-value) : value;
}

}  // namespace catprob
