#include "bpb/scalar.hpp"

#include <stdexcept>

namespace bpb {

namespace {

bool is_integer_text(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

[[noreturn]] void bad(const std::string& text) {
  throw std::invalid_argument("cannot parse rational from \"" + text + "\"");
}

}  // namespace

Scalar parse_scalar(const std::string& raw) {
  std::string s = raw;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) bad(raw);

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) bad(raw);
    BigInt d(den);
    if (d == 0) bad(raw);
    return Scalar(BigInt(num), d);
  }

  if (auto dot = s.find('.'); dot != std::string::npos) {
    bool neg = false;
    std::string body = s;
    if (body[0] == '-' || body[0] == '+') {
      neg = body[0] == '-';
      body.erase(body.begin());
      dot -= 1;
    }
    std::string ipart = body.substr(0, dot), fpart = body.substr(dot + 1);
    if (ipart.empty()) ipart = "0";
    if (fpart.empty() || !is_integer_text(ipart) || !is_integer_text(fpart)) bad(raw);
    BigInt den = 1;
    for (size_t i = 0; i < fpart.size(); ++i) den *= 10;
    BigInt num = BigInt(ipart) * den + BigInt(fpart);
    if (neg) num = -num;
    return Scalar(num, den);
  }

  if (!is_integer_text(s)) bad(raw);
  return Scalar(BigInt(s));
}

std::string to_fraction_string(const Scalar& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

double to_double(const Scalar& x) { return x.convert_to<double>(); }

}  // namespace bpb
