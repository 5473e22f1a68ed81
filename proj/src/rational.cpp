#include "selfsim/rational.hpp"
#include "selfsim/error.hpp"

#include <cctype>
#include <stdexcept>

namespace selfsim {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedSpec: return "MalformedSpec";
    case ErrorKind::ClosureBudgetExceeded: return "ClosureBudgetExceeded";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::InexactInput: return "InexactInput";
    case ErrorKind::InexactMeasure: return "InexactMeasure";
    case ErrorKind::CanonicalizationFailed: return "CanonicalizationFailed";
    case ErrorKind::DegreeNonZero: return "DegreeNonZero";
    case ErrorKind::MalformedExpression: return "MalformedExpression";
  }
  return "Unknown";
}

Integer ipow(unsigned long base, unsigned long exp) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

std::string format_rational(const Rational &r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw std::invalid_argument("not a rational: " + std::string(text));
  Integer n{std::string(num)}, d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace selfsim
