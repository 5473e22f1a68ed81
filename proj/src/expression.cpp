// Parser for algebra expressions:
//
//   element  := term (('+' | '-') term)*
//   term     := [rational ['*']] factor*
//   factor   := 'S[' letters ']' | 'S[' letters ']*' | word | '1'
//   rational := int ('/' int)?
//
// A term needs a coefficient or at least one factor; factors multiply left to
// right. The literal "0" is the zero element.

#include "selfsim/algebra.hpp"
#include "selfsim/error.hpp"

#include <cctype>

namespace selfsim {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char peek_raw(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::string take_while(auto pred) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string &what) const {
    throw Error(ErrorKind::MalformedExpression, what + " at offset " + std::to_string(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

}  // namespace

AlgebraElement StarAlgebra::parse(std::string_view text) const {
  Cursor cur(text);
  if (cur.done()) cur.fail("empty expression");
  AlgebraElement total;
  bool first = true;
  while (!cur.done()) {
    Rational sign = 1;
    if (cur.accept('+')) {
    } else if (cur.accept('-')) {
      sign = -1;
    } else if (!first) {
      cur.fail("expected '+' or '-'");
    }
    first = false;

    Rational coefficient = 1;
    bool have_coefficient = false;
    if (is_digit(cur.peek())) {
      std::string num = cur.take_while(is_digit);
      std::string den = "1";
      if (cur.peek_raw() == '/') {
        cur.accept('/');
        den = cur.take_while(is_digit);
        if (den.empty()) cur.fail("missing denominator");
      }
      try {
        coefficient = parse_rational(num + "/" + den);
      } catch (const std::invalid_argument &e) {
        cur.fail(e.what());
      }
      have_coefficient = true;
      cur.accept('*');
    }

    AlgebraElement product = one();
    bool have_factor = false;
    while (true) {
      char c = cur.peek();
      if (c == 'S' && cur.peek_raw(1) == '[') {
        cur.accept('S');
        cur.accept('[');
        std::string letters = cur.take_while([](char ch) { return ch != ']'; });
        if (!cur.accept(']')) cur.fail("unterminated S[");
        Word u;
        try {
          u = parse_word(letters, group_.alphabet_size());
        } catch (const std::invalid_argument &e) {
          cur.fail(e.what());
        }
        bool star = cur.peek_raw() == '*';
        if (star) cur.accept('*');
        product = multiply(product, element(star ? Monomial{{}, {}, u} : Monomial{u, {}, {}}));
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string token = cur.take_while(is_word_char);
        GroupWord g;
        try {
          g = group_.parse(token);
        } catch (const Error &e) {
          cur.fail(e.what());
        }
        product = multiply(product, group_element(g));
      } else if (c == '1' && !is_digit(cur.peek_raw(1)) && cur.peek_raw(1) != '/') {
        cur.accept('1');
      } else {
        break;
      }
      have_factor = true;
    }
    if (!have_coefficient && !have_factor) cur.fail("expected a term");
    total = add(total, scale(product, sign * coefficient));
  }
  return total;
}

}  // namespace selfsim
