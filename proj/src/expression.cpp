#include "prodsys/expression.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

namespace prodsys {

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

double parse_real(const std::string& s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw ParseError("bad number '" + s + "' in '" + std::string(whole) + "'");
  return v;
}

class Parser {
 public:
  Parser(const ProductSystem& sys, std::string_view text) : sys_(sys), text_(text) {}

  WickElement run() {
    WickElement out;
    skip();
    if (at_end()) throw ParseError("empty expression");
    bool first = true;
    while (!at_end()) {
      double sign = 1.0;
      if (!first) {
        if (peek() == '+') {
          ++pos_;
        } else if (peek() == '-') {
          sign = -1.0;
          ++pos_;
        } else {
          fail("expected '+' or '-'");
        }
      }
      skip();
      while (!at_end() && (peek() == '+' || peek() == '-')) {
        if (peek() == '-') sign = -sign;
        ++pos_;
        skip();
      }
      out += term(sign);
      first = false;
      skip();
    }
    return out;
  }

 private:
  WickElement term(double sign) {
    Complex coeff = sign;
    bool have_coeff = false;
    if (!at_end() && peek() != 'i') {
      coeff *= coefficient();
      have_coeff = true;
      skip();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip();
      }
    }
    const MonoidElement e = sys_.monoid().identity();
    WickKey key{e, {}, e, {}};
    bool have_monomial = false;
    if (starts_with("i(")) {
      pos_ += 2;
      std::tie(key.left_grade, key.left) = argument();
      have_monomial = true;
      skip();
    }
    if (starts_with("i*(")) {
      pos_ += 3;
      std::tie(key.right_grade, key.right) = argument();
      have_monomial = true;
    }
    if (!have_coeff && !have_monomial) fail("expected a coefficient or a monomial");
    return WickElement::basis_monomial(std::move(key), coeff);
  }

  Complex coefficient() {
    const std::size_t start = pos_;
    if (peek() == '(') {
      int depth = 0;
      while (!at_end()) {
        const char c = text_[pos_++];
        if (c == '(') ++depth;
        if (c == ')' && --depth == 0) break;
      }
      if (depth != 0) fail("unbalanced parenthesis in coefficient");
      return parse_complex(text_.substr(start + 1, pos_ - start - 2));
    }
    while (!at_end()) {
      const char c = peek();
      const bool exponent_sign =
          (c == '+' || c == '-') && pos_ > start && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' || exponent_sign) {
        ++pos_;
      } else {
        break;
      }
    }
    if (!at_end() && peek() == 'j') ++pos_;
    if (pos_ == start) fail("expected a coefficient");
    return parse_complex(text_.substr(start, pos_ - start));
  }

  std::pair<MonoidElement, BasisLabel> argument() {
    const std::size_t grade_start = pos_;
    int depth = 0;
    while (!at_end() && !(depth == 0 && peek() == ':')) {
      if (peek() == '(') ++depth;
      if (peek() == ')' && --depth < 0) fail("expected ':' inside i(...)");
      ++pos_;
    }
    if (at_end()) fail("expected ':' inside i(...)");
    const std::string_view grade_text = text_.substr(grade_start, pos_ - grade_start);
    ++pos_;
    const std::size_t label_start = pos_;
    while (!at_end() && peek() != ')') ++pos_;
    if (at_end()) fail("unterminated i(...)");
    const std::string_view label_text = text_.substr(label_start, pos_ - label_start);
    ++pos_;
    MonoidElement grade = sys_.monoid().parse(grade_text);
    BasisLabel label = parse_label(label_text);
    if (!sys_.is_label(grade, label)) {
      throw ParseError("label '" + std::string(label_text) + "' is not a basis label of the fiber over " +
                       sys_.monoid().format(grade));
    }
    return {std::move(grade), std::move(label)};
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  const ProductSystem& sys_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string s = strip(text);
  if (s.empty()) throw ParseError("empty coefficient");
  if (s.back() != 'j') return {parse_real(s, text), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(body, text)};
  return {parse_real(body.substr(0, split), text), parse_real(body.substr(split), text)};
}

BasisLabel parse_label(std::string_view text) {
  const std::string s = strip(text);
  BasisLabel out;
  if (s.empty()) return out;
  const bool wide = s.find(',') != std::string::npos;
  std::size_t k = 0;
  while (k < s.size()) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw ParseError("bad label '" + s + "'");
    if (!wide) {
      out.push_back(static_cast<std::uint32_t>(s[k] - '0'));
      ++k;
      continue;
    }
    std::uint32_t v = 0;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) v = v * 10 + (s[k++] - '0');
    out.push_back(v);
    if (k < s.size()) {
      if (s[k] != ',' || k + 1 == s.size()) throw ParseError("bad label '" + s + "'");
      ++k;
    }
  }
  return out;
}

WickElement parse_expression(const ProductSystem& sys, std::string_view text) { return Parser(sys, text).run(); }

}  // namespace prodsys
