#include "prodsys/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace prodsys {

namespace {

bool all_positive(const std::vector<Letter>& letters) {
  return std::all_of(letters.begin(), letters.end(),
                     [](const Letter& l) { return l.exponent > 0; });
}

// Lexicographic comparison of the expanded generator strings of two positive
// words (a^2 b expands to "aab"); a proper prefix sorts first.
int compare_expanded(const std::vector<Letter>& x, const std::vector<Letter>& y) {
  std::size_t i = 0, j = 0;
  Exponent rx = x.empty() ? Exponent(0) : x[0].exponent;
  Exponent ry = y.empty() ? Exponent(0) : y[0].exponent;
  while (true) {
    if (i == x.size() && j == y.size()) return 0;
    if (i == x.size()) return -1;
    if (j == y.size()) return 1;
    if (x[i].factor != y[j].factor) return x[i].factor < y[j].factor ? -1 : 1;
    const Exponent step = rx < ry ? rx : ry;
    rx -= step;
    ry -= step;
    if (rx == 0 && ++i < x.size()) rx = x[i].exponent;
    if (ry == 0 && ++j < y.size()) ry = y[j].exponent;
  }
}

int compare_plain(const std::vector<Letter>& x, const std::vector<Letter>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k].factor != y[k].factor) return x[k].factor < y[k].factor ? -1 : 1;
    if (x[k].exponent != y[k].exponent) return x[k].exponent < y[k].exponent ? -1 : 1;
  }
  if (x.size() == y.size()) return 0;
  return x.size() < y.size() ? -1 : 1;
}

bool is_integral(const Exponent& e) {
  return boost::multiprecision::denominator(e) == 1;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Reads [-]digits[/digits] starting at pos.
Exponent read_rational(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  const std::size_t digits = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == digits) {
    throw std::invalid_argument("expected a number at offset " + std::to_string(start) +
                                " in '" + std::string(text) + "'");
  }
  if (pos + 1 < text.size() && text[pos] == '/' &&
      std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  std::string token(text.substr(start, pos - start));
  if (!token.empty() && token.front() == '+') token.erase(0, 1);
  const auto slash = token.find('/');
  if (slash == std::string::npos) return Exponent(Integer(token));
  const Integer den(token.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Exponent(Integer(token.substr(0, slash)), den);
}

void generate_words(std::uint32_t factor_count, std::vector<Letter>& word,
                    std::uint32_t last, unsigned remaining,
                    std::vector<std::vector<Letter>>& out) {
  out.push_back(word);
  for (std::uint32_t f = 0; f < factor_count; ++f) {
    if (!word.empty() && f == last) continue;
    for (unsigned e = 1; e <= remaining; ++e) {
      word.push_back(Letter{f, Exponent(e)});
      generate_words(factor_count, word, f, remaining - e, out);
      word.pop_back();
    }
  }
}

void generate_vectors(std::size_t k, std::vector<unsigned>& coords, const std::vector<unsigned>& caps,
                      unsigned remaining, bool use_total, std::vector<std::vector<unsigned>>& out) {
  if (k == coords.size()) {
    out.push_back(coords);
    return;
  }
  const unsigned cap = use_total ? remaining : caps[k];
  for (unsigned c = 0; c <= cap; ++c) {
    coords[k] = c;
    generate_vectors(k + 1, coords, caps, use_total ? remaining - c : 0, use_total, out);
  }
  coords[k] = 0;
}

}  // namespace

Exponent MonoidElement::total_degree() const {
  Exponent sum = 0;
  for (const auto& l : letters_) sum += l.exponent;
  return sum;
}

int compare(const MonoidElement& a, const MonoidElement& b) {
  const bool pa = all_positive(a.letters());
  const bool pb = all_positive(b.letters());
  if (pa != pb) return pa ? -1 : 1;
  if (!pa) return compare_plain(a.letters(), b.letters());
  const Exponent da = a.total_degree();
  const Exponent db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  return compare_expanded(a.letters(), b.letters());
}

bool operator<(const MonoidElement& a, const MonoidElement& b) { return compare(a, b) < 0; }

const MonoidElement& JoinResult::value() const {
  if (is_infinite()) throw std::logic_error("join is infinite");
  return std::get<MonoidElement>(value_);
}

Exponent DirectSumImage::at(std::uint32_t factor) const {
  const auto it = coordinates.find(factor);
  return it == coordinates.end() ? Exponent(0) : it->second;
}

DirectSumImage DirectSumImage::join(const DirectSumImage& other) const {
  DirectSumImage out = *this;
  for (const auto& [f, c] : other.coordinates) {
    auto& slot = out.coordinates[f];
    if (c > slot) slot = c;
  }
  for (auto it = out.coordinates.begin(); it != out.coordinates.end();) {
    it = it->second == 0 ? out.coordinates.erase(it) : std::next(it);
  }
  return out;
}

std::string describe(const IdealBound& bound) {
  if (const auto* l = std::get_if<LengthBound>(&bound)) {
    return "L=" + std::to_string(l->max_degree);
  }
  std::string out = "box=(";
  const auto& limits = std::get<BoxBound>(bound).limits;
  for (std::size_t i = 0; i < limits.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(limits[i]);
  }
  return out + ")";
}

std::string format_exponent(const Exponent& e) { return e.str(); }

Monoid::Monoid(MonoidKind kind, std::vector<Factor> factors)
    : kind_(kind), factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("a monoid needs at least one factor");
  if (kind_ == MonoidKind::total_order && factors_.size() != 1) {
    throw std::invalid_argument("a total order has exactly one factor");
  }
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    auto& name = factors_[i].name;
    if (name.empty()) name = std::string(1, static_cast<char>('a' + (i % 26)));
    if (name == "e") throw std::invalid_argument("'e' is reserved for the identity");
    if (!std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; })) {
      throw std::invalid_argument("factor names must be alphabetic: '" + name + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (factors_[j].name == name) throw std::invalid_argument("duplicate factor name '" + name + "'");
    }
  }
}

Monoid Monoid::naturals() { return Monoid(MonoidKind::total_order, {Factor{FactorKind::integers, "x"}}); }

Monoid Monoid::free_naturals(std::size_t n) {
  return Monoid(MonoidKind::free_product, std::vector<Factor>(n, Factor{FactorKind::integers, ""}));
}

Monoid Monoid::naturals_power(std::size_t n) {
  return Monoid(MonoidKind::direct_sum, std::vector<Factor>(n, Factor{FactorKind::integers, ""}));
}

bool Monoid::has_dense_factor() const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const Factor& f) { return f.kind == FactorKind::rationals_dense; });
}

void Monoid::validate_letter(const Letter& l) const {
  if (l.factor >= factors_.size()) {
    throw std::invalid_argument("unknown factor id " + std::to_string(l.factor));
  }
  if (factors_[l.factor].kind == FactorKind::integers && !is_integral(l.exponent)) {
    throw std::invalid_argument("fractional exponent " + format_exponent(l.exponent) +
                                " on integer factor '" + factors_[l.factor].name + "'");
  }
}

MonoidElement Monoid::generator(std::uint32_t factor, const Exponent& exponent) const {
  return normalize({Letter{factor, exponent}});
}

MonoidElement Monoid::from_coordinates(const std::vector<Exponent>& coords) const {
  if (coords.size() != factors_.size()) {
    throw std::invalid_argument("coordinate count does not match the number of factors");
  }
  std::vector<Letter> raw;
  for (std::uint32_t f = 0; f < coords.size(); ++f) raw.push_back(Letter{f, coords[f]});
  return normalize(std::move(raw));
}

MonoidElement Monoid::normalize(std::vector<Letter> raw) const {
  for (const auto& l : raw) validate_letter(l);
  std::vector<Letter> out;
  if (kind_ == MonoidKind::direct_sum) {
    std::map<std::uint32_t, Exponent> sums;
    for (auto& l : raw) sums[l.factor] += l.exponent;
    for (auto& [f, e] : sums) {
      if (e != 0) out.push_back(Letter{f, std::move(e)});
    }
    return MonoidElement(std::move(out));
  }
  for (auto& l : raw) {
    if (l.exponent == 0) continue;
    if (!out.empty() && out.back().factor == l.factor) {
      out.back().exponent += l.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(std::move(l));
    }
  }
  return MonoidElement(std::move(out));
}

MonoidElement Monoid::multiply(const MonoidElement& s, const MonoidElement& t) const {
  std::vector<Letter> raw = s.letters();
  raw.insert(raw.end(), t.letters().begin(), t.letters().end());
  return normalize(std::move(raw));
}

MonoidElement Monoid::invert(const MonoidElement& g) const {
  std::vector<Letter> raw(g.letters().rbegin(), g.letters().rend());
  for (auto& l : raw) l.exponent = -l.exponent;
  return normalize(std::move(raw));
}

bool Monoid::is_positive(const MonoidElement& g) const { return all_positive(g.letters()); }

bool Monoid::leq(const MonoidElement& s, const MonoidElement& t) const {
  return is_positive(multiply(invert(s), t));
}

JoinResult Monoid::join(const MonoidElement& s, const MonoidElement& t) const {
  if (kind_ == MonoidKind::direct_sum) {
    std::map<std::uint32_t, Exponent> top;
    for (const auto& l : s.letters()) top[l.factor] = l.exponent;
    for (const auto& l : t.letters()) {
      auto& slot = top[l.factor];
      if (l.exponent > slot) slot = l.exponent;
    }
    std::vector<Letter> raw;
    for (auto& [f, e] : top) raw.push_back(Letter{f, e});
    return normalize(std::move(raw));
  }
  if (leq(s, t)) return t;
  if (leq(t, s)) return s;
  return Infinity{};
}

MonoidElement Monoid::left_quotient(const MonoidElement& s, const MonoidElement& t) const {
  MonoidElement q = multiply(invert(s), t);
  if (!is_positive(q)) {
    throw std::invalid_argument("left_quotient: " + format(s) + " is not below " + format(t));
  }
  return q;
}

DirectSumImage Monoid::theta(const MonoidElement& s) const {
  DirectSumImage image;
  for (const auto& l : s.letters()) image.coordinates[l.factor] += l.exponent;
  for (auto it = image.coordinates.begin(); it != image.coordinates.end();) {
    it = it->second == 0 ? image.coordinates.erase(it) : std::next(it);
  }
  return image;
}

std::vector<MonoidElement> Monoid::enumerate_ideal(const IdealBound& bound) const {
  if (has_dense_factor()) {
    throw UnsupportedOperation("unsupported truncation: dense factors have no finite ideals");
  }
  std::vector<MonoidElement> out;
  if (kind_ == MonoidKind::direct_sum || std::holds_alternative<BoxBound>(bound)) {
    if (kind_ == MonoidKind::free_product) {
      throw UnsupportedOperation("unsupported truncation: box bounds need a direct sum or a total order");
    }
    std::vector<unsigned> caps;
    unsigned total = 0;
    const bool use_total = std::holds_alternative<LengthBound>(bound);
    if (use_total) {
      total = std::get<LengthBound>(bound).max_degree;
    } else {
      caps = std::get<BoxBound>(bound).limits;
      if (caps.size() != factors_.size()) {
        throw std::invalid_argument("box bound needs one limit per factor");
      }
    }
    std::vector<std::vector<unsigned>> vectors;
    std::vector<unsigned> coords(factors_.size(), 0);
    generate_vectors(0, coords, caps, total, use_total, vectors);
    for (const auto& v : vectors) {
      std::vector<Exponent> e(v.begin(), v.end());
      out.push_back(from_coordinates(e));
    }
  } else {
    std::vector<std::vector<Letter>> words;
    std::vector<Letter> word;
    generate_words(static_cast<std::uint32_t>(factors_.size()), word, 0,
                   std::get<LengthBound>(bound).max_degree, words);
    for (auto& w : words) out.push_back(MonoidElement(std::move(w)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MonoidElement Monoid::parse(std::string_view text) const {
  const std::string_view body = trim(text);
  if (body.empty() || body == "e") return identity();

  if (body.front() == '(' && kind_ != MonoidKind::free_product) {
    if (body.back() != ')') throw std::invalid_argument("unterminated tuple '" + std::string(text) + "'");
    const std::string_view inner = body.substr(1, body.size() - 2);
    std::vector<Exponent> coords;
    std::size_t pos = 0;
    while (true) {
      while (pos < inner.size() && std::isspace(static_cast<unsigned char>(inner[pos]))) ++pos;
      coords.push_back(read_rational(inner, pos));
      while (pos < inner.size() && std::isspace(static_cast<unsigned char>(inner[pos]))) ++pos;
      if (pos == inner.size()) break;
      if (inner[pos] != ',') throw std::invalid_argument("expected ',' in '" + std::string(text) + "'");
      ++pos;
    }
    return from_coordinates(coords);
  }

  if (kind_ == MonoidKind::total_order &&
      (std::isdigit(static_cast<unsigned char>(body.front())) || body.front() == '-')) {
    std::size_t pos = 0;
    Exponent e = read_rational(body, pos);
    if (pos != body.size()) throw std::invalid_argument("trailing characters in '" + std::string(text) + "'");
    return generator(0, e);
  }

  std::vector<Letter> raw;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const char c = body[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++pos;
      continue;
    }
    // Longest factor name matching at pos.
    std::size_t best = factors_.size();
    std::size_t best_len = 0;
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      const auto& name = factors_[f].name;
      if (name.size() > best_len && body.substr(pos, name.size()) == name) {
        best = f;
        best_len = name.size();
      }
    }
    if (best == factors_.size()) {
      throw std::invalid_argument("unknown generator at offset " + std::to_string(pos) + " in '" +
                                  std::string(text) + "'");
    }
    pos += best_len;
    Exponent e = 1;
    if (pos < body.size() && body[pos] == '^') {
      ++pos;
      if (pos < body.size() && body[pos] == '(') {
        ++pos;
        e = read_rational(body, pos);
        if (pos >= body.size() || body[pos] != ')') {
          throw std::invalid_argument("expected ')' in '" + std::string(text) + "'");
        }
        ++pos;
      } else {
        e = read_rational(body, pos);
      }
    }
    raw.push_back(Letter{static_cast<std::uint32_t>(best), e});
  }
  return normalize(std::move(raw));
}

std::string Monoid::format(const MonoidElement& g) const {
  std::ostringstream out;
  if (kind_ == MonoidKind::direct_sum) {
    const DirectSumImage image = theta(g);
    out << '(';
    for (std::uint32_t f = 0; f < factors_.size(); ++f) {
      if (f) out << ',';
      out << format_exponent(image.at(f));
    }
    out << ')';
    return out.str();
  }
  if (kind_ == MonoidKind::total_order) {
    return g.is_identity() ? "0" : format_exponent(g.letters().front().exponent);
  }
  if (g.is_identity()) return "e";
  for (const auto& l : g.letters()) {
    out << factors_[l.factor].name;
    if (l.exponent != 1) out << '^' << format_exponent(l.exponent);
  }
  return out.str();
}

std::string Monoid::format(const JoinResult& j) const {
  return j.is_infinite() ? "infinity" : format(j.value());
}

}  // namespace prodsys
