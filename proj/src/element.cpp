#include <fmt/format.h>

#include <cctype>
#include <optional>

#include "catsl2/diagram.hpp"

namespace catsl2 {

namespace {

// Recursive descent over
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('|' factor)*
//   factor := power ('*' power)*
//   power  := atom ['^' int]
//   atom   := number ['/' number] | gen | 'xi' | '(' sum ')'
//   sum    := ['-'] factor (('+' | '-') factor)*
//   gen    := ('x' | 'y') '[' int ']' ['@' ['-'] int]
class ElementParser {
 public:
  ElementParser(const std::string& text, const FlagPath& path) : s_(text), path_(path) {}

  BimElement parse() {
    BimElement out(path_);
    skip();
    if (at_end()) fail("empty expression", "an element", "end of input");
    bool negative = accept('-');
    for (;;) {
      RawTensor raw = term();
      if (negative) raw.tail *= Rational(-1);
      out += normalize(raw);
      skip();
      if (accept('+')) {
        negative = false;
      } else if (accept('-')) {
        negative = true;
      } else {
        break;
      }
    }
    skip();
    if (!at_end()) fail(fmt::format("unexpected '{}'", s_[pos_]), "'+', '-' or end of input", std::string(1, s_[pos_]));
    return out;
  }

 private:
  const std::string& s_;
  const FlagPath& path_;
  std::size_t pos_ = 0;
  int factor_ = 0;

  [[noreturn]] void fail(const std::string& message, const std::string& expected, const std::string& actual,
                         std::optional<std::size_t> from = std::nullopt) const {
    std::size_t b = from.value_or(pos_);
    std::size_t e = std::max(b + 1, pos_);
    throw DiagramError(message, SourceSpan{1, static_cast<int>(b) + 1, static_cast<int>(e) + 1}, expected, actual);
  }

  bool at_end() const { return pos_ >= s_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (!at_end() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(fmt::format("expected '{}'", c), std::string(1, c), at_end() ? "end of input" : std::string(1, s_[pos_]));
  }
  long integer() {
    skip();
    std::size_t b = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) fail("expected a number", "digits", at_end() ? "end of input" : std::string(1, s_[pos_]));
    if (pos_ - b > 9) fail("number too large", "at most 9 digits", s_.substr(b, pos_ - b), b);
    return std::stol(s_.substr(b, pos_ - b));
  }

  RawTensor term() {
    const int m = path_.length();
    const int slots = std::max(m, 1);
    std::size_t start = pos_;
    std::vector<Polynomial> factors;
    for (factor_ = 0;; ++factor_) {
      if (factor_ >= slots) fail(fmt::format("too many tensor factors for path {}", path_.to_string()), fmt::format("{} factors", slots),
                                 fmt::format("{} or more", factor_ + 1), start);
      factors.push_back(product());
      if (!accept('|')) break;
    }
    if (static_cast<int>(factors.size()) != slots)
      fail(fmt::format("path {} needs {} tensor factor{}, found {}", path_.to_string(), slots, slots == 1 ? "" : "s", factors.size()),
           fmt::format("{} factors", slots), fmt::format("{} factors", factors.size()), start);
    RawTensor raw{path_, {}, Polynomial::one()};
    if (m == 0) {
      raw.tail = factors[0];
    } else {
      raw.factors = std::move(factors);
    }
    return raw;
  }

  Polynomial product() {
    Polynomial p = power();
    while (accept('*')) p *= power();
    return p;
  }

  Polynomial sum() {
    bool negative = accept('-');
    Polynomial p;
    for (;;) {
      Polynomial t = product();
      p += negative ? -t : t;
      if (accept('+')) {
        negative = false;
      } else if (accept('-')) {
        negative = true;
      } else {
        return p;
      }
    }
  }

  Polynomial power() {
    Polynomial a = atom();
    if (accept('^')) a = a.pow(static_cast<int>(integer()));
    return a;
  }

  Polynomial atom() {
    skip();
    if (at_end()) fail("unexpected end of input", "a factor", "end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long num = integer();
      long den = 1;
      if (accept('/')) {
        std::size_t b = pos_;
        den = integer();
        if (den == 0) fail("zero denominator", "nonzero integer", "0", b);
      }
      return Polynomial(make_rational(num, den));
    }
    if (c == '(') {
      ++pos_;
      Polynomial p = sum();
      expect(')');
      return p;
    }
    if (s_.compare(pos_, 2, "xi") == 0) {
      std::size_t b = pos_;
      pos_ += 2;
      if (path_.length() == 0) fail("xi has no meaning on an identity path", "x[j] or y[j]", "xi", b);
      return Polynomial(VarSymbol::xi(factor_ + 1));
    }
    if (c == 'x' || c == 'y') {
      std::size_t b = pos_;
      ++pos_;
      expect('[');
      int j = static_cast<int>(integer());
      expect(']');
      std::optional<int> weight;
      if (accept('@')) {
        bool neg = accept('-');
        weight = static_cast<int>(integer()) * (neg ? -1 : 1);
      }
      return Polynomial(generator(c, j, weight, b));
    }
    fail(fmt::format("unexpected '{}'", c), "number, x[j], y[j], xi or '('", std::string(1, c));
  }

  VarSymbol generator(char family, int j, std::optional<int> weight, std::size_t from) {
    std::string shown = s_.substr(from, pos_ - from);
    if (j < 1) fail(fmt::format("{} has index below 1", shown), "index >= 1", shown, from);
    auto make = [&](int n) { return family == 'x' ? VarSymbol::x(j, n) : VarSymbol::y(j, n); };
    if (path_.length() == 0) {
      GrassContext ctx = GrassContext::make(path_.N(), path_.left_ring());
      VarSymbol v = make(weight.value_or(ctx.n()));
      for (const auto& g : ctx.generators())
        if (g == v) return v;
      fail(fmt::format("{} is not a generator of H_{} (N = {})", shown, ctx.k, ctx.N), "a generator of the ring", shown, from);
    }
    const FactorRing& fr = factor_ring(path_, factor_);
    if (weight) {
      VarSymbol v = make(*weight);
      if (fr.is_allowed(v)) return v;
    } else {
      for (const auto& g : fr.canonical_generators())
        if (g.kind == (family == 'x' ? VarKind::ChernX : VarKind::ChernY) && g.index == j) return g;
    }
    fail(fmt::format("{} is not a generator of tensor factor {} ({} -> {})", shown, factor_ + 1, fr.left(), fr.right()),
         "a generator of the factor ring", shown, from);
  }
};

}  // namespace

BimElement parse_element(const std::string& text, const FlagPath& path) {
  if (path.is_zero()) return BimElement(path);
  return ElementParser(text, path).parse();
}

}  // namespace catsl2
