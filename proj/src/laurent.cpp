#include "catsl2/laurent.hpp"

#include <fmt/format.h>

#include <cstdlib>

namespace catsl2 {

Laurent Laurent::monomial(int exponent, long coefficient) {
  Laurent l;
  l.add(exponent, coefficient);
  return l;
}

long Laurent::coefficient(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? 0 : it->second;
}

void Laurent::add(int exponent, long coefficient) {
  if (coefficient == 0) return;
  long& c = coeffs_[exponent];
  c += coefficient;
  if (c == 0) coeffs_.erase(exponent);
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [e, c] : o.coeffs_) add(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [e, c] : o.coeffs_) add(e, -c);
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent out;
  for (const auto& [e, c] : coeffs_) out.coeffs_[e] = -c;
  return out;
}

Laurent Laurent::shifted(int s) const {
  Laurent out;
  for (const auto& [e, c] : coeffs_) out.coeffs_[e + s] = c;
  return out;
}

std::string Laurent::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    auto [e, c] = *it;
    long mag = std::labs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string q = e == 0 ? "" : (e == 1 ? "q" : fmt::format("q^{}", e));
    if (q.empty()) {
      s += std::to_string(mag);
    } else if (mag == 1) {
      s += q;
    } else {
      s += fmt::format("{}*{}", mag, q);
    }
  }
  return s;
}

Laurent quantum_integer(int n) {
  Laurent out;
  int m = std::abs(n);
  long sign = n < 0 ? -1 : 1;
  for (int e = m - 1; e >= 1 - m; e -= 2) out.add(e, sign);
  return out;
}

}  // namespace catsl2
