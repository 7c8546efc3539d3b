#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace knotfert {

/// Laurent polynomial in one variable with exact int64 coefficients.
///
/// Stored densely: `coeffs_[k]` is the coefficient of x^(low_ + k).  The
/// representation is kept trimmed so that the first and last stored
/// coefficients are nonzero; the zero polynomial has no coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly constant(std::int64_t c) { return monomial(c, 0); }

  static LaurentPoly monomial(std::int64_t c, int exponent) {
    LaurentPoly p;
    if (c != 0) {
      p.low_ = exponent;
      p.coeffs_.push_back(c);
    }
    return p;
  }

  static LaurentPoly from_terms(const std::map<int, std::int64_t>& terms) {
    LaurentPoly p;
    for (const auto& [e, c] : terms) p += monomial(c, e);
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int low_degree() const { return low_; }
  int high_degree() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  std::size_t term_span() const { return coeffs_.size(); }

  std::int64_t coeff(int exponent) const {
    const int k = exponent - low_;
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[k];
  }

  /// Nonzero terms in increasing exponent order.
  std::map<int, std::int64_t> terms() const {
    std::map<int, std::int64_t> out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (coeffs_[k] != 0) out[low_ + static_cast<int>(k)] = coeffs_[k];
    return out;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const int lo = std::min(low_, o.low_);
    const int hi = std::max(high_degree(), o.high_degree());
    std::vector<std::int64_t> c(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[low_ - lo + k] += coeffs_[k];
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) c[o.low_ - lo + k] += o.coeffs_[k];
    coeffs_ = std::move(c);
    low_ = lo;
    trim();
    return *this;
  }

  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    if (a.is_zero() || b.is_zero()) return p;
    p.low_ = a.low_ + b.low_;
    p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        p.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    p.trim();
    return p;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  /// Multiply by x^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly p = *this;
    if (!p.is_zero()) p.low_ += k;
    return p;
  }

  /// x -> x^-1.
  LaurentPoly mirrored() const {
    LaurentPoly p;
    if (is_zero()) return p;
    p.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    p.low_ = -high_degree();
    return p;
  }

  bool is_palindromic() const { return *this == mirrored(); }

  /// x -> x^(num/den).  Every exponent times num must be divisible by den.
  LaurentPoly rescaled(int num, int den) const {
    std::map<int, std::int64_t> out;
    for (const auto& [e, c] : terms()) {
      const long long scaled = static_cast<long long>(e) * num;
      if (scaled % den != 0)
        throw std::domain_error("LaurentPoly::rescaled: exponent " + std::to_string(e) +
                                " not divisible");
      out[static_cast<int>(scaled / den)] += c;
    }
    return from_terms(out);
  }

  /// Evaluate at an integer point; x must be +-1 when negative exponents exist.
  std::int64_t evaluate(std::int64_t x) const {
    if (low_ < 0 && x != 1 && x != -1)
      throw std::domain_error("LaurentPoly::evaluate: negative exponent at non-unit point");
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const int e = low_ + static_cast<int>(k);
      std::int64_t xp = 1;
      if (x == -1) {
        xp = (e % 2 == 0) ? 1 : -1;
      } else if (x != 1) {
        for (int i = 0; i < e; ++i) xp *= x;
      }
      sum += coeffs_[k] * xp;
    }
    return sum;
  }

  /// Exact division; throws std::domain_error if `d` does not divide *this.
  LaurentPoly divided_exact(const LaurentPoly& d) const {
    if (d.is_zero()) throw std::domain_error("LaurentPoly: division by zero");
    LaurentPoly rem = *this;
    LaurentPoly quot;
    const std::int64_t lead = d.coeffs_.back();
    while (!rem.is_zero()) {
      if (rem.term_span() < d.term_span())
        throw std::domain_error("LaurentPoly: inexact division");
      const std::int64_t top = rem.coeffs_.back();
      if (top % lead != 0) throw std::domain_error("LaurentPoly: inexact division");
      const LaurentPoly q = monomial(top / lead, rem.high_degree() - d.high_degree());
      quot += q;
      rem -= q * d;
    }
    return quot;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

  /// Total order used for canonical keys (not algebraically meaningful).
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && !b.is_zero();
    if (a.low_ != b.low_) return a.low_ < b.low_;
    return a.coeffs_ < b.coeffs_;
  }

  /// Human-readable form, e.g. "-t^4 + t^3 + t".
  std::string to_string(std::string_view var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const std::int64_t c = coeffs_[k];
      if (c == 0) continue;
      const int e = low_ + static_cast<int>(k);
      const std::int64_t mag = c < 0 ? -c : c;
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag << '*';
      os << var;
      if (e != 1) os << '^' << e;
    }
    return os.str();
  }

  /// Compact "exponent:coefficient" pairs in increasing exponent order, e.g.
  /// "1:1 3:1 4:-1".  Zero polynomial serializes as "0:0".
  std::string to_pairs() const {
    if (is_zero()) return "0:0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms()) {
      if (!first) os << ' ';
      first = false;
      os << e << ':' << c;
    }
    return os.str();
  }

  static LaurentPoly from_pairs(std::string_view text) {
    std::map<int, std::int64_t> terms;
    std::istringstream is{std::string(text)};
    std::string tok;
    while (is >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("LaurentPoly::from_pairs: missing ':' in '" + tok + "'");
      std::size_t used_e = 0, used_c = 0;
      const std::string es = tok.substr(0, colon), cs = tok.substr(colon + 1);
      int e = 0;
      long long c = 0;
      try {
        e = std::stoi(es, &used_e);
        c = std::stoll(cs, &used_c);
      } catch (const std::exception&) {
        throw std::invalid_argument("LaurentPoly::from_pairs: bad term '" + tok + "'");
      }
      if (used_e != es.size() || used_c != cs.size())
        throw std::invalid_argument("LaurentPoly::from_pairs: bad term '" + tok + "'");
      terms[e] += c;
    }
    return from_terms(terms);
  }

 private:
  void trim() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      low_ = 0;
      return;
    }
    std::size_t end = coeffs_.size();
    while (coeffs_[end - 1] == 0) --end;
    coeffs_ = std::vector<std::int64_t>(coeffs_.begin() + static_cast<std::ptrdiff_t>(lead),
                                        coeffs_.begin() + static_cast<std::ptrdiff_t>(end));
    low_ += static_cast<int>(lead);
  }

  int low_ = 0;
  std::vector<std::int64_t> coeffs_;
};

}  // namespace knotfert
