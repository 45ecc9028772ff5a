#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dbar/types.hpp"

namespace dbar {

/// c * z1^p1 z2^p2 conj(z1)^q1 conj(z2)^q2
struct Monomial {
  Complex coeff;
  std::array<int, 4> powers{};  // z1, z2, zb1, zb2
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Monomial> terms) : terms_(std::move(terms)) {}

  Complex operator()(const CPoint2& z) const;
  /// d/dzbar_j of the polynomial, j in {0, 1}.
  Polynomial dbar(int j) const;
  int degree() const;
  const std::vector<Monomial>& terms() const { return terms_; }

  /// Parses "c*z1^a*zb2^b + ..." where c is a real number or "(re,im)".
  static Polynomial parse(const std::string& text);

 private:
  std::vector<Monomial> terms_;
};

/// A (0,1)-form f1 dzbar1 + f2 dzbar2 with polynomial coefficients.
class ZeroOneForm {
 public:
  ZeroOneForm() = default;
  ZeroOneForm(std::string label, Polynomial f1, Polynomial f2);

  Complex f1(const CPoint2& z) const { return f1_(z); }
  Complex f2(const CPoint2& z) const { return f2_(z); }
  Complex component(int j, const CPoint2& z) const { return j == 0 ? f1(z) : f2(z); }
  /// d f_k / d zbar_j.
  Complex dbar_component(int k, int j, const CPoint2& z) const;
  int degree() const { return std::max(f1_.degree(), f2_.degree()); }
  const std::string& label() const { return label_; }

  /// True when d f1/d zbar2 = d f2/d zbar1 identically (checked on the coefficients).
  bool is_closed() const;

  ZeroOneForm operator+(const ZeroOneForm& o) const;

 private:
  std::string label_;
  Polynomial f1_, f2_;
  std::array<Polynomial, 4> d_;  // d f1/dzb1, d f1/dzb2, d f2/dzb1, d f2/dzb2
};

/// Named catalog: "zero", "zbar-pair" (zbar2 dzbar1 + zbar1 dzbar2), "zbar1-only" (zbar1 dzbar1),
/// "zbar2-only" (zbar2 dzbar2). Throws ConfigError for unknown names.
ZeroOneForm form_from_catalog(const std::string& name);
/// Custom form; throws NotClosed unless dbar-closed.
ZeroOneForm custom_form(const std::string& f1, const std::string& f2);
/// dbar h for a polynomial h.
ZeroOneForm dbar_of(const Polynomial& h, const std::string& label);

}  // namespace dbar
