#include "dbar/forms.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace dbar {

namespace {

Complex ipow(Complex w, int n) {
  Complex r = 1.0;
  for (int i = 0; i < n; ++i) r *= w;
  return r;
}

// Merge equal monomials and drop zero ones so that closedness can be decided exactly.
std::vector<Monomial> canonical(const std::vector<Monomial>& in) {
  std::map<std::array<int, 4>, Complex> acc;
  for (const auto& m : in) acc[m.powers] += m.coeff;
  std::vector<Monomial> out;
  for (const auto& [p, c] : acc)
    if (std::abs(c) > 0.0) out.push_back({c, p});
  return out;
}

}  // namespace

Complex Polynomial::operator()(const CPoint2& z) const {
  const Complex w[4] = {z.z1(), z.z2(), std::conj(z.z1()), std::conj(z.z2())};
  Complex sum = 0.0;
  for (const auto& m : terms_) {
    Complex v = m.coeff;
    for (int k = 0; k < 4; ++k) v *= ipow(w[k], m.powers[k]);
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::dbar(int j) const {
  std::vector<Monomial> out;
  for (const auto& m : terms_) {
    const int p = m.powers[2 + j];
    if (p == 0) continue;
    Monomial d = m;
    d.coeff *= double(p);
    d.powers[2 + j] -= 1;
    out.push_back(d);
  }
  return Polynomial(canonical(out));
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& m : terms_) d = std::max(d, m.powers[0] + m.powers[1] + m.powers[2] + m.powers[3]);
  return d;
}

Polynomial Polynomial::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::vector<Monomial> terms;
  if (s.empty() || s == "0") return Polynomial();
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ConfigError, "cannot parse polynomial '" + text + "': " + why);
  };
  while (pos < s.size()) {
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1.0;
      ++pos;
    }
    Monomial m{sign, {0, 0, 0, 0}};
    bool first = true;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      if (!first) {
        if (s[pos] != '*') fail("expected '*'");
        ++pos;
      }
      first = false;
      if (s[pos] == '(') {
        const auto close = s.find(')', pos);
        if (close == std::string::npos) fail("unbalanced parenthesis");
        double re = 0, im = 0;
        char comma = 0;
        std::istringstream in(s.substr(pos + 1, close - pos - 1));
        if (!(in >> re >> comma >> im) || comma != ',') fail("bad complex coefficient");
        m.coeff *= Complex(re, im);
        pos = close + 1;
      } else if (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.') {
        std::size_t used = 0;
        m.coeff *= std::stod(s.substr(pos), &used);
        pos += used;
      } else {
        int var = -1;
        for (auto [name, idx] : {std::pair{"zb1", 2}, {"zb2", 3}, {"z1", 0}, {"z2", 1}})
          if (s.compare(pos, std::char_traits<char>::length(name), name) == 0) {
            var = idx;
            pos += std::char_traits<char>::length(name);
            break;
          }
        if (var < 0) fail("unknown factor at position " + std::to_string(pos));
        int power = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          std::size_t used = 0;
          power = std::stoi(s.substr(pos), &used);
          pos += used;
          if (power < 0) fail("negative power");
        }
        m.powers[var] += power;
      }
    }
    terms.push_back(m);
  }
  return Polynomial(canonical(terms));
}

ZeroOneForm::ZeroOneForm(std::string label, Polynomial f1, Polynomial f2)
    : label_(std::move(label)), f1_(std::move(f1)), f2_(std::move(f2)) {
  d_ = {f1_.dbar(0), f1_.dbar(1), f2_.dbar(0), f2_.dbar(1)};
}

Complex ZeroOneForm::dbar_component(int k, int j, const CPoint2& z) const { return d_[2 * k + j](z); }

bool ZeroOneForm::is_closed() const {
  const auto a = canonical(d_[1].terms());
  const auto b = canonical(d_[2].terms());
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].powers != b[i].powers || std::abs(a[i].coeff - b[i].coeff) > 1e-14 * (1.0 + std::abs(a[i].coeff)))
      return false;
  return true;
}

ZeroOneForm ZeroOneForm::operator+(const ZeroOneForm& o) const {
  auto join = [](const Polynomial& p, const Polynomial& q) {
    auto t = p.terms();
    t.insert(t.end(), q.terms().begin(), q.terms().end());
    return Polynomial(canonical(t));
  };
  return ZeroOneForm(label_ + "+" + o.label_, join(f1_, o.f1_), join(f2_, o.f2_));
}

ZeroOneForm form_from_catalog(const std::string& name) {
  if (name == "zero") return ZeroOneForm("zero", Polynomial(), Polynomial());
  if (name == "zbar-pair") return ZeroOneForm(name, Polynomial::parse("zb2"), Polynomial::parse("zb1"));
  if (name == "zbar1-only") return ZeroOneForm(name, Polynomial::parse("zb1"), Polynomial());
  if (name == "zbar2-only") return ZeroOneForm(name, Polynomial(), Polynomial::parse("zb2"));
  throw Error(ErrorKind::ConfigError, "unknown form '" + name + "'");
}

ZeroOneForm custom_form(const std::string& f1, const std::string& f2) {
  ZeroOneForm f("custom", Polynomial::parse(f1), Polynomial::parse(f2));
  if (!f.is_closed()) throw Error(ErrorKind::NotClosed, "d f1/d zbar2 != d f2/d zbar1");
  return f;
}

ZeroOneForm dbar_of(const Polynomial& h, const std::string& label) { return ZeroOneForm(label, h.dbar(0), h.dbar(1)); }

}  // namespace dbar
