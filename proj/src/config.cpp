#include "dbar/config.hpp"

#include <cstdlib>
#include <sstream>

namespace dbar {

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    const std::string tok = item.substr(b, e - b + 1);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) throw Error(ErrorKind::ConfigError, "not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

ZeroOneForm resolve_form(const RunConfig& cfg) {
  if (cfg.form == "custom") {
    if (cfg.f1.empty() && cfg.f2.empty()) throw Error(ErrorKind::ConfigError, "form = custom needs f1 and/or f2");
    return custom_form(cfg.f1.empty() ? "0" : cfg.f1, cfg.f2.empty() ? "0" : cfg.f2);
  }
  return form_from_catalog(cfg.form);
}

namespace {

double grid_scale(const DomainSpec& spec) {
  switch (spec.kind()) {
    case DomainKind::Ball: return spec.params().radius / 2.0;
    case DomainKind::Omega1:
    case DomainKind::Omega2: return 0.1;
    default: return 1.0;
  }
}

}  // namespace

std::vector<CPoint2> resolve_points(const DomainSpec& spec, const std::string& text, double min_distance) {
  std::vector<CPoint2> pts;
  const CPoint2& c = spec.interior_center();
  if (text == "grid25") {
    const double s = grid_scale(spec);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const Complex z1(-0.4 + 0.2 * i, 0.1), z2(0.05, -0.4 + 0.2 * j);
        pts.push_back(c + s * CPoint2(z1, z2).real());
      }
  } else if (text == "center") {
    pts.push_back(c);
  } else if (text.rfind("interior", 0) == 0) {
    char* end = nullptr;
    const long n = std::strtol(text.c_str() + 8, &end, 10);
    if (n <= 0 || *end != '\0') throw Error(ErrorKind::ConfigError, "points = interiorN needs a positive N");
    const Box box = bounding_box(spec);
    const int bases[4] = {2, 3, 5, 7};
    for (std::uint64_t i = 1; static_cast<long>(pts.size()) < n && i < 200000; ++i) {
      Vec4 x;
      for (int d = 0; d < 4; ++d) x[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * radical_inverse(i, bases[d]);
      const CPoint2 w(x);
      if (contains(spec, w) && distance_to_boundary(spec, w) >= min_distance) pts.push_back(w);
    }
    if (static_cast<long>(pts.size()) < n)
      throw Error(ErrorKind::ConfigError, "could not place that many points at the requested distance");
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
      const auto v = parse_double_list(item);
      if (v.size() != 4) throw Error(ErrorKind::ConfigError, "each explicit point needs 4 real coordinates");
      pts.emplace_back(Vec4(v[0], v[1], v[2], v[3]));
    }
    if (pts.empty()) throw Error(ErrorKind::ConfigError, "unknown points specification '" + text + "'");
  }
  for (const auto& p : pts)
    if (!contains(spec, p)) throw Error(ErrorKind::ConfigError, "evaluation point outside the domain");
  return pts;
}

}  // namespace dbar
