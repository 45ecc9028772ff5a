#include <doctest.h>

#include <cmath>

#include "dbar/forms.hpp"

using namespace dbar;

TEST_CASE("polynomial parsing and evaluation") {
  const Polynomial p = Polynomial::parse("2*z1^2*zb2 + (0,1)*zb1 - 3");
  const CPoint2 z(Complex(0.5, -0.2), Complex(1.0, 0.3));
  const Complex expect =
      2.0 * z.z1() * z.z1() * std::conj(z.z2()) + Complex(0, 1) * std::conj(z.z1()) - 3.0;
  CHECK(std::abs(p(z) - expect) < 1e-14);
  CHECK(p.degree() == 3);
  CHECK_THROWS_AS(Polynomial::parse("z3"), Error);
  CHECK_THROWS_AS(Polynomial::parse("2*"), Error);
}

TEST_CASE("polynomial dbar derivatives") {
  const Polynomial p = Polynomial::parse("z1*zb1^2*zb2");
  const CPoint2 z(Complex(0.4, 0.1), Complex(-0.3, 0.7));
  const Complex z1 = z.z1(), zb1 = std::conj(z1), zb2 = std::conj(z.z2());
  CHECK(std::abs(p.dbar(0)(z) - 2.0 * z1 * zb1 * zb2) < 1e-14);
  CHECK(std::abs(p.dbar(1)(z) - z1 * zb1 * zb1) < 1e-14);
}

TEST_CASE("catalog forms") {
  const CPoint2 z(Complex(0.2, 0.3), Complex(-0.1, 0.4));
  const ZeroOneForm pair = form_from_catalog("zbar-pair");
  CHECK(pair.is_closed());
  CHECK(pair.f1(z) == std::conj(z.z2()));
  CHECK(pair.f2(z) == std::conj(z.z1()));
  CHECK(pair.dbar_component(0, 1, z) == Complex(1.0, 0.0));
  CHECK(pair.dbar_component(1, 0, z) == Complex(1.0, 0.0));

  const ZeroOneForm zero = form_from_catalog("zero");
  CHECK(zero.f1(z) == Complex(0.0, 0.0));
  CHECK(zero.f2(z) == Complex(0.0, 0.0));

  CHECK(form_from_catalog("zbar1-only").f1(z) == std::conj(z.z1()));
  CHECK(form_from_catalog("zbar2-only").f2(z) == std::conj(z.z2()));
  CHECK_THROWS_AS(form_from_catalog("nope"), Error);
}

TEST_CASE("custom forms must be dbar-closed") {
  CHECK(custom_form("zb2", "zb1").is_closed());
  CHECK(custom_form("z1*zb1", "0").is_closed());
  try {
    custom_form("zb2", "0");
    FAIL("expected NotClosed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotClosed);
  }
}

TEST_CASE("dbar of a polynomial is closed and adds linearly") {
  const ZeroOneForm g = dbar_of(Polynomial::parse("z1*zb2^2 + zb1*zb2"), "dbar h");
  CHECK(g.is_closed());
  const CPoint2 z(Complex(0.1, 0.2), Complex(0.3, -0.4));
  CHECK(std::abs(g.f2(z) - (2.0 * z.z1() * std::conj(z.z2()) + std::conj(z.z1()))) < 1e-14);

  const ZeroOneForm sum = form_from_catalog("zbar-pair") + g;
  CHECK(sum.is_closed());
  CHECK(std::abs(sum.f1(z) - (std::conj(z.z2()) + g.f1(z))) < 1e-14);

  // A holomorphic h has dbar h = 0.
  const ZeroOneForm hol = dbar_of(Polynomial::parse("z1*z2"), "dbar z1 z2");
  CHECK(hol.f1(z) == Complex(0.0, 0.0));
  CHECK(hol.f2(z) == Complex(0.0, 0.0));
}
