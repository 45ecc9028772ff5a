#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dbar {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat43 = Eigen::Matrix<double, 4, 3>;

/// A point of C^2 stored as its real coordinates (x1, y1, x2, y2).
template <typename Scalar>
class CPoint2T {
 public:
  using Real = Eigen::Matrix<Scalar, 4, 1>;

  CPoint2T() : x_(Real::Zero()) {}
  explicit CPoint2T(const Real& x) : x_(x) {}
  CPoint2T(std::complex<Scalar> z1, std::complex<Scalar> z2)
      : x_(z1.real(), z1.imag(), z2.real(), z2.imag()) {}

  std::complex<Scalar> z1() const { return {x_[0], x_[1]}; }
  std::complex<Scalar> z2() const { return {x_[2], x_[3]}; }
  std::complex<Scalar> operator[](int j) const { return j == 0 ? z1() : z2(); }

  const Real& real() const { return x_; }
  Real& real() { return x_; }

  Scalar squared_norm() const { return x_.squaredNorm(); }
  Scalar norm() const { return x_.norm(); }

  CPoint2T operator+(const Real& v) const { return CPoint2T(Real(x_ + v)); }
  CPoint2T operator-(const Real& v) const { return CPoint2T(Real(x_ - v)); }
  Real operator-(const CPoint2T& o) const { return x_ - o.x_; }

 private:
  Real x_;
};

using CPoint2 = CPoint2T<double>;

inline double distance(const CPoint2& a, const CPoint2& b) { return (a - b).norm(); }

enum class ErrorKind {
  UnsupportedSmoothOperation,
  SingularityHit,
  OutOfNeighborhood,
  AuditFailure,
  StencilOutsideDomain,
  InvalidDomain,
  NotClosed,
  ConfigError,
};

std::string to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(to_string(kind) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dbar
