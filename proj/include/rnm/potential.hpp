#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rnm/types.hpp"

namespace rnm {

// External field Q that confines the eigenvalues. Families are immutable and
// safe to share across threads.
class Potential {
 public:
  virtual ~Potential() = default;

  virtual std::string name() const = 0;
  virtual std::unique_ptr<Potential> clone() const = 0;
  virtual double value(Complex z) const = 0;
  // One quarter of the Laplacian of Q, i.e. (Qxx + Qyy)/4.
  virtual double quarter_laplacian(Complex z) const = 0;

  virtual bool is_radial() const = 0;
  // Radial profile q(r) with Q(z) = q(|z|); only for radial families.
  virtual double radial_value(double r) const;
  virtual double radial_derivative(double r) const;

  // Analytic polarization q(z, w) with q(z, conj z) = Q(z), when the family
  // has one in closed form.
  virtual bool has_polarization() const { return false; }
  virtual Complex polarization(Complex z, Complex wbar) const;
  // d^2/(dz dwbar) of the polarization and of its logarithm; the two
  // coefficients of the first-order kernel approximation.
  virtual Complex polarization_dzdw(Complex z, Complex wbar) const;
  virtual Complex polarization_dzdw_log(Complex z, Complex wbar) const;
};

// Q(z) = |z|^2.
class Ginibre final : public Potential {
 public:
  std::string name() const override { return "ginibre"; }
  std::unique_ptr<Potential> clone() const override {
    return std::make_unique<Ginibre>(*this);
  }
  double value(Complex z) const override { return std::norm(z); }
  double quarter_laplacian(Complex) const override { return 1.0; }
  bool is_radial() const override { return true; }
  double radial_value(double r) const override { return r * r; }
  double radial_derivative(double r) const override { return 2.0 * r; }
  bool has_polarization() const override { return true; }
  Complex polarization(Complex z, Complex wbar) const override {
    return z * wbar;
  }
  Complex polarization_dzdw(Complex, Complex) const override { return 1.0; }
  Complex polarization_dzdw_log(Complex, Complex) const override {
    return 0.0;
  }
};

// Q(z) = |z|^2 - tau Re(z^2), |tau| < 1. Droplet is an ellipse.
class EllipticGinibre final : public Potential {
 public:
  explicit EllipticGinibre(double tau);
  double tau() const { return tau_; }
  std::string name() const override;
  std::unique_ptr<Potential> clone() const override {
    return std::make_unique<EllipticGinibre>(*this);
  }
  double value(Complex z) const override {
    return std::norm(z) - tau_ * (z * z).real();
  }
  double quarter_laplacian(Complex) const override { return 1.0; }
  bool is_radial() const override { return tau_ == 0.0; }
  double radial_value(double r) const override;
  double radial_derivative(double r) const override;
  bool has_polarization() const override { return true; }
  Complex polarization(Complex z, Complex wbar) const override {
    return z * wbar - 0.5 * tau_ * (z * z + wbar * wbar);
  }
  Complex polarization_dzdw(Complex, Complex) const override { return 1.0; }
  Complex polarization_dzdw_log(Complex, Complex) const override {
    return 0.0;
  }

 private:
  double tau_;
};

// Q(z) = c |z|^(2p), p >= 1, c > 0.
class RadialPower final : public Potential {
 public:
  RadialPower(double p, double c);
  double p() const { return p_; }
  double c() const { return c_; }
  std::string name() const override;
  std::unique_ptr<Potential> clone() const override {
    return std::make_unique<RadialPower>(*this);
  }
  double value(Complex z) const override {
    return c_ * std::pow(std::norm(z), p_);
  }
  double quarter_laplacian(Complex z) const override {
    return p_ * p_ * c_ * std::pow(std::norm(z), p_ - 1.0);
  }
  bool is_radial() const override { return true; }
  double radial_value(double r) const override {
    return c_ * std::pow(r, 2.0 * p_);
  }
  double radial_derivative(double r) const override {
    return 2.0 * p_ * c_ * std::pow(r, 2.0 * p_ - 1.0);
  }
  bool has_polarization() const override;
  Complex polarization(Complex z, Complex wbar) const override;
  Complex polarization_dzdw(Complex z, Complex wbar) const override;
  Complex polarization_dzdw_log(Complex z, Complex wbar) const override;

 private:
  double p_;
  double c_;
};

// Radial profile q(r) given by samples, interpolated with a natural cubic
// spline and extended linearly beyond the last knot.
class RadialTable final : public Potential {
 public:
  RadialTable(std::vector<double> r, std::vector<double> q);
  std::string name() const override { return "radial_table"; }
  std::unique_ptr<Potential> clone() const override {
    return std::make_unique<RadialTable>(*this);
  }
  double value(Complex z) const override { return radial_value(std::abs(z)); }
  double quarter_laplacian(Complex z) const override;
  bool is_radial() const override { return true; }
  double radial_value(double r) const override;
  double radial_derivative(double r) const override;
  double radial_second_derivative(double r) const;

 private:
  int segment(double r) const;
  std::vector<double> r_, q_, m_;  // knots, values, spline second derivatives
};

// Five-point finite-difference estimate of the quarter Laplacian; used to
// cross-check the analytic formulas.
double quarter_laplacian_check(const Potential& P, Complex z, double h);

// Structural checks every supported family must pass: super-logarithmic
// growth at large |z|, positive quarter Laplacian on a droplet-scale probe
// set, and polarization consistency on the diagonal. Throws HypothesisError.
void validate(const Potential& P, double droplet_scale);

}  // namespace rnm
