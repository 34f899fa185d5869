#pragma once

// Parametrized curves on I = [0, 1]: analytic generators with exact
// derivatives, sampled curves on a uniform grid, rigid motions, and file I/O.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "jetreg/liegroup.hpp"

namespace jetreg {

/// Element (g, x) of E(n) acting by c -> g c + x.
struct RigidTransform {
  Rotation g;
  Vector x;

  static RigidTransform identity(int n);
  int dim() const { return g.dim(); }
  /// (*this) after `inner`: c -> g (g_in c + x_in) + x
  RigidTransform after(const RigidTransform& inner) const;
  Vector apply(const Vector& p) const { return g.matrix() * p + x; }
};

/// Monotone reparametrization f of a straight line a f(s) + b.
struct SpeedProfile {
  enum class Kind { Constant, Polynomial, Sinusoidal };
  Kind kind = Kind::Constant;
  /// Constant: {v}  f = v s
  /// Polynomial: coefficients {p0, p1, ...}  f = sum p_i s^i
  /// Sinusoidal: {v, eps}  f = v s + eps sin(2 pi s), requires |2 pi eps| < v
  std::vector<double> params{1.0};

  static SpeedProfile constant(double v) { return {Kind::Constant, {v}}; }
  static SpeedProfile polynomial(std::vector<double> coeffs) { return {Kind::Polynomial, std::move(coeffs)}; }
  static SpeedProfile sinusoidal(double v, double eps) { return {Kind::Sinusoidal, {v, eps}}; }

  double derivative(double s, int order) const;
};

/// Height function h of a graph curve (s, h(s)).
struct HeightProfile {
  enum class Kind { Polynomial, Gaussian };
  Kind kind = Kind::Polynomial;
  /// Polynomial: coefficients; Gaussian: {amplitude, center, width}
  std::vector<double> params{0.0};

  static HeightProfile polynomial(std::vector<double> coeffs) { return {Kind::Polynomial, std::move(coeffs)}; }
  static HeightProfile gaussian(double amplitude, double center, double width) {
    return {Kind::Gaussian, {amplitude, center, width}};
  }

  double derivative(double s, int order) const;
};

class Curve {
 public:
  struct Line {
    Vector a;
    Vector b;
    SpeedProfile profile;
  };
  struct Circle {
    double r;
  };
  struct Graph {
    HeightProfile profile;
  };
  struct Sampled {
    Matrix values;  // (N+1) x n, row m at s = m / N
    double domain_start = 0.0;
    double domain_end = 1.0;
  };

  static Curve line(Vector a, Vector b, SpeedProfile f = SpeedProfile::constant(1.0));
  /// r (cos 2 pi s, sin 2 pi s) in the first two coordinates of R^n.
  static Curve circle(double r, int n = 2);
  /// (s, h(s)) in the first two coordinates of R^n.
  static Curve graph(HeightProfile h, int n = 2);
  /// Rows are points on a uniform grid over [domain_start, domain_end], stored
  /// after affine rescaling of the parameter to [0, 1].
  static Curve sampled(Matrix values, double domain_start = 0.0, double domain_end = 1.0);

  int dim() const { return dim_; }
  bool is_analytic() const { return !std::holds_alternative<Sampled>(gen_); }
  const auto& generator() const { return gen_; }
  const RigidTransform& transform() const { return transform_; }
  /// Grid intervals N of a sampled curve (0 for analytic curves).
  int sample_intervals() const;

  /// Analytic: exact.  Sampled: piecewise linear interpolation.
  Vector value(double s) const;
  /// Exact derivative of order >= 1; analytic curves only.
  Vector derivative(double s, int order) const;
  /// Point values at s_m = m / N.
  Matrix sample_values(int intervals) const;

  Curve transformed(const RigidTransform& t) const;

 private:
  using Generator = std::variant<Line, Circle, Graph, Sampled>;
  Curve(Generator gen, int dim);

  Generator gen_;
  int dim_ = 0;
  RigidTransform transform_;
};

/// d(s) = g c(s) + x
Curve apply_rigid(const RigidTransform& t, const Curve& c);

enum class CurveFormat { Csv, Json };

/// Picks the format from the file extension (.csv or .json).
CurveFormat format_for_path(const std::filesystem::path& path);

std::string curve_to_json(const Curve& c);
Curve curve_from_json(const std::string& text);

/// `s,x1,...,xn` with 17 significant digits; analytic curves are sampled on `intervals`.
std::string curve_to_csv(const Curve& c, int intervals = 100);
Curve curve_from_csv(const std::string& text);

Curve load_curve(const std::filesystem::path& path, CurveFormat format);
Curve load_curve(const std::filesystem::path& path);
void save_curve(const Curve& c, const std::filesystem::path& path, CurveFormat format, int intervals = 100);

}  // namespace jetreg
