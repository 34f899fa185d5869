#include "jetreg/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace jetreg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double falling_factorial(int i, int d) {
  double r = 1.0;
  for (int j = 0; j < d; ++j) r *= static_cast<double>(i - j);
  return r;
}

double polynomial_derivative(const std::vector<double>& coeffs, double s, int order) {
  double acc = 0.0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= order; --i)
    acc = acc * s + coeffs[static_cast<std::size_t>(i)] * falling_factorial(i, order);
  return acc;
}

/// Probabilists' Hermite polynomials He_0..He_4.
double hermite(int d, double u) {
  switch (d) {
    case 0: return 1.0;
    case 1: return u;
    case 2: return u * u - 1.0;
    case 3: return u * u * u - 3.0 * u;
    case 4: return u * u * u * u - 6.0 * u * u + 3.0;
    default: fail(ErrorCode::UnsupportedOrder, "Gaussian profile supports derivatives up to order 4");
  }
}

}  // namespace

RigidTransform RigidTransform::identity(int n) { return {Rotation::identity(n), Vector::Zero(n)}; }

RigidTransform RigidTransform::after(const RigidTransform& inner) const {
  require(dim() == inner.dim(), ErrorCode::DimensionMismatch, "rigid transforms of different dimension");
  return {g * inner.g, g.matrix() * inner.x + x};
}

double SpeedProfile::derivative(double s, int order) const {
  switch (kind) {
    case Kind::Constant:
      if (order == 0) return params.at(0) * s;
      return order == 1 ? params.at(0) : 0.0;
    case Kind::Polynomial:
      return polynomial_derivative(params, s, order);
    case Kind::Sinusoidal: {
      const double v = params.at(0);
      const double eps = params.at(1);
      const double trig = std::pow(kTwoPi, order) * std::sin(kTwoPi * s + order * std::numbers::pi / 2.0);
      double base = 0.0;
      if (order == 0) base = v * s;
      if (order == 1) base = v;
      return base + eps * trig;
    }
  }
  return 0.0;
}

double HeightProfile::derivative(double s, int order) const {
  switch (kind) {
    case Kind::Polynomial:
      return polynomial_derivative(params, s, order);
    case Kind::Gaussian: {
      const double amp = params.at(0);
      const double center = params.at(1);
      const double width = params.at(2);
      const double u = (s - center) / width;
      const double sign = order % 2 == 0 ? 1.0 : -1.0;
      return amp * sign * hermite(order, u) * std::exp(-0.5 * u * u) / std::pow(width, order);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

Curve::Curve(Generator gen, int dim) : gen_(std::move(gen)), dim_(dim), transform_(RigidTransform::identity(dim)) {}

Curve Curve::line(Vector a, Vector b, SpeedProfile f) {
  require(a.size() >= 1 && a.size() == b.size(), ErrorCode::DimensionMismatch, "line needs a, b of equal dimension");
  switch (f.kind) {
    case SpeedProfile::Kind::Constant:
      require(f.params.size() == 1, ErrorCode::InvalidArgument, "constant profile takes {v}");
      require(f.params[0] > 0.0, ErrorCode::NonMonotoneProfile, "constant speed must be positive");
      break;
    case SpeedProfile::Kind::Sinusoidal:
      require(f.params.size() == 2, ErrorCode::InvalidArgument, "sinusoidal profile takes {v, eps}");
      require(std::abs(kTwoPi * f.params[1]) < f.params[0], ErrorCode::NonMonotoneProfile,
              "sinusoidal profile needs |2 pi eps| < v");
      break;
    case SpeedProfile::Kind::Polynomial:
      require(!f.params.empty(), ErrorCode::InvalidArgument, "polynomial profile needs coefficients");
      for (int i = 0; i <= 2000; ++i) {
        require(f.derivative(i / 2000.0, 1) > 0.0, ErrorCode::NonMonotoneProfile,
                "polynomial profile has f' <= 0 on [0, 1]");
      }
      break;
  }
  const int n = static_cast<int>(a.size());
  return Curve(Line{std::move(a), std::move(b), std::move(f)}, n);
}

Curve Curve::circle(double r, int n) {
  require(r > 0.0, ErrorCode::InvalidArgument, "circle radius must be positive");
  require(n >= 2, ErrorCode::DimensionMismatch, "circle needs n >= 2");
  return Curve(Circle{r}, n);
}

Curve Curve::graph(HeightProfile h, int n) {
  require(n >= 2, ErrorCode::DimensionMismatch, "graph needs n >= 2");
  if (h.kind == HeightProfile::Kind::Gaussian) {
    require(h.params.size() == 3 && h.params[2] > 0.0, ErrorCode::UnsupportedProfile,
            "gaussian profile takes {amplitude, center, width > 0}");
  } else {
    require(!h.params.empty(), ErrorCode::UnsupportedProfile, "polynomial profile needs coefficients");
  }
  return Curve(Graph{std::move(h)}, n);
}

Curve Curve::sampled(Matrix values, double domain_start, double domain_end) {
  require(values.rows() >= 2 && values.cols() >= 1, ErrorCode::GridTooCoarse, "sampled curve needs >= 2 points");
  require(domain_end > domain_start, ErrorCode::InvalidArgument, "empty parameter domain");
  const int n = static_cast<int>(values.cols());
  return Curve(Sampled{std::move(values), domain_start, domain_end}, n);
}

int Curve::sample_intervals() const {
  if (const auto* s = std::get_if<Sampled>(&gen_)) return static_cast<int>(s->values.rows()) - 1;
  return 0;
}

Vector Curve::derivative(double s, int order) const {
  require(order >= 0, ErrorCode::InvalidArgument, "negative derivative order");
  Vector raw = Vector::Zero(dim_);
  if (const auto* line = std::get_if<Line>(&gen_)) {
    raw = line->a * line->profile.derivative(s, order);
    if (order == 0) raw += line->b;
  } else if (const auto* circle = std::get_if<Circle>(&gen_)) {
    const double scale = circle->r * std::pow(kTwoPi, order);
    const double phase = kTwoPi * s + order * std::numbers::pi / 2.0;
    raw(0) = scale * std::cos(phase);
    raw(1) = scale * std::sin(phase);
  } else if (const auto* graph = std::get_if<Graph>(&gen_)) {
    raw(0) = order == 0 ? s : (order == 1 ? 1.0 : 0.0);
    raw(1) = graph->profile.derivative(s, order);
  } else {
    require(order == 0, ErrorCode::InvalidArgument, "exact derivatives need an analytic curve");
    return value(s);
  }
  if (order == 0) return transform_.apply(raw);
  return transform_.g.matrix() * raw;
}

Vector Curve::value(double s) const {
  if (const auto* sampled = std::get_if<Sampled>(&gen_)) {
    const auto& v = sampled->values;
    const int intervals = static_cast<int>(v.rows()) - 1;
    const double x = std::clamp(s, 0.0, 1.0) * intervals;
    const int m = std::min(static_cast<int>(std::floor(x)), intervals - 1);
    const double t = x - m;
    return ((1.0 - t) * v.row(m) + t * v.row(m + 1)).transpose();
  }
  return derivative(s, 0);
}

Matrix Curve::sample_values(int intervals) const {
  if (const auto* sampled = std::get_if<Sampled>(&gen_)) {
    require(intervals == sample_intervals(), ErrorCode::GridMismatch,
            "sampled curve has " + std::to_string(sample_intervals()) + " intervals, requested " +
                std::to_string(intervals));
    return sampled->values;
  }
  require(intervals >= 1, ErrorCode::GridTooCoarse, "need at least one interval");
  Matrix out(intervals + 1, dim_);
  for (int m = 0; m <= intervals; ++m) out.row(m) = value(static_cast<double>(m) / intervals).transpose();
  return out;
}

Curve Curve::transformed(const RigidTransform& t) const {
  require(t.dim() == dim_, ErrorCode::DimensionMismatch, "transform dimension differs from curve dimension");
  Curve out = *this;
  if (auto* sampled = std::get_if<Sampled>(&out.gen_)) {
    Matrix moved = sampled->values * t.g.matrix().transpose();
    moved.rowwise() += t.x.transpose();
    sampled->values = std::move(moved);
    return out;
  }
  out.transform_ = t.after(transform_);
  return out;
}

Curve apply_rigid(const RigidTransform& t, const Curve& c) { return c.transformed(t); }

}  // namespace jetreg
