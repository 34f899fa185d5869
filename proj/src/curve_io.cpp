#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "jetreg/curves.hpp"

namespace jetreg {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) { fail(ErrorCode::MalformedFile, what); }

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const json& j, const char* field) {
  if (!j.is_array()) malformed(std::string(field) + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) malformed(std::string(field) + " must hold numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

std::vector<double> doubles_from_json(const json& j, const char* field) {
  const Vector v = vector_from_json(j, field);
  return {v.data(), v.data() + v.size()};
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

Matrix matrix_from_json(const json& j, const char* field) {
  if (!j.is_array() || j.empty()) malformed(std::string(field) + " must be a non-empty array of rows");
  const auto cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != cols) malformed(std::string(field) + " rows have different lengths");
    m.row(static_cast<Eigen::Index>(i)) = vector_from_json(j[i], field).transpose();
  }
  return m;
}

json speed_to_json(const SpeedProfile& f) {
  switch (f.kind) {
    case SpeedProfile::Kind::Constant: return {{"kind", "constant"}, {"v", f.params.at(0)}};
    case SpeedProfile::Kind::Polynomial: return {{"kind", "polynomial"}, {"coeffs", f.params}};
    case SpeedProfile::Kind::Sinusoidal:
      return {{"kind", "sinusoidal"}, {"v", f.params.at(0)}, {"eps", f.params.at(1)}};
  }
  return {};
}

SpeedProfile speed_from_json(const json& j) {
  const std::string kind = j.value("kind", "constant");
  if (kind == "constant") return SpeedProfile::constant(j.value("v", 1.0));
  if (kind == "polynomial") return SpeedProfile::polynomial(doubles_from_json(j.at("coeffs"), "coeffs"));
  if (kind == "sinusoidal") return SpeedProfile::sinusoidal(j.at("v").get<double>(), j.at("eps").get<double>());
  fail(ErrorCode::UnsupportedProfile, "unknown speed profile '" + kind + "'");
}

json height_to_json(const HeightProfile& h) {
  if (h.kind == HeightProfile::Kind::Gaussian)
    return {{"kind", "gaussian"}, {"amplitude", h.params.at(0)}, {"center", h.params.at(1)}, {"width", h.params.at(2)}};
  return {{"kind", "polynomial"}, {"coeffs", h.params}};
}

HeightProfile height_from_json(const json& j) {
  const std::string kind = j.value("kind", "polynomial");
  if (kind == "polynomial") return HeightProfile::polynomial(doubles_from_json(j.at("coeffs"), "coeffs"));
  if (kind == "gaussian")
    return HeightProfile::gaussian(j.at("amplitude").get<double>(), j.at("center").get<double>(),
                                   j.at("width").get<double>());
  fail(ErrorCode::UnsupportedProfile, "unknown height profile '" + kind + "'");
}

Curve parse_curve(const json& j) {
  if (!j.is_object() || !j.contains("kind")) malformed("curve JSON needs a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "sampled") {
    Matrix values = matrix_from_json(j.at("values"), "values");
    if (j.contains("n") && j.at("n").get<int>() != values.cols())
      fail(ErrorCode::DimensionMismatch, "\"n\" does not match the sample width");
    double a = 0.0;
    double b = 1.0;
    if (j.contains("domain")) {
      a = j.at("domain").at(0).get<double>();
      b = j.at("domain").at(1).get<double>();
    }
    return Curve::sampled(std::move(values), a, b);
  }
  const json params = j.value("params", json::object());
  Curve c = [&] {
    if (kind == "line") {
      Vector a = vector_from_json(params.at("a"), "a");
      Vector b = params.contains("b") ? vector_from_json(params.at("b"), "b") : Vector::Zero(a.size());
      SpeedProfile f = params.contains("profile") ? speed_from_json(params.at("profile")) : SpeedProfile::constant(1.0);
      return Curve::line(std::move(a), std::move(b), std::move(f));
    }
    if (kind == "circle") return Curve::circle(params.at("r").get<double>(), params.value("n", 2));
    if (kind == "graph") return Curve::graph(height_from_json(params.at("profile")), params.value("n", 2));
    fail(ErrorCode::UnsupportedProfile, "unknown curve kind '" + kind + "'");
  }();
  if (j.contains("transform")) {
    const json& t = j.at("transform");
    RigidTransform rt{Rotation::from_matrix(matrix_from_json(t.at("g"), "g"), 1e-10), vector_from_json(t.at("x"), "x")};
    if (rt.x.size() != rt.g.dim()) fail(ErrorCode::DimensionMismatch, "transform g and x differ in dimension");
    c = c.transformed(rt);
  }
  return c;
}

json curve_json(const Curve& c) {
  json out;
  std::visit(
      [&](const auto& gen) {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, Curve::Sampled>) {
          out["kind"] = "sampled";
          out["n"] = c.dim();
          out["values"] = matrix_to_json(gen.values);
          if (gen.domain_start != 0.0 || gen.domain_end != 1.0) out["domain"] = {gen.domain_start, gen.domain_end};
        } else if constexpr (std::is_same_v<T, Curve::Line>) {
          out["kind"] = "line";
          out["params"] = {{"a", vector_to_json(gen.a)}, {"b", vector_to_json(gen.b)}, {"profile", speed_to_json(gen.profile)}};
        } else if constexpr (std::is_same_v<T, Curve::Circle>) {
          out["kind"] = "circle";
          out["params"] = {{"r", gen.r}, {"n", c.dim()}};
        } else {
          out["kind"] = "graph";
          out["params"] = {{"profile", height_to_json(gen.profile)}, {"n", c.dim()}};
        }
      },
      c.generator());
  if (c.is_analytic()) {
    const RigidTransform& t = c.transform();
    const bool trivial = t.g.matrix().isIdentity(0.0) && t.x.isZero(0.0);
    if (!trivial) out["transform"] = {{"g", matrix_to_json(t.g.matrix())}, {"x", vector_to_json(t.x)}};
  }
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view tok, int line) {
  while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
  while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r')) tok.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    malformed("line " + std::to_string(line) + ": cannot parse '" + std::string(tok) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

CurveFormat format_for_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return CurveFormat::Csv;
  if (ext == ".json") return CurveFormat::Json;
  fail(ErrorCode::MalformedFile, "unknown curve file extension '" + ext + "'");
}

std::string curve_to_json(const Curve& c) { return curve_json(c).dump(); }

Curve curve_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_curve(j);
  } catch (const json::exception& e) {
    malformed(std::string("curve JSON: ") + e.what());
  }
}

std::string curve_to_csv(const Curve& c, int intervals) {
  const int n = c.dim();
  double a = 0.0;
  double b = 1.0;
  if (const auto* s = std::get_if<Curve::Sampled>(&c.generator())) {
    intervals = c.sample_intervals();
    a = s->domain_start;
    b = s->domain_end;
  }
  const Matrix values = c.sample_values(intervals);
  std::string out = "s";
  for (int i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
  out += '\n';
  for (int m = 0; m <= intervals; ++m) {
    const double s = a + (b - a) * static_cast<double>(m) / intervals;
    out += format_double(s);
    for (int i = 0; i < n; ++i) out += "," + format_double(values(m, i));
    out += '\n';
  }
  return out;
}

Curve curve_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) malformed("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  if (header.size() < 2 || header[0] != "s") malformed("CSV header must be s,x1,...,xn");
  const int n = static_cast<int>(header.size()) - 1;
  for (int i = 1; i <= n; ++i)
    if (header[static_cast<std::size_t>(i)] != "x" + std::to_string(i)) malformed("CSV header must be s,x1,...,xn");

  std::vector<double> s;
  std::vector<double> vals;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto toks = split(line);
    if (static_cast<int>(toks.size()) != n + 1)
      fail(ErrorCode::DimensionMismatch, "line " + std::to_string(lineno) + " has " + std::to_string(toks.size()) +
                                             " fields, expected " + std::to_string(n + 1));
    s.push_back(parse_double(toks[0], lineno));
    for (int i = 1; i <= n; ++i) vals.push_back(parse_double(toks[static_cast<std::size_t>(i)], lineno));
  }
  const auto rows = static_cast<int>(s.size());
  if (rows < 2) fail(ErrorCode::GridTooCoarse, "CSV needs at least two rows");

  const double a = s.front();
  const double b = s.back();
  const double h = (b - a) / (rows - 1);
  if (!(h > 0.0)) fail(ErrorCode::NonUniformGrid, "parameter values must increase");
  for (int m = 0; m < rows; ++m) {
    if (std::abs(s[static_cast<std::size_t>(m)] - (a + m * h)) > 1e-9 * std::max(1.0, std::abs(b - a)))
      fail(ErrorCode::NonUniformGrid, "row " + std::to_string(m + 1) + " is off the uniform grid");
  }
  Matrix values(rows, n);
  for (int m = 0; m < rows; ++m)
    for (int i = 0; i < n; ++i) values(m, i) = vals[static_cast<std::size_t>(m * n + i)];
  return Curve::sampled(std::move(values), a, b);
}

Curve load_curve(const std::filesystem::path& path, CurveFormat format) {
  const std::string text = read_file(path);
  return format == CurveFormat::Csv ? curve_from_csv(text) : curve_from_json(text);
}

Curve load_curve(const std::filesystem::path& path) { return load_curve(path, format_for_path(path)); }

void save_curve(const Curve& c, const std::filesystem::path& path, CurveFormat format, int intervals) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::MalformedFile, "cannot write " + path.string());
  out << (format == CurveFormat::Csv ? curve_to_csv(c, intervals) : curve_to_json(c) + "\n");
}

}  // namespace jetreg
