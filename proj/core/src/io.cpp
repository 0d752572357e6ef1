#include "treefactor/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "treefactor/errors.hpp"

namespace treefactor::io {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

double parse_double(const std::string& field, int line) {
  const std::string t = trim(field);
  double v = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ParseError("bad numeric field '" + field + "'", line);
  return v;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing", 0);
  return out;
}

}  // namespace

SampledCurve read_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty curve CSV", 1);
  const auto header = split(trim(line), ',');
  if (header.size() < 2 || trim(header[0]) != "t")
    throw ParseError("curve CSV header must be t,x1,...,xd", 1);
  const std::size_t dim = header.size() - 1;

  SampledCurve curve;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto fields = split(t, ',');
    if (fields.size() != dim + 1)
      throw ParseError("expected " + std::to_string(dim + 1) + " fields", lineno);
    curve.times.push_back(parse_double(fields[0], lineno));
    Point p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = parse_double(fields[i + 1], lineno);
    curve.points.push_back(std::move(p));
  }
  if (curve.times.size() >= 2 && curve.points.front() == curve.points.back())
    curve.closed = true;
  curve.validate();
  return curve;
}

SampledCurve read_curve_csv_file(const std::string& path) {
  auto in = open_input(path);
  return read_curve_csv(in);
}

void write_curve_csv(std::ostream& out, const SampledCurve& curve) {
  out << "t";
  for (std::size_t i = 1; i <= curve.dim(); ++i) out << ",x" << i;
  out << "\n";
  for (std::size_t k = 0; k < curve.size(); ++k) {
    out << fmt(curve.times[k]);
    for (double v : curve.points[k]) out << ',' << fmt(v);
    out << "\n";
  }
}

void write_curve_csv_file(const std::string& path, const SampledCurve& curve) {
  auto out = open_output(path);
  write_curve_csv(out, curve);
}

FieldCsv read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty field CSV", 1);
  const auto header = split(trim(line), ',');
  if (header.size() < 4 || trim(header[0]) != "s" || trim(header[1]) != "t")
    throw ParseError("field CSV header must be s,t,phi1,phi2[,phi3]", 1);
  const std::size_t ncomp = header.size() - 2;
  if (ncomp > 3) throw ParseError("at most three field components", 1);

  std::vector<double> ss, ts;
  std::vector<std::array<double, 5>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto fields = split(t, ',');
    if (fields.size() != ncomp + 2)
      throw ParseError("expected " + std::to_string(ncomp + 2) + " fields", lineno);
    std::array<double, 5> row{};
    for (std::size_t i = 0; i < fields.size(); ++i) row[i] = parse_double(fields[i], lineno);
    ss.push_back(row[0]);
    ts.push_back(row[1]);
    rows.push_back(row);
  }

  auto axis = [&](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto s_axis = axis(ss);
  const auto t_axis = axis(ts);
  if (s_axis.size() != t_axis.size() || s_axis.size() < 3)
    throw ParseError("field grid must be square with (2^depth + 1) nodes per side", 0);
  const std::size_t n = s_axis.size();
  if (rows.size() != n * n) throw ParseError("field grid is not complete", 0);
  int depth = 0;
  while ((std::size_t(1) << depth) + 1 < n) ++depth;
  if ((std::size_t(1) << depth) + 1 != n)
    throw ParseError("field grid side must be 2^depth + 1 nodes", 0);

  const double step = (s_axis.back() - s_axis.front()) / double(n - 1);
  const double side_t = (t_axis.back() - t_axis.front()) / double(n - 1);
  if (std::abs(step - side_t) > 1e-9 * std::max(std::abs(step), std::abs(side_t)))
    throw ParseError("field grid must have equal spacing in s and t", 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(s_axis[i] - (s_axis.front() + step * double(i))) > 1e-9 * step ||
        std::abs(t_axis[i] - (t_axis.front() + step * double(i))) > 1e-9 * step)
      throw ParseError("field grid spacing is not uniform", 0);
  }

  FieldCsv out;
  out.depth = depth;
  out.domain = Square{{s_axis.front(), t_axis.front()}, step * double(n - 1)};
  out.components.resize(ncomp);
  for (auto& g : out.components) {
    g.s0 = s_axis.front();
    g.t0 = t_axis.front();
    g.step = step;
    g.ncols = static_cast<int>(n);
    g.nrows = static_cast<int>(n);
    g.values.assign(n * n, 0.0);
  }
  std::vector<char> seen(n * n, 0);
  for (const auto& row : rows) {
    const auto col = static_cast<std::size_t>(std::lround((row[0] - s_axis.front()) / step));
    const auto r = static_cast<std::size_t>(std::lround((row[1] - t_axis.front()) / step));
    if (col >= n || r >= n) throw ParseError("field node off the grid", 0);
    if (seen[r * n + col]) throw ParseError("duplicate field node", 0);
    seen[r * n + col] = 1;
    for (std::size_t cidx = 0; cidx < ncomp; ++cidx)
      out.components[cidx].values[r * n + col] = row[2 + cidx];
  }
  return out;
}

FieldCsv read_field_csv_file(const std::string& path) {
  auto in = open_input(path);
  return read_field_csv(in);
}

void write_field_csv(std::ostream& out, const std::vector<const GridScalar*>& components) {
  const GridScalar& g = *components.front();
  out << "s,t";
  for (std::size_t i = 1; i <= components.size(); ++i) out << ",phi" << i;
  out << "\n";
  for (int r = 0; r < g.nrows; ++r)
    for (int c = 0; c < g.ncols; ++c) {
      out << fmt(g.s_of(c)) << ',' << fmt(g.t_of(r));
      for (const auto* comp : components) out << ',' << fmt(comp->at(r, c));
      out << "\n";
    }
}

void write_field_csv_file(const std::string& path, const SquareField& field) {
  auto out = open_output(path);
  write_field_csv(out, {&field.phi1, &field.phi2});
}

SquareField to_square_field(const FieldCsv& csv) {
  if (csv.components.size() < 2)
    throw ParseError("square field needs two components", 0);
  return SquareField::from_samples(csv.domain, csv.depth, csv.components[0].values,
                                   csv.components[1].values);
}

void write_winding_field_csv(std::ostream& out, const WindingField& field) {
  out << "row,col,defined,value\n";
  for (int r = 0; r < field.nrows; ++r)
    for (int c = 0; c < field.ncols; ++c)
      out << r << ',' << c << ',' << (field.is_defined(r, c) ? 1 : 0) << ','
          << field.value(r, c) << "\n";
}

void write_winding_field_csv_file(const std::string& path, const WindingField& field) {
  auto out = open_output(path);
  write_winding_field_csv(out, field);
}

MetricGraphMap read_graph_json(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad JSON: ") + e.what(), 0);
  }
  MetricGraphMap map;
  if (!j.contains("vertices") || !j.contains("edges") || !j.contains("phi"))
    throw ParseError("graph JSON needs vertices, edges and phi", 0);
  const auto& vs = j["vertices"];
  map.vertex_count = static_cast<int>(vs.size());
  for (int i = 0; i < map.vertex_count; ++i)
    if (vs[i].get<int>() != i)
      throw ParseError("graph vertices must be 0..n-1 in order", 0);
  for (const auto& e : j["edges"]) {
    if (e.size() != 3) throw ParseError("edges must be [i, j, length] triples", 0);
    map.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    map.edge_lengths.push_back(e[2].get<double>());
  }
  for (const auto& p : j["phi"]) {
    Point pt;
    for (const auto& v : p) pt.push_back(v.get<double>());
    map.phi.push_back(std::move(pt));
  }
  map.quasi_convexity_C = j.value("C", 1.0);
  map.validate();
  return map;
}

MetricGraphMap read_graph_json_file(const std::string& path) {
  auto in = open_input(path);
  return read_graph_json(in);
}

std::string graph_to_json(const MetricGraphMap& map) {
  json j;
  j["vertices"] = json::array();
  for (int i = 0; i < map.vertex_count; ++i) j["vertices"].push_back(i);
  j["edges"] = json::array();
  for (std::size_t e = 0; e < map.edges.size(); ++e)
    j["edges"].push_back({map.edges[e][0], map.edges[e][1], map.edge_lengths[e]});
  j["phi"] = map.phi;
  j["C"] = map.quasi_convexity_C;
  return j.dump(2) + "\n";
}

std::string moments_to_json(const WindingMoments& m) {
  json j;
  j["m00"] = m.m00;
  j["m10"] = m.m10;
  j["m01"] = m.m01;
  j["masked_area"] = m.masked_area;
  j["pos_mass"] = m.pos_mass;
  j["neg_mass"] = m.neg_mass;
  if (m.pos_center) j["pos_center"] = {m.pos_center->x, m.pos_center->y};
  if (m.neg_center) j["neg_center"] = {m.neg_center->x, m.neg_center->y};
  return j.dump(2) + "\n";
}

std::string report_to_json(const ConvergenceReport& r) {
  json j;
  j["levels"] = json::array();
  for (std::size_t i = 0; i < r.values.size(); ++i) j["levels"].push_back(i);
  j["values"] = r.values;
  j["diffs"] = r.diffs;
  j["fitted_rate"] = r.fitted_rate;
  j["converged"] = r.converged;
  return j.dump(2) + "\n";
}

std::string young_result_to_json(const YoungResult& r) {
  json j;
  j["value"] = r.value;
  j["levels"] = r.levels;
  j["tail_bound"] = r.tail_bound;
  return j.dump(2) + "\n";
}

std::string certificate_to_json(const PropertyTCertificate& c) {
  json j;
  j["verdict"] = c.verdict == PropertyTVerdict::violated ? "violated"
                                                         : "holds_up_to_tolerance";
  if (c.verdict == PropertyTVerdict::violated) {
    j["witness"] = c.witness;
    json m;
    m["m00"] = c.moments.m00;
    m["m10"] = c.moments.m10;
    m["m01"] = c.moments.m01;
    m["masked_area"] = c.moments.masked_area;
    j["moments"] = m;
  }
  return j.dump(2) + "\n";
}

std::string tree_to_json(const QuotientTree& t) {
  json j;
  j["classes"] = t.classes;
  j["arcs"] = json::array();
  for (const auto& [a, b] : t.arcs) j["arcs"].push_back({a, b});
  j["psi"] = t.psi;
  j["phi_bar"] = t.phi_bar;
  if (t.class_count() <= 500) j["d_T"] = t.d_T_table();
  return j.dump(2) + "\n";
}

ConvergenceReport read_report_json(std::istream& in) {
  const json j = json::parse(in);
  ConvergenceReport r;
  r.values = j.at("values").get<std::vector<double>>();
  r.diffs = j.at("diffs").get<std::vector<double>>();
  r.fitted_rate = j.at("fitted_rate").get<double>();
  r.converged = j.at("converged").get<bool>();
  return r;
}

WindingMoments read_moments_json(std::istream& in) {
  const json j = json::parse(in);
  WindingMoments m;
  m.m00 = j.at("m00").get<double>();
  m.m10 = j.at("m10").get<double>();
  m.m01 = j.at("m01").get<double>();
  m.masked_area = j.at("masked_area").get<double>();
  m.pos_mass = j.value("pos_mass", 0.0);
  m.neg_mass = j.value("neg_mass", 0.0);
  if (j.contains("pos_center"))
    m.pos_center = Vec2{j["pos_center"][0].get<double>(), j["pos_center"][1].get<double>()};
  if (j.contains("neg_center"))
    m.neg_center = Vec2{j["neg_center"][0].get<double>(), j["neg_center"][1].get<double>()};
  return m;
}

void write_text_file(const std::string& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
}

}  // namespace treefactor::io
