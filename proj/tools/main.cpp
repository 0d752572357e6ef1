// treefactor: numerical toolkit for deciding whether sampled maps factor
// through a tree. Subcommands cover Young integration, winding moments,
// dyadic surface integrals, quotient-tree construction, Heisenberg lifts and
// fixture generation.
//
// Exit codes: 0 success, 1 invalid input, 2 negative mathematical verdict
// (Property (T) violated / quotient is not a tree).

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "treefactor/errors.hpp"
#include "treefactor/fixtures.hpp"
#include "treefactor/heisenberg.hpp"
#include "treefactor/io.hpp"
#include "treefactor/parallel.hpp"
#include "treefactor/tree_factor.hpp"

namespace tf = treefactor;
using nlohmann::ordered_json;

namespace {

void emit(const std::string& output_path, const std::string& text) {
  if (output_path.empty())
    std::cout << text;
  else
    tf::io::write_text_file(output_path, text);
}

struct NamedF {
  std::function<double(tf::Vec2)> f;
  std::function<tf::Vec2(tf::Vec2)> df;
  std::function<double(tf::Vec3)> f3;
};

NamedF make_f(const std::string& name) {
  if (name == "one")
    return {[](tf::Vec2) { return 1.0; },
            [](tf::Vec2) { return tf::Vec2{0.0, 0.0}; },
            [](tf::Vec3) { return 1.0; }};
  if (name == "qx")
    return {[](tf::Vec2 q) { return q.x; },
            [](tf::Vec2) { return tf::Vec2{1.0, 0.0}; },
            [](tf::Vec3 q) { return q.x; }};
  if (name == "qy")
    return {[](tf::Vec2 q) { return q.y; },
            [](tf::Vec2) { return tf::Vec2{0.0, 1.0}; },
            [](tf::Vec3 q) { return q.y; }};
  if (name == "quad")
    return {[](tf::Vec2 q) { return 0.5 * (q.x * q.x + q.y * q.y); },
            [](tf::Vec2 q) { return q; },
            [](tf::Vec3 q) { return 0.5 * (q.x * q.x + q.y * q.y + q.z * q.z); }};
  if (name == "gauss")
    return {[](tf::Vec2 q) { return std::exp(-0.5 * (q.x * q.x + q.y * q.y)); },
            [](tf::Vec2 q) {
              const double e = std::exp(-0.5 * (q.x * q.x + q.y * q.y));
              return tf::Vec2{-q.x * e, -q.y * e};
            },
            [](tf::Vec3 q) {
              return std::exp(-0.5 * (q.x * q.x + q.y * q.y + q.z * q.z));
            }};
  throw std::invalid_argument("--f must be one of one,qx,qy,quad,gauss");
}

int run_young(const std::string& input, const std::string& output, double rtol) {
  const tf::SampledCurve curve = tf::io::read_curve_csv_file(input);
  if (curve.dim() != 2)
    throw std::invalid_argument("young expects a d=2 curve CSV (f = x1, g = x2)");
  tf::SampledFunction f, g;
  f.times = g.times = curve.times;
  for (const auto& p : curve.points) {
    f.values.push_back(p[0]);
    g.values.push_back(p[1]);
  }
  emit(output, tf::io::young_result_to_json(tf::young_integral(f, g, rtol)));
  return 0;
}

int run_winding(const std::string& input, const std::string& output,
                const std::string& field_output, double cell, double guard) {
  const tf::SampledCurve curve = tf::io::read_curve_csv_file(input);
  const tf::WindingField field = tf::winding_field(curve, cell, guard);
  if (!field_output.empty()) tf::io::write_winding_field_csv_file(field_output, field);
  emit(output, tf::io::moments_to_json(tf::winding_moments(field)));
  return 0;
}

int run_surface(const std::string& input, const std::string& output, int order,
                const std::string& fname, double rtol, double degree_cell) {
  const tf::SquareField field = tf::io::to_square_field(tf::io::read_field_csv_file(input));
  const NamedF nf = make_f(fname);
  const tf::ConvergenceReport rep =
      order == 2 ? tf::surface_integral_second_order(field, nf.f, nf.df, rtol)
                 : tf::surface_integral_first_order(field, nf.f, rtol);
  std::string text = tf::io::report_to_json(rep);
  if (degree_cell > 0.0) {
    const auto check = tf::degree_pairing_check(field, nf.f, degree_cell);
    ordered_json j = ordered_json::parse(text);
    j["degree_check"] = {{"surface_value", check.surface_value},
                         {"winding_value", check.winding_value},
                         {"residual", check.residual},
                         {"masked_area", check.masked_area}};
    text = j.dump(2) + "\n";
  }
  emit(output, text);
  return 0;
}

int run_tree(const std::string& input, const std::string& output, double epsilon) {
  const tf::MetricGraphMap map = tf::io::read_graph_json_file(input);
  try {
    const tf::QuotientTree tree = tf::build_quotient_tree(map, epsilon);
    emit(output, tf::io::tree_to_json(tree));
    return 0;
  } catch (const tf::NotATreeError& err) {
    ordered_json j;
    j["error"] = "not-a-tree";
    j["cycle"] = err.cycle;
    emit(output, j.dump(2) + "\n");
    return 2;
  }
}

int run_heis(const std::string& input, const std::string& output, double z0,
             const std::string& fname, double rtol) {
  std::ifstream probe(input);
  if (!probe) throw tf::ParseError("cannot open '" + input + "'", 0);
  std::string header;
  std::getline(probe, header);
  probe.close();

  if (header.rfind("s,", 0) == 0) {  // 3-component field -> square check
    const tf::io::FieldCsv csv = tf::io::read_field_csv_file(input);
    if (csv.components.size() != 3)
      throw std::invalid_argument("heis square check needs s,t,phi1,phi2,phi3");
    const NamedF nf = make_f(fname);
    const auto rep = tf::heisenberg_square_check(csv.components[0], csv.components[1],
                                                 csv.components[2], nf.f3);
    ordered_json j;
    j["r_xy"] = rep.r_xy;
    j["r_xz"] = rep.r_xz;
    j["r_yz"] = rep.r_yz;
    j["xy_levels"] = rep.xy_levels;
    j["xz_levels"] = rep.xz_levels;
    j["yz_levels"] = rep.yz_levels;
    emit(output, j.dump(2) + "\n");
    return 0;
  }

  const tf::SampledCurve curve = tf::io::read_curve_csv_file(input);
  if (curve.dim() == 2) {
    const tf::SampledCurve lift = tf::horizontal_lift(curve, z0);
    if (!output.empty()) tf::io::write_curve_csv_file(output, lift);
    ordered_json j;
    j["z_gain"] = lift.points.back()[2] - lift.points.front()[2];
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (curve.dim() == 3) {
    const auto res = tf::lifting_identity_residuals(curve, rtol);
    ordered_json j;
    j["r1"] = res.r1;
    j["r2"] = res.r2;
    j["lhs1"] = res.lhs1;
    j["rhs1"] = res.rhs1;
    j["lhs2"] = res.lhs2;
    j["rhs2"] = res.rhs2;
    emit(output, j.dump(2) + "\n");
    return 0;
  }
  throw std::invalid_argument("heis expects a d=2 curve, d=3 curve or 3-component field");
}

int run_check_t(const std::string& input, const std::string& cycles_path,
                const std::string& output, double cell, double rtol, int order) {
  const tf::MetricGraphMap map = tf::io::read_graph_json_file(input);
  std::vector<std::vector<int>> cycles;
  if (!cycles_path.empty()) {
    std::ifstream in(cycles_path);
    if (!in) throw tf::ParseError("cannot open '" + cycles_path + "'", 0);
    const auto j = ordered_json::parse(in);
    for (const auto& c : j.at("cycles"))
      cycles.push_back(c.get<std::vector<int>>());
  }
  const tf::PropertyTCertificate cert =
      tf::property_t_check(map, cycles, cell, rtol, order);
  emit(output, tf::io::certificate_to_json(cert));
  return cert.verdict == tf::PropertyTVerdict::violated ? 2 : 0;
}

int run_gen(const std::string& name, const std::string& output, int samples,
            double alpha, int level, unsigned seed, double radius, double cx,
            double cy, int loops, bool co_oriented, int count, double z0) {
  if (output.empty()) throw std::invalid_argument("gen requires --output");
  if (name == "circle") {
    tf::io::write_curve_csv_file(
        output, tf::fixtures::circle(samples, {cx, cy}, radius, loops));
  } else if (name == "figure-eight") {
    tf::io::write_curve_csv_file(output,
                                 tf::fixtures::figure_eight(samples, radius, co_oriented));
  } else if (name == "weierstrass") {
    tf::io::write_field_csv_file(output, tf::fixtures::weierstrass(alpha, level, seed));
  } else if (name == "star") {
    tf::io::write_text_file(output, tf::io::graph_to_json(tf::fixtures::star(count)));
  } else if (name == "cycle") {
    tf::io::write_text_file(output,
                            tf::io::graph_to_json(tf::fixtures::cycle_graph(count, radius)));
  } else if (name == "lifted-circle") {
    tf::io::write_curve_csv_file(
        output, tf::fixtures::lifted_circle(samples, {cx, cy}, radius, z0));
  } else {
    throw std::invalid_argument("unknown fixture '" + name + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treefactor: tree-factorization diagnostics for sampled maps"};
  app.require_subcommand(1);

  std::string input, output, field_output, cycles_path, fname = "one";
  std::string gen_name;
  double cell = 0.01, guard = -1.0, epsilon = 0.0, rtol = 1e-9, alpha = 0.6;
  double radius = 1.0, cx = 0.0, cy = 0.0, z0 = 0.0, degree_cell = 0.0;
  int order = 1, t_order = 2, level = 10, samples = 1024, loops = 1, count = 5,
      threads = 0;
  unsigned seed = 42;
  bool co_oriented = false;

  app.add_option("--threads", threads, "cap worker threads (0 = hardware)");

  auto* young = app.add_subcommand("young", "Young integral of a d=2 curve (f = x1, g = x2)");
  young->add_option("--input", input)->required();
  young->add_option("--output", output);
  young->add_option("--rtol", rtol);

  auto* winding = app.add_subcommand("winding", "winding field and moments of a closed planar curve");
  winding->add_option("--input", input)->required();
  winding->add_option("--output", output);
  winding->add_option("--field-output", field_output, "also write the field CSV");
  winding->add_option("--cell", cell)->required();
  winding->add_option("--guard", guard, "mask radius (default cell/2)");

  auto* surface = app.add_subcommand("surface", "dyadic surface integral of a sampled square field");
  surface->add_option("--input", input)->required();
  surface->add_option("--output", output);
  surface->add_option("--order", order)->check(CLI::IsMember({1, 2}));
  surface->add_option("--f", fname, "test function: one,qx,qy,quad,gauss");
  surface->add_option("--rtol", rtol);
  surface->add_option("--degree-cell", degree_cell,
                      "also run the winding-degree cross check at this pitch");

  auto* tree = app.add_subcommand("tree", "quotient tree of a metric graph map");
  tree->add_option("--input", input)->required();
  tree->add_option("--output", output);
  tree->add_option("--epsilon", epsilon, "class merge tolerance");

  auto* heis = app.add_subcommand("heis", "Heisenberg lift / lifting identities / square check");
  heis->add_option("--input", input)->required();
  heis->add_option("--output", output);
  heis->add_option("--z0", z0, "initial height for lifts");
  heis->add_option("--f", fname, "test function for the square check");
  heis->add_option("--rtol", rtol);

  auto* check = app.add_subcommand("check-t", "winding-moment certificate for Property (T)");
  check->add_option("--input", input)->required();
  check->add_option("--output", output);
  check->add_option("--cycles", cycles_path, "JSON {\"cycles\":[[v0,...,v0],...]}");
  check->add_option("--cell", cell)->required();
  check->add_option("--rtol", rtol);
  check->add_option("--order", t_order, "1: winding mass only; 2: with first moments")
      ->check(CLI::IsMember({1, 2}));

  auto* gen = app.add_subcommand("gen", "write a reproducible fixture");
  gen->add_option("--name", gen_name,
                  "circle,figure-eight,weierstrass,star,cycle,lifted-circle")
      ->required();
  gen->add_option("--output", output)->required();
  gen->add_option("--samples", samples);
  gen->add_option("--alpha", alpha);
  gen->add_option("--level", level, "grid depth for weierstrass")->check(CLI::Range(3, 14));
  gen->add_option("--seed", seed);
  gen->add_option("--radius", radius);
  gen->add_option("--center-x", cx);
  gen->add_option("--center-y", cy);
  gen->add_option("--loops", loops);
  gen->add_flag("--co-oriented", co_oriented, "co-oriented figure-eight lobes");
  gen->add_option("--count", count, "leaves (star) / vertices (cycle)");
  gen->add_option("--z0", z0);

  CLI11_PARSE(app, argc, argv);
  tf::worker_cap().store(threads);

  try {
    if (*young) return run_young(input, output, rtol);
    if (*winding) return run_winding(input, output, field_output, cell, guard);
    if (*surface) return run_surface(input, output, order, fname, rtol, degree_cell);
    if (*tree) return run_tree(input, output, epsilon);
    if (*heis) return run_heis(input, output, z0, fname, rtol);
    if (*check) return run_check_t(input, cycles_path, output, cell, rtol, t_order);
    if (*gen)
      return run_gen(gen_name, output, samples, alpha, level, seed, radius, cx, cy,
                     loops, co_oriented, count, z0);
  } catch (const tf::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
