#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "treefactor/curves.hpp"
#include "treefactor/dyadic_surface.hpp"
#include "treefactor/tree_factor.hpp"
#include "treefactor/winding.hpp"

namespace treefactor::io {

/// Curve CSV: header `t,x1,...,xd`, one sample per row, '.' decimal
/// separator, 17 significant digits on output. A curve whose first and last
/// points coincide bitwise is read back as closed.
SampledCurve read_curve_csv(std::istream& in);
SampledCurve read_curve_csv_file(const std::string& path);
void write_curve_csv(std::ostream& out, const SampledCurve& curve);
void write_curve_csv_file(const std::string& path, const SampledCurve& curve);

/// Square-field CSV: header `s,t,phi1,phi2` (optionally `phi3`), one grid
/// node per row on a full regular (2^depth + 1)^2 grid; any row order.
struct FieldCsv {
  Square domain;
  int depth = 0;
  std::vector<GridScalar> components;  // 2 or 3
};
FieldCsv read_field_csv(std::istream& in);
FieldCsv read_field_csv_file(const std::string& path);
void write_field_csv(std::ostream& out, const std::vector<const GridScalar*>& components);
void write_field_csv_file(const std::string& path, const SquareField& field);

SquareField to_square_field(const FieldCsv& csv);  // first two components

/// Winding field CSV: `row,col,defined,value`.
void write_winding_field_csv(std::ostream& out, const WindingField& field);
void write_winding_field_csv_file(const std::string& path, const WindingField& field);

/// Graph JSON:
/// {"vertices":[0..n-1], "edges":[[i,j,len],...], "phi":[[x,y,...],...], "C":1.0}
MetricGraphMap read_graph_json(std::istream& in);
MetricGraphMap read_graph_json_file(const std::string& path);
std::string graph_to_json(const MetricGraphMap& map);

std::string moments_to_json(const WindingMoments& m);
std::string report_to_json(const ConvergenceReport& r);
std::string young_result_to_json(const YoungResult& r);
std::string certificate_to_json(const PropertyTCertificate& c);
/// Tree JSON with classes, arcs, psi, phi_bar and a full d_T table for trees
/// of at most 500 classes.
std::string tree_to_json(const QuotientTree& t);

ConvergenceReport read_report_json(std::istream& in);
WindingMoments read_moments_json(std::istream& in);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace treefactor::io
