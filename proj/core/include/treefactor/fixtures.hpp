#pragma once

#include <cstdint>
#include <vector>

#include "treefactor/curves.hpp"
#include "treefactor/dyadic_surface.hpp"
#include "treefactor/tree_factor.hpp"

namespace treefactor::fixtures {

/// Circle of given radius about center, traversed counterclockwise `loops`
/// times with `samples` points per loop; first and last points coincide
/// bitwise.
SampledCurve circle(int samples = 1024, Vec2 center = {0.0, 0.0},
                    double radius = 1.0, int loops = 1);

/// Two lobes of radius r joined at the origin: the left lobe runs
/// counterclockwise, the right lobe clockwise (opposite orientations, zero
/// total winding mass) or counterclockwise when co_oriented is set.
SampledCurve figure_eight(int samples = 1024, double radius = 0.5,
                          bool co_oriented = false);

/// Truncated Weierstrass-type field on Q = [0, pi]^2:
///   phi(s, t) = sum_{k=0..depth-2} 2^{-alpha k} (sin(2^k s + c_k),
///                                                cos(2^k t + c_k)),
/// phases c_k = 2 pi u_k with u_k the raw mt19937(seed) 32-bit draws scaled
/// by 2^-32; bitwise reproducible for a given seed.
SquareField weierstrass(double alpha, int depth, std::uint32_t seed);

/// Star graph: center vertex 0 with `leaves` leaves at unit edge length,
/// mapped to the origin and distinct unit vectors.
MetricGraphMap star(int leaves = 5);

/// Cycle graph on n vertices mapped to a regular n-gon of given radius
/// (injective planar image with nonzero enclosed area).
MetricGraphMap cycle_graph(int n = 12, double radius = 1.0);

/// Horizontal lift of `circle(samples, center, radius)` started at z0; the
/// z gain per loop equals the polygon (shoelace) area.
SampledCurve lifted_circle(int samples = 8192, Vec2 center = {0.0, 0.0},
                           double radius = 1.0, double z0 = 0.0);

/// z-component completing (phi1, phi2) to a horizontal field: the grid is
/// traversed boustrophedon (row 0 left to right, row 1 right to left, ...)
/// and z accumulates the lift increments along that path.
GridScalar boustrophedon_lift(const GridScalar& phi1, const GridScalar& phi2,
                              double z0 = 0.0);

}  // namespace treefactor::fixtures
