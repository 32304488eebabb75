#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "entire/geometry.hpp"

namespace entire {

// Fundamental domains. All are scaled copies of a unit shape:
//   Rectangle          (0,R) x (0,aR), a >= 1
//   Equilateral        side R, base on the x-axis
//   RightTriangle3060  angles pi/2, pi/3, pi/6; hypotenuse R;
//                      corners Z=(0,0) [right angle], Y=(sqrt3/2 R, 0), X=(0, R/2)
//   RightTriangle4545  legs of length R along the axes
//   Strip              (0,R) x (-T,T), T a truncation of the infinite strip
//   Interval           [-R, R] (one-dimensional)
enum class Shape {
  Rectangle,
  Equilateral,
  RightTriangle3060,
  RightTriangle4545,
  Strip,
  Interval,
};

std::string shape_name(Shape s);
Shape shape_from_name(const std::string& name);

enum class EdgeCondition { Natural, DirichletZero };

// Cap-constraint region: a ball around a domain corner intersected with the
// domain. Sector radius is R/2, ball radius R/4.
enum class RegionKind { Sector, Ball };

struct CapRegion {
  RegionKind kind = RegionKind::Sector;
  int corner = 0;
  double cap = 0.25;

  double radius(double R) const { return kind == RegionKind::Sector ? R / 2 : R / 4; }
  std::string name(Shape shape) const;
};

struct DomainSpec {
  Shape shape = Shape::Rectangle;
  double R = 1.0;
  double aspect = 1.0;      // rectangle only
  double half_height = 0.0; // strip truncation T; <= 0 means the default 4R
  double h = 0.125;
  std::vector<EdgeCondition> edge_conditions; // per canonical edge; empty = all natural
  std::vector<CapRegion> constraint_regions;

  int edge_count() const;
  int corner_count() const;
  double strip_T() const { return half_height > 0 ? half_height : 4 * R; }
  void validate() const; // throws PreconditionError("invalid-spec") on violation

  DomainSpec& with_dirichlet_all();
  DomainSpec& with_dirichlet(std::initializer_list<int> edges);

  static DomainSpec rectangle(double R, double aspect, double h);
  static DomainSpec equilateral(double R, double h);
  static DomainSpec tri3060(double R, double h);
  static DomainSpec tri4545(double R, double h);
  static DomainSpec strip(double R, double T, double h);
  static DomainSpec interval(double R, double h);
};

// Corner ids follow the canonical vertex order of each shape; for the
// 30-60-90 triangle the paper's labels map as Z=0, Y=1, X=2.
int corner_id_from_label(Shape shape, const std::string& label);
std::string corner_label(Shape shape, int corner);

struct BoundaryEdge {
  int a = 0;
  int b = 0;       // a == b marks an interval endpoint
  int edge_id = 0; // canonical edge the segment lies on
  EdgeCondition cond = EdgeCondition::Natural;
};

// Per-triangle P1 geometry: gradients of the three barycentric basis
// functions and the (positive) area.
struct TriGeom {
  std::array<double, 3> gx{};
  std::array<double, 3> gy{};
  double area = 0;
};

struct Mesh {
  DomainSpec spec;
  int dim = 2;

  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles; // 2D shapes
  std::vector<std::array<int, 2>> segments;  // interval
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<double> vertex_weights; // lumped quadrature, sums to the area
  std::vector<char> dirichlet;        // per-vertex: lies on a DirichletZero edge
  std::vector<TriGeom> tri_geom;
  double area = 0;

  // structured-layout data for O(1) point location
  int nx = 0, ny = 0; // cells per direction (rect/strip), or cells (interval)
  double x0 = 0, y0 = 0, hx = 0, hy = 0;
  int ksub = 0;                         // triangle subdivision order
  Vec2 tri_origin{}, tri_e1{}, tri_e2{}; // master frame: p = origin + a*e1 + b*e2
  std::array<double, 4> tri_inv{};       // inverse of [e1 e2]

  std::size_t vertex_count() const { return vertices.size(); }
  int corner_vertex(int corner) const;
  Vec2 corner_position(int corner) const;
  Vec2 edge_midpoint(int edge) const;
  Vec2 centroid() const;

  bool contains(Vec2 p, double tol) const;
  // Piecewise-linear interpolation; p must lie inside (up to a small
  // tolerance; epsilon excursions are clamped to the boundary element).
  double interpolate(std::span<const double> values, Vec2 p) const;

  // Vertices within the region's radius of its corner.
  std::vector<int> region_vertices(const CapRegion& region) const;
};

Mesh build_mesh(const DomainSpec& spec);

} // namespace entire
