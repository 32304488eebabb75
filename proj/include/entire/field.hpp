#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "entire/mesh.hpp"

namespace entire {

// Nodal values of a scalar function on a Mesh.
struct Field {
  std::shared_ptr<const Mesh> mesh;
  std::vector<double> values;

  Field() = default;
  explicit Field(std::shared_ptr<const Mesh> m)
      : mesh(std::move(m)), values(mesh->vertex_count(), 0.0) {}
  Field(std::shared_ptr<const Mesh> m, std::vector<double> v)
      : mesh(std::move(m)), values(std::move(v)) {}

  double max_abs() const;
  // true iff every Dirichlet-tagged vertex holds exactly 0
  bool boundary_conforming() const;
};

// FIELDv1 plain-text format:
//   line 1: FIELDv1
//   line 2: shape=<name> R=<real> a=<real> h=<real>
//   line 3: nv=<int> nt=<int>
//   nv lines: x y value
//   nt lines: i j k  (0-based vertex indices)
// The mesh is rebuilt from the header on read and checked against the
// vertex/triangle records.
void write_field(std::ostream& os, const Field& f);
void write_field(const std::string& path, const Field& f);
Field read_field(std::istream& is);
Field read_field(const std::string& path);

} // namespace entire
