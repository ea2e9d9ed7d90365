#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "toric/rational.hpp"

namespace toric {

/// A facet-defining function psi(x) = <normal, x> + offset with a primitive
/// integer normal; psi > 0 on the polytope interior.
struct AffineFunctional {
  std::vector<long long> normal;
  Rational offset;

  Rational eval(const RatVec& x) const;
  double eval(std::span<const double> x) const;
};

/// Reduces the normal to primitive form (dividing the offset accordingly);
/// appends a note to warnings when a reduction happened.
AffineFunctional make_functional(std::vector<long long> normal, Rational offset,
                                 std::vector<std::string>* warnings = nullptr);

/// d-simplex embedded in R^n with its volume under the relevant measure:
/// ordinary Lebesgue for d = n, integral Lebesgue (lattice-normalized) for
/// facet simplices.
struct Simplex {
  int dim;                     // intrinsic dimension d
  std::vector<RatVec> verts;   // d + 1 affinely independent points
  Rational measure_scale;      // volume under the relevant measure
};

struct Facet {
  std::size_t facet_index;
  AffineFunctional functional;
  std::vector<std::size_t> vertex_ids;
  std::vector<Simplex> simplices;  // (n-1)-simplices carrying sigma measure

  Rational sigma_volume() const;
};

/// Per-vertex unimodularity report: a polytope is Delzant when every vertex
/// has exactly dim active facets whose normal matrix has determinant +-1.
struct DelzantReport {
  struct VertexEntry {
    std::size_t vertex;
    std::vector<std::size_t> active_facets;
    Rational normal_det;  // 0 when the active count differs from dim
    bool unimodular;
  };
  std::vector<VertexEntry> entries;
  bool pass = false;

  std::string summary() const;
};

/// Bounded full-dimensional rational polytope given by facet functionals.
/// Vertices, incidence, the Delzant report, a fan triangulation of the
/// interior and the sigma-measured facet decomposition are all computed at
/// construction; instances are immutable afterwards and safe to share.
class DelzantPolytope {
 public:
  static DelzantPolytope from_facets(int dim, std::vector<AffineFunctional> facets,
                                     std::string name = {},
                                     std::vector<std::string> initial_warnings = {});

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<AffineFunctional>& facets() const { return facets_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  const std::vector<std::vector<std::size_t>>& incidence() const { return incidence_; }
  const DelzantReport& delzant_report() const { return delzant_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const std::vector<Simplex>& interior_simplices() const { return interior_; }
  const std::vector<Facet>& facet_decomposition() const { return facet_pieces_; }

  /// Fan triangulation anchored at an arbitrary vertex (the cached
  /// triangulation uses the lexicographically smallest); used to check
  /// triangulation independence.
  std::vector<Simplex> triangulate_interior_from(std::size_t apex_vertex) const;

  const Rational& volume() const { return volume_; }
  const Rational& boundary_measure() const { return boundary_measure_; }

  bool contains(const RatVec& x) const;
  bool contains(std::span<const double> x) const;

 private:
  DelzantPolytope() = default;

  std::vector<std::vector<std::size_t>> triangulate_face(
      const std::vector<std::size_t>& face_ids, int d,
      const std::vector<std::size_t>& active, std::size_t apex) const;

  int dim_ = 0;
  std::string name_;
  std::vector<AffineFunctional> facets_;
  std::vector<RatVec> vertices_;                    // sorted lexicographically
  std::vector<std::vector<std::size_t>> incidence_; // facet -> vertex ids
  DelzantReport delzant_;
  std::vector<std::string> warnings_;
  std::vector<Simplex> interior_;
  std::vector<Facet> facet_pieces_;
  Rational volume_;
  Rational boundary_measure_;
};

/// All points where dim facet functionals vanish simultaneously and every
/// functional is >= 0; exact, deduplicated, sorted lexicographically.
/// Throws GeometryError (with a certificate) when the facets do not bound a
/// nonempty polytope.
std::vector<RatVec> enumerate_vertices(const std::vector<AffineFunctional>& facets,
                                       int dim);

DelzantReport check_delzant(const DelzantPolytope& p);

/// The three model families this library ships with:
///   cpn(n)        simplex {1 + x_i >= 0, 1 - sum x_i >= 0}
///   rectangle(a)  {a +- x1 >= 0, 1/a +- x2 >= 0}, a >= 1
///   trapezoid(a)  {1 + x1, 1 + x2, a + x1 + x2, 1 - x1 - x2}, -1 < a < 2
DelzantPolytope builtin_polytope(const std::string& name, const Rational& param);

/// Parses "name:param" (e.g. "cpn:3", "rectangle:3/2").
DelzantPolytope parse_builtin(const std::string& spec);

/// Dilation x -> t x (t > 0): same normals, offsets scaled by t.
DelzantPolytope dilate(const DelzantPolytope& p, const Rational& t);

/// Reads the JSON polytope file format:
///   {"dim": n, "facets": [{"normal": [int, ...], "offset": "p/q"}, ...]}
DelzantPolytope polytope_from_json_text(const std::string& text,
                                        const std::string& origin = "<string>");
DelzantPolytope load_polytope(const std::string& path);
std::string polytope_to_json_text(const DelzantPolytope& p);

}  // namespace toric
