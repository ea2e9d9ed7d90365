#include "toric/polytope.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "toric/errors.hpp"
#include "toric/rational_linalg.hpp"

namespace toric {

namespace {

std::string point_to_string(const RatVec& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ", ";
    out += to_string(x[i]);
  }
  return out + ")";
}

std::string normal_to_string(const std::vector<long long>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

// Enumerates k-subsets of {0, ..., n-1} in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// A nonzero direction d with <normal_k, d> >= 0 for all k is a recession
// direction, certifying unboundedness. The recession cone is nonzero iff the
// normal matrix is rank-deficient (a full line) or some (dim-1)-subset of
// normals has a one-dimensional kernel whose generator satisfies all the
// remaining inequalities (an extreme ray).
std::optional<RatVec> recession_direction(const std::vector<AffineFunctional>& facets,
                                          int dim) {
  const std::size_t n = static_cast<std::size_t>(dim);
  auto feasible = [&](const RatVec& d) {
    bool nonzero = false;
    for (const auto& x : d) nonzero = nonzero || x != 0;
    if (!nonzero) return false;
    for (const auto& f : facets) {
      Rational dot(0);
      for (std::size_t j = 0; j < n; ++j) dot += rational_of(f.normal[j]) * d[j];
      if (dot < 0) return false;
    }
    return true;
  };

  RatMat all;
  for (const auto& f : facets) {
    RatVec row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = rational_of(f.normal[j]);
    all.push_back(std::move(row));
  }
  if (matrix_rank(all) < dim) {
    // Rank-deficient normals: a kernel vector of the normal matrix is a full
    // line in the recession cone. Reduce to echelon form, set one free
    // variable to 1 and back-substitute.
    RatMat m = all;
    const std::size_t rows = m.size();
    std::vector<std::size_t> pivot_col;
    std::size_t pr = 0;
    for (std::size_t col = 0; col < n && pr < rows; ++col) {
      std::size_t sel = pr;
      while (sel < rows && m[sel][col] == 0) ++sel;
      if (sel == rows) continue;
      std::swap(m[sel], m[pr]);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == pr || m[r][col] == 0) continue;
        Rational factor = m[r][col] / m[pr][col];
        for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[pr][c];
      }
      pivot_col.push_back(col);
      ++pr;
    }
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::size_t free_col = 0;
    while (free_col < n && is_pivot[free_col]) ++free_col;
    RatVec d(n, Rational(0));
    d[free_col] = Rational(1);
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      d[pivot_col[r]] = -m[r][free_col] / m[r][pivot_col[r]];
    // Every normal is orthogonal to d, so d is always a valid certificate.
    return d;
  }

  if (dim == 1) {
    for (int sign : {1, -1}) {
      RatVec d{Rational(sign)};
      if (feasible(d)) return d;
    }
    return std::nullopt;
  }

  std::optional<RatVec> found;
  for_each_subset(facets.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
    if (found) return;
    RatMat m;
    for (std::size_t i : idx) {
      RatVec row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = rational_of(facets[i].normal[j]);
      m.push_back(std::move(row));
    }
    if (matrix_rank(m) != dim - 1) return;
    // One-dimensional kernel: solve [m; e_k] d = e_last for some unit row
    // that completes the rank.
    for (std::size_t k = 0; k < n; ++k) {
      RatMat sq = m;
      RatVec unit(n, Rational(0));
      unit[k] = Rational(1);
      sq.push_back(unit);
      RatVec rhs(n, Rational(0));
      rhs[n - 1] = Rational(1);
      auto sol = solve_linear(sq, rhs);
      if (!sol) continue;
      if (feasible(*sol)) { found = *sol; return; }
      for (auto& x : *sol) x = -x;
      if (feasible(*sol)) { found = *sol; return; }
      break;  // kernel is one-dimensional; both signs checked
    }
  });
  return found;
}

}  // namespace

Rational AffineFunctional::eval(const RatVec& x) const {
  Rational out = offset;
  for (std::size_t i = 0; i < normal.size(); ++i) out += rational_of(normal[i]) * x[i];
  return out;
}

double AffineFunctional::eval(std::span<const double> x) const {
  double out = to_double(offset);
  for (std::size_t i = 0; i < normal.size(); ++i)
    out += static_cast<double>(normal[i]) * x[i];
  return out;
}

AffineFunctional make_functional(std::vector<long long> normal, Rational offset,
                                 std::vector<std::string>* warnings) {
  const long long g = vector_gcd(normal);
  if (g == 0) throw InputError("facet normal is the zero vector");
  if (g > 1) {
    for (auto& x : normal) x /= g;
    offset /= rational_of(g);
    if (warnings)
      warnings->push_back("facet normal " + normal_to_string(normal) +
                          " was not primitive; divided by " + std::to_string(g));
  }
  return AffineFunctional{std::move(normal), std::move(offset)};
}

Rational Facet::sigma_volume() const {
  Rational total(0);
  for (const auto& s : simplices) total += s.measure_scale;
  return total;
}

std::string DelzantReport::summary() const {
  std::ostringstream os;
  os << (pass ? "PASS" : "FAIL") << " (" << entries.size() << " vertices)";
  for (const auto& e : entries) {
    os << "\n  vertex " << e.vertex << ": " << e.active_facets.size()
       << " active facets, det " << to_string(e.normal_det)
       << (e.unimodular ? "" : "  <- not unimodular");
  }
  return os.str();
}

std::vector<RatVec> enumerate_vertices(const std::vector<AffineFunctional>& facets,
                                       int dim) {
  if (dim < 1) throw InputError("polytope dimension must be positive");
  for (const auto& f : facets)
    if (static_cast<int>(f.normal.size()) != dim)
      throw InputError("facet normal arity does not match the dimension");

  if (auto d = recession_direction(facets, dim)) {
    throw GeometryError(GeometryError::Kind::unbounded,
                        "polytope is unbounded in direction " + point_to_string(*d));
  }

  const std::size_t n = static_cast<std::size_t>(dim);
  std::vector<RatVec> verts;
  for_each_subset(facets.size(), n, [&](const std::vector<std::size_t>& idx) {
    RatMat m;
    RatVec rhs;
    for (std::size_t i : idx) {
      RatVec row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = rational_of(facets[i].normal[j]);
      m.push_back(std::move(row));
      rhs.push_back(-facets[i].offset);
    }
    auto x = solve_linear(std::move(m), std::move(rhs));
    if (!x) return;
    for (const auto& f : facets)
      if (f.eval(*x) < 0) return;
    verts.push_back(std::move(*x));
  });

  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.empty())
    throw GeometryError(GeometryError::Kind::empty,
                        "facet system has no feasible vertex (empty polytope)");
  return verts;
}

DelzantPolytope DelzantPolytope::from_facets(int dim,
                                             std::vector<AffineFunctional> facets,
                                             std::string name,
                                             std::vector<std::string> initial_warnings) {
  DelzantPolytope p;
  p.dim_ = dim;
  p.name_ = std::move(name);
  p.facets_ = std::move(facets);
  p.warnings_ = std::move(initial_warnings);

  p.vertices_ = enumerate_vertices(p.facets_, dim);
  if (affine_rank(p.vertices_) != dim)
    throw GeometryError(GeometryError::Kind::not_full_dimensional,
                        "polytope is not full-dimensional (affine rank " +
                            std::to_string(affine_rank(p.vertices_)) + " < " +
                            std::to_string(dim) + ")");

  p.incidence_.assign(p.facets_.size(), {});
  for (std::size_t k = 0; k < p.facets_.size(); ++k)
    for (std::size_t v = 0; v < p.vertices_.size(); ++v)
      if (p.facets_[k].eval(p.vertices_[v]) == 0) p.incidence_[k].push_back(v);

  for (std::size_t k = 0; k < p.facets_.size(); ++k)
    if (p.incidence_[k].empty())
      p.warnings_.push_back("facet " + std::to_string(k) +
                            " supports no vertex (redundant constraint)");

  // Delzant report.
  p.delzant_.pass = true;
  for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
    DelzantReport::VertexEntry entry;
    entry.vertex = v;
    for (std::size_t k = 0; k < p.facets_.size(); ++k)
      if (p.facets_[k].eval(p.vertices_[v]) == 0) entry.active_facets.push_back(k);
    if (static_cast<int>(entry.active_facets.size()) == dim) {
      RatMat m;
      for (std::size_t k : entry.active_facets) {
        RatVec row(dim);
        for (int j = 0; j < dim; ++j) row[j] = rational_of(p.facets_[k].normal[j]);
        m.push_back(std::move(row));
      }
      entry.normal_det = determinant(std::move(m));
      entry.unimodular = entry.normal_det == 1 || entry.normal_det == -1;
    } else {
      entry.normal_det = Rational(0);
      entry.unimodular = false;
    }
    p.delzant_.pass = p.delzant_.pass && entry.unimodular;
    p.delzant_.entries.push_back(std::move(entry));
  }
  if (!p.delzant_.pass)
    p.warnings_.push_back(
        "polytope fails the Delzant condition; integration and bounds remain "
        "well-defined but do not correspond to a smooth toric metric");

  // Fan triangulation of the interior from the lexicographically smallest
  // vertex (vertex 0 after sorting).
  std::vector<std::size_t> all_ids(p.vertices_.size());
  for (std::size_t i = 0; i < all_ids.size(); ++i) all_ids[i] = i;
  const auto tuples = p.triangulate_face(all_ids, dim, {}, 0);
  for (const auto& t : tuples) {
    Simplex s;
    s.dim = dim;
    for (std::size_t id : t) s.verts.push_back(p.vertices_[id]);
    RatMat edges;
    for (int i = 1; i <= dim; ++i) {
      RatVec e(dim);
      for (int j = 0; j < dim; ++j) e[j] = s.verts[i][j] - s.verts[0][j];
      edges.push_back(std::move(e));
    }
    s.measure_scale = abs(determinant(std::move(edges))) / factorial(dim);
    if (s.measure_scale == 0) continue;
    p.volume_ += s.measure_scale;
    p.interior_.push_back(std::move(s));
  }

  // Facet decomposition with lattice-normalized (sigma) measure:
  // |det(e_1, ..., e_{n-1}, nu)| / (|nu|^2 (n-1)!).
  for (std::size_t k = 0; k < p.facets_.size(); ++k) {
    Facet facet;
    facet.facet_index = k;
    facet.functional = p.facets_[k];
    facet.vertex_ids = p.incidence_[k];
    std::vector<RatVec> pts;
    for (std::size_t id : facet.vertex_ids) pts.push_back(p.vertices_[id]);
    if (affine_rank(pts) == dim - 1) {
      const auto face_tuples =
          p.triangulate_face(facet.vertex_ids, dim - 1, {k},
                             facet.vertex_ids.empty() ? 0 : facet.vertex_ids.front());
      Rational nu_sq(0);
      for (long long c : p.facets_[k].normal) nu_sq += rational_of(c) * rational_of(c);
      for (const auto& t : face_tuples) {
        Simplex s;
        s.dim = dim - 1;
        for (std::size_t id : t) s.verts.push_back(p.vertices_[id]);
        RatMat m;
        for (int i = 1; i <= dim - 1; ++i) {
          RatVec e(dim);
          for (int j = 0; j < dim; ++j) e[j] = s.verts[i][j] - s.verts[0][j];
          m.push_back(std::move(e));
        }
        RatVec nu(dim);
        for (int j = 0; j < dim; ++j) nu[j] = rational_of(p.facets_[k].normal[j]);
        m.push_back(std::move(nu));
        s.measure_scale =
            abs(determinant(std::move(m))) / (nu_sq * factorial(dim - 1));
        if (s.measure_scale == 0) continue;
        p.boundary_measure_ += s.measure_scale;
        facet.simplices.push_back(std::move(s));
      }
    } else if (!facet.vertex_ids.empty()) {
      p.warnings_.push_back("facet " + std::to_string(k) +
                            " does not support an (n-1)-face; it carries zero "
                            "sigma measure");
    }
    p.facet_pieces_.push_back(std::move(facet));
  }

  return p;
}

std::vector<std::vector<std::size_t>> DelzantPolytope::triangulate_face(
    const std::vector<std::size_t>& face_ids, int d,
    const std::vector<std::size_t>& active, std::size_t apex) const {
  if (d == 0 || face_ids.size() == static_cast<std::size_t>(d) + 1)
    return {face_ids};

  std::vector<std::vector<std::size_t>> out;
  std::set<std::vector<std::size_t>> seen_subfaces;
  for (std::size_t k = 0; k < facets_.size(); ++k) {
    if (std::find(active.begin(), active.end(), k) != active.end()) continue;
    if (facets_[k].eval(vertices_[apex]) == 0) continue;
    std::vector<std::size_t> sub;
    for (std::size_t id : face_ids)
      if (facets_[k].eval(vertices_[id]) == 0) sub.push_back(id);
    if (sub.size() < static_cast<std::size_t>(d)) continue;
    std::vector<RatVec> pts;
    for (std::size_t id : sub) pts.push_back(vertices_[id]);
    if (affine_rank(pts) != d - 1) continue;
    if (!seen_subfaces.insert(sub).second) continue;
    std::vector<std::size_t> sub_active = active;
    sub_active.push_back(k);
    for (auto tuple : triangulate_face(sub, d - 1, sub_active, sub.front())) {
      tuple.insert(tuple.begin(), apex);
      out.push_back(std::move(tuple));
    }
  }
  return out;
}

std::vector<Simplex> DelzantPolytope::triangulate_interior_from(
    std::size_t apex_vertex) const {
  std::vector<std::size_t> all_ids(vertices_.size());
  for (std::size_t i = 0; i < all_ids.size(); ++i) all_ids[i] = i;
  std::vector<Simplex> out;
  for (const auto& t : triangulate_face(all_ids, dim_, {}, apex_vertex)) {
    Simplex s;
    s.dim = dim_;
    for (std::size_t id : t) s.verts.push_back(vertices_[id]);
    RatMat edges;
    for (int i = 1; i <= dim_; ++i) {
      RatVec e(dim_);
      for (int j = 0; j < dim_; ++j) e[j] = s.verts[i][j] - s.verts[0][j];
      edges.push_back(std::move(e));
    }
    s.measure_scale = abs(determinant(std::move(edges))) / factorial(dim_);
    if (s.measure_scale == 0) continue;
    out.push_back(std::move(s));
  }
  return out;
}

bool DelzantPolytope::contains(const RatVec& x) const {
  for (const auto& f : facets_)
    if (f.eval(x) < 0) return false;
  return true;
}

bool DelzantPolytope::contains(std::span<const double> x) const {
  for (const auto& f : facets_)
    if (f.eval(x) < 0.0) return false;
  return true;
}

DelzantReport check_delzant(const DelzantPolytope& p) { return p.delzant_report(); }

DelzantPolytope builtin_polytope(const std::string& name, const Rational& param) {
  std::vector<AffineFunctional> facets;
  if (name == "cpn" || name == "cpn_simplex") {
    if (param.get_den() != 1 || param < 1 || param > 8)
      throw InputError("cpn wants an integer dimension n with 1 <= n <= 8");
    const int n = static_cast<int>(param.get_num().get_si());
    for (int i = 0; i < n; ++i) {
      std::vector<long long> nu(n, 0);
      nu[i] = 1;
      facets.push_back(AffineFunctional{std::move(nu), Rational(1)});
    }
    facets.push_back(AffineFunctional{std::vector<long long>(n, -1), Rational(1)});
    return DelzantPolytope::from_facets(n, std::move(facets),
                                        "cpn:" + to_string(param));
  }
  if (name == "rectangle") {
    if (param < 1)
      throw InputError("rectangle parameter must satisfy a >= 1 (got " +
                       to_string(param) + ")");
    facets.push_back(AffineFunctional{{1, 0}, param});
    facets.push_back(AffineFunctional{{-1, 0}, param});
    facets.push_back(AffineFunctional{{0, 1}, 1 / param});
    facets.push_back(AffineFunctional{{0, -1}, 1 / param});
    return DelzantPolytope::from_facets(2, std::move(facets),
                                        "rectangle:" + to_string(param));
  }
  if (name == "trapezoid") {
    if (!(param > -1 && param < 2)) {
      std::string msg = "trapezoid parameter must lie in the open interval "
                        "(-1, 2) (got " + to_string(param) + ")";
      if (param == 2)
        msg += "; at a = 2 the facet a + x1 + x2 degenerates and the polytope "
               "collapses onto the cpn:2 simplex facet set";
      throw InputError(msg);
    }
    facets.push_back(AffineFunctional{{1, 0}, Rational(1)});
    facets.push_back(AffineFunctional{{0, 1}, Rational(1)});
    facets.push_back(AffineFunctional{{1, 1}, param});
    facets.push_back(AffineFunctional{{-1, -1}, Rational(1)});
    return DelzantPolytope::from_facets(2, std::move(facets),
                                        "trapezoid:" + to_string(param));
  }
  throw InputError("unknown builtin polytope '" + name +
                   "' (expected cpn, rectangle or trapezoid)");
}

DelzantPolytope parse_builtin(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw InputError("builtin spec '" + spec + "' must look like name:param");
  return builtin_polytope(spec.substr(0, colon),
                          parse_rational(spec.substr(colon + 1)));
}

DelzantPolytope dilate(const DelzantPolytope& p, const Rational& t) {
  if (t <= 0) throw InputError("dilation factor must be positive");
  std::vector<AffineFunctional> facets = p.facets();
  for (auto& f : facets) f.offset *= t;
  return DelzantPolytope::from_facets(p.dim(), std::move(facets), p.name());
}

DelzantPolytope polytope_from_json_text(const std::string& text,
                                        const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(origin + ": " + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("facets"))
      throw InputError(origin + ": expected an object with 'dim' and 'facets'");
    const int dim = doc.at("dim").get<int>();
    if (dim < 1) throw InputError(origin + ": 'dim' must be a positive integer");
    std::vector<std::string> warnings;
    std::vector<AffineFunctional> facets;
    std::size_t index = 0;
    for (const auto& fj : doc.at("facets")) {
      if (!fj.contains("normal") || !fj.contains("offset"))
        throw InputError(origin + ": facet " + std::to_string(index) +
                         " needs 'normal' and 'offset'");
      std::vector<long long> normal;
      for (const auto& c : fj.at("normal")) {
        if (!c.is_number_integer())
          throw InputError(origin + ": facet " + std::to_string(index) +
                           " has a non-integer normal entry");
        normal.push_back(c.get<long long>());
      }
      if (static_cast<int>(normal.size()) != dim)
        throw InputError(origin + ": facet " + std::to_string(index) +
                         " normal has arity " + std::to_string(normal.size()) +
                         ", expected " + std::to_string(dim));
      Rational offset;
      if (fj.at("offset").is_number_integer())
        offset = Rational(static_cast<long>(fj.at("offset").get<long long>()));
      else if (fj.at("offset").is_string())
        offset = parse_rational(fj.at("offset").get<std::string>());
      else
        throw InputError(origin + ": facet " + std::to_string(index) +
                         " offset must be an integer or a 'p/q' string");
      facets.push_back(make_functional(std::move(normal), std::move(offset), &warnings));
      ++index;
    }
    return DelzantPolytope::from_facets(dim, std::move(facets), origin,
                                        std::move(warnings));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(origin + ": " + e.what());
  }
}

DelzantPolytope load_polytope(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return polytope_from_json_text(buf.str(), path);
}

std::string polytope_to_json_text(const DelzantPolytope& p) {
  nlohmann::json doc;
  doc["dim"] = p.dim();
  doc["facets"] = nlohmann::json::array();
  for (const auto& f : p.facets()) {
    nlohmann::json fj;
    fj["normal"] = f.normal;
    fj["offset"] = to_string(f.offset);
    doc["facets"].push_back(std::move(fj));
  }
  return doc.dump(2);
}

}  // namespace toric
