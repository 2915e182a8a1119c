#include "gagliardo/geometry.hpp"

#include "gagliardo/constants.hpp"
#include "gagliardo/directions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gagliardo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int shape_dimension(const Shape& s) {
  return std::visit(overloaded{[](const Interval&) { return 1; },
                               [](const Ball& b) { return static_cast<int>(b.center.size()); },
                               [](const Box& b) { return static_cast<int>(b.lo.size()); },
                               [](const GridMask& m) { return m.grid.dimension(); }},
                    s);
}

std::pair<Point, Point> shape_bbox(const Shape& s) {
  return std::visit(
      overloaded{
          [](const Interval& i) {
            return std::pair<Point, Point>{Point::Constant(1, i.a), Point::Constant(1, i.b)};
          },
          [](const Ball& b) {
            return std::pair<Point, Point>{b.center.array() - b.radius,
                                           b.center.array() + b.radius};
          },
          [](const Box& b) { return std::pair<Point, Point>{b.lo, b.hi}; },
          [](const GridMask& m) {
            const int n = m.grid.dimension();
            Eigen::VectorXi lo = Eigen::VectorXi::Constant(n, std::numeric_limits<int>::max());
            Eigen::VectorXi hi = Eigen::VectorXi::Constant(n, std::numeric_limits<int>::min());
            for (Eigen::Index i = 0; i < m.grid.size(); ++i) {
              if (!m.mask[static_cast<std::size_t>(i)]) continue;
              const Eigen::VectorXi c = m.grid.coords(i);
              lo = lo.cwiseMin(c);
              hi = hi.cwiseMax(c);
            }
            return std::pair<Point, Point>{
                m.grid.lo + m.grid.h * lo.cast<double>(),
                m.grid.lo + m.grid.h * (hi.array() + 1).matrix().cast<double>()};
          }},
      s);
}

bool mask_at(const GridMask& m, const Point& x, bool clamp) {
  const Grid& g = m.grid;
  Eigen::VectorXi c(g.dimension());
  for (int a = 0; a < g.dimension(); ++a) {
    const double f = std::floor((x[a] - g.lo[a]) / g.h);
    int k = static_cast<int>(std::clamp(f, -1.0, static_cast<double>(g.cells[a])));
    if (clamp) k = std::clamp(k, 0, g.cells[a] - 1);
    if (k < 0 || k >= g.cells[a]) return false;
    c[a] = k;
  }
  return m.mask[static_cast<std::size_t>(g.flat(c))] != 0;
}

bool shape_contains(const Shape& s, const Point& x) {
  return std::visit(
      overloaded{[&](const Interval& i) { return i.a < x[0] && x[0] < i.b; },
                 [&](const Ball& b) { return (x - b.center).squaredNorm() < b.radius * b.radius; },
                 [&](const Box& b) {
                   return (b.lo.array() < x.array()).all() && (x.array() < b.hi.array()).all();
                 },
                 [&](const GridMask& m) {
                   const Point hi = m.grid.hi();
                   if ((x.array() <= m.grid.lo.array()).any() || (x.array() >= hi.array()).any())
                     return false;
                   return mask_at(m, x, false);
                 }},
      s);
}

double shape_measure(const Shape& s) {
  return std::visit(
      overloaded{[](const Interval& i) { return i.b - i.a; },
                 [](const Ball& b) {
                   return alpha_n(static_cast<int>(b.center.size())) *
                          std::pow(b.radius, static_cast<double>(b.center.size()));
                 },
                 [](const Box& b) { return (b.hi - b.lo).prod(); },
                 [](const GridMask& m) {
                   const auto count = std::count_if(m.mask.begin(), m.mask.end(),
                                                    [](std::uint8_t v) { return v != 0; });
                   return static_cast<double>(count) * m.grid.cell_volume();
                 }},
      s);
}

// Parameter range of x + t*omega inside the open box (lo, hi); empty if lo >= hi.
Chord slab(const Point& lo, const Point& hi, const Point& x, const Point& omega) {
  double t0 = -kInf;
  double t1 = kInf;
  for (Eigen::Index a = 0; a < x.size(); ++a) {
    if (omega[a] == 0.0) {
      if (!(lo[a] < x[a] && x[a] < hi[a])) return {0.0, 0.0};
      continue;
    }
    double ta = (lo[a] - x[a]) / omega[a];
    double tb = (hi[a] - x[a]) / omega[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  if (!(t0 < t1)) return {0.0, 0.0};
  return {t0, t1};
}

void mask_chords(const GridMask& m, const Point& x, const Point& omega, std::vector<Chord>& out) {
  const Chord box = slab(m.grid.lo, m.grid.hi(), x, omega);
  if (!(box.lo < box.hi)) return;
  const double speed = omega.norm();
  const double dt = m.grid.h / (8.0 * speed);
  const double tol = 1e-6 * m.grid.h / speed;
  const long steps = std::max<long>(1, static_cast<long>(std::ceil((box.hi - box.lo) / dt)));
  const double step = (box.hi - box.lo) / static_cast<double>(steps);
  auto inside = [&](double t) { return mask_at(m, x + t * omega, true); };
  auto refine = [&](double a, double b) {
    // inside(a) != inside(b); shrink to the transition.
    const bool state_a = inside(a);
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (inside(mid) == state_a)
        a = mid;
      else
        b = mid;
    }
    return 0.5 * (a + b);
  };
  bool prev = inside(box.lo + 0.5 * step);
  double start = box.lo;
  double prev_t = box.lo + 0.5 * step;
  for (long k = 1; k < steps; ++k) {
    const double t = box.lo + (static_cast<double>(k) + 0.5) * step;
    const bool cur = inside(t);
    if (cur != prev) {
      const double edge = refine(prev_t, t);
      if (cur)
        start = edge;
      else
        out.push_back({start, edge});
      prev = cur;
    }
    prev_t = t;
  }
  if (prev) out.push_back({start, box.hi});
}

void shape_chords(const Shape& s, const Point& x, const Point& omega, std::vector<Chord>& out) {
  std::visit(overloaded{[&](const Interval& i) {
                          const Chord c = slab(Point::Constant(1, i.a), Point::Constant(1, i.b),
                                               x, omega);
                          if (c.lo < c.hi) out.push_back(c);
                        },
                        [&](const Ball& b) {
                          const Point d = x - b.center;
                          const double A = omega.squaredNorm();
                          const double B = omega.dot(d);
                          const double C = d.squaredNorm() - b.radius * b.radius;
                          const double disc = B * B - A * C;
                          if (disc <= 0.0) return;
                          const double root = std::sqrt(disc);
                          out.push_back({(-B - root) / A, (-B + root) / A});
                        },
                        [&](const Box& b) {
                          const Chord c = slab(b.lo, b.hi, x, omega);
                          if (c.lo < c.hi) out.push_back(c);
                        },
                        [&](const GridMask& m) { mask_chords(m, x, omega, out); }},
             s);
}

double shape_distance_to_boundary(const Shape& s, const Point& x) {
  return std::visit(
      overloaded{[&](const Interval& i) { return std::min(x[0] - i.a, i.b - x[0]); },
                 [&](const Ball& b) { return b.radius - (x - b.center).norm(); },
                 [&](const Box& b) {
                   return std::min((x - b.lo).minCoeff(), (b.hi - x).minCoeff());
                 },
                 [&](const GridMask& m) {
                   const int n = m.grid.dimension();
                   const DirectionRule rule = direction_rule(n, n == 2 ? 720 : 64);
                   double best = kInf;
                   std::vector<Chord> chords;
                   for (Eigen::Index k = 0; k < rule.size(); ++k) {
                     chords.clear();
                     mask_chords(m, x, rule.directions.col(k), chords);
                     for (const Chord& c : chords)
                       if (c.lo <= 0.0 && 0.0 <= c.hi) best = std::min({best, -c.lo, c.hi});
                   }
                   return best;
                 }},
      s);
}

struct Segment {
  double a;
  double b;
};

// One-dimensional parts as intervals on the real line.
std::vector<Segment> segments_1d(const Shape& s) {
  return std::visit(
      overloaded{[](const Interval& i) { return std::vector<Segment>{{i.a, i.b}}; },
                 [](const Ball& b) {
                   return std::vector<Segment>{{b.center[0] - b.radius, b.center[0] + b.radius}};
                 },
                 [](const Box& b) { return std::vector<Segment>{{b.lo[0], b.hi[0]}}; },
                 [](const GridMask& m) {
                   std::vector<Segment> out;
                   const int cells = m.grid.cells[0];
                   for (int k = 0; k < cells; ++k) {
                     if (!m.mask[static_cast<std::size_t>(k)]) continue;
                     int e = k;
                     while (e + 1 < cells && m.mask[static_cast<std::size_t>(e + 1)]) ++e;
                     out.push_back({m.grid.lo[0] + k * m.grid.h, m.grid.lo[0] + (e + 1) * m.grid.h});
                     k = e;
                   }
                   return out;
                 }},
      s);
}

double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

// |B(c, r) ∩ B(0, R)| for n = 2, 3.
double ball_lens(int n, double d, double r, double R) {
  const double pi = std::numbers::pi;
  if (d >= r + R) return 0.0;
  const double m = std::min(r, R);
  if (d <= std::abs(R - r)) return alpha_n(n) * std::pow(m, n);
  if (n == 2) {
    const double a1 = std::acos(std::clamp((d * d + r * r - R * R) / (2.0 * d * r), -1.0, 1.0));
    const double a2 = std::acos(std::clamp((d * d + R * R - r * r) / (2.0 * d * R), -1.0, 1.0));
    const double k = (-d + r + R) * (d + r - R) * (d - r + R) * (d + r + R);
    return r * r * a1 + R * R * a2 - 0.5 * std::sqrt(std::max(0.0, k));
  }
  return pi * (r + R - d) * (r + R - d) *
         (d * d + 2.0 * d * r - 3.0 * r * r + 2.0 * d * R + 6.0 * r * R - 3.0 * R * R) /
         (12.0 * d);
}

// |S ∩ B(0, R)| by rays from the origin: sum over directions of ∫ r^{n-1} dr on chords.
double polar_overlap(const Shape& s, int n, double R, int m) {
  const DirectionRule rule = direction_rule(n, m);
  const Point origin = Point::Zero(n);
  double total = 0.0;
  std::vector<Chord> chords;
  for (Eigen::Index k = 0; k < rule.size(); ++k) {
    chords.clear();
    shape_chords(s, origin, rule.directions.col(k), chords);
    double acc = 0.0;
    for (const Chord& c : chords) {
      const double a = std::max(0.0, c.lo);
      const double b = std::min(R, c.hi);
      if (b > a) acc += (std::pow(b, n) - std::pow(a, n)) / n;
    }
    total += rule.weights[k] * acc;
  }
  return total;
}

// |mask ∩ B(0, R)| by exact classification of whole cells and subsampling of
// cells that straddle the sphere.
double mask_overlap(const GridMask& mk, double R, int sub) {
  const Grid& g = mk.grid;
  const int n = g.dimension();
  const double R2 = R * R;
  double total = 0.0;
  const long sub_count = static_cast<long>(std::pow(sub, n));
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!mk.mask[static_cast<std::size_t>(i)]) continue;
    const Point lo = g.lo + g.h * g.coords(i).cast<double>();
    const Point hi = lo.array() + g.h;
    double near = 0.0;
    double far = 0.0;
    for (int a = 0; a < n; ++a) {
      const double c = std::clamp(0.0, lo[a], hi[a]);
      near += c * c;
      const double f = std::max(std::abs(lo[a]), std::abs(hi[a]));
      far += f * f;
    }
    if (near >= R2) continue;
    if (far <= R2) {
      total += g.cell_volume();
      continue;
    }
    long hits = 0;
    for (long j = 0; j < sub_count; ++j) {
      long rest = j;
      double r2 = 0.0;
      for (int a = 0; a < n; ++a) {
        const double t = lo[a] + g.h * ((rest % sub) + 0.5) / sub;
        rest /= sub;
        r2 += t * t;
      }
      if (r2 < R2) ++hits;
    }
    total += g.cell_volume() * static_cast<double>(hits) / static_cast<double>(sub_count);
  }
  return total;
}

bool shapes_overlap(const Shape& p, const Shape& q) {
  if (std::holds_alternative<GridMask>(p) || std::holds_alternative<GridMask>(q)) {
    const GridMask& m = std::holds_alternative<GridMask>(p) ? std::get<GridMask>(p)
                                                             : std::get<GridMask>(q);
    const Shape& other = std::holds_alternative<GridMask>(p) ? q : p;
    for (Eigen::Index i = 0; i < m.grid.size(); ++i)
      if (m.mask[static_cast<std::size_t>(i)] && shape_contains(other, m.grid.midpoint(i)))
        return true;
    return false;
  }
  const int n = shape_dimension(p);
  if (n == 1) {
    const Segment a = segments_1d(p).front();
    const Segment b = segments_1d(q).front();
    return overlap(a.a, a.b, b.a, b.b) > 0.0;
  }
  const auto as_ball = [](const Shape& s) -> const Ball* { return std::get_if<Ball>(&s); };
  const auto as_box = [](const Shape& s) -> const Box* { return std::get_if<Box>(&s); };
  if (as_ball(p) && as_ball(q))
    return (as_ball(p)->center - as_ball(q)->center).norm() <
           as_ball(p)->radius + as_ball(q)->radius;
  if (as_box(p) && as_box(q)) {
    const Box& a = *as_box(p);
    const Box& b = *as_box(q);
    for (int k = 0; k < n; ++k)
      if (!(overlap(a.lo[k], a.hi[k], b.lo[k], b.hi[k]) > 0.0)) return false;
    return true;
  }
  const Ball& ball = as_ball(p) ? *as_ball(p) : *as_ball(q);
  const Box& box = as_box(p) ? *as_box(p) : *as_box(q);
  const Point nearest = ball.center.cwiseMax(box.lo).cwiseMin(box.hi);
  return (nearest - ball.center).norm() < ball.radius;
}

void require_dimension(const Domain& d, const Point& x, const char* who) {
  if (x.size() != d.dimension())
    throw std::invalid_argument(std::string(who) + ": point has dimension " +
                                std::to_string(x.size()) + ", domain has " +
                                std::to_string(d.dimension()));
}

Point json_point(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("domain JSON: missing '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_number()) return Point::Constant(1, v.get<double>());
  const std::vector<double> xs = v.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

Domain::Domain(int dimension, std::vector<Shape> parts)
    : dimension_(dimension), parts_(std::move(parts)) {}

Domain Domain::interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("Domain::interval: need finite a < b");
  return Domain(1, {Interval{a, b}});
}

Domain Domain::ball(Point center, double radius) {
  if (center.size() < 1) throw std::invalid_argument("Domain::ball: empty center");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("Domain::ball: radius must be positive");
  const int n = static_cast<int>(center.size());
  return Domain(n, {Ball{std::move(center), radius}});
}

Domain Domain::box(Point lo, Point hi) {
  if (lo.size() < 1 || lo.size() != hi.size())
    throw std::invalid_argument("Domain::box: lo/hi dimension mismatch");
  if (!(lo.array() < hi.array()).all()) throw std::invalid_argument("Domain::box: need lo < hi");
  const int n = static_cast<int>(lo.size());
  return Domain(n, {Box{std::move(lo), std::move(hi)}});
}

Domain Domain::grid_mask(Grid grid, std::vector<std::uint8_t> mask) {
  grid.validate();
  if (static_cast<Eigen::Index>(mask.size()) != grid.size())
    throw std::invalid_argument("Domain::grid_mask: mask size does not match the grid");
  if (std::none_of(mask.begin(), mask.end(), [](std::uint8_t v) { return v != 0; }))
    throw std::invalid_argument("Domain::grid_mask: no cell is set");
  const int n = grid.dimension();
  return Domain(n, {GridMask{std::move(grid), std::move(mask)}});
}

Domain Domain::union_of(const std::vector<Domain>& members) {
  if (members.empty()) throw std::invalid_argument("Domain::union_of: no members");
  const int n = members.front().dimension();
  std::vector<Shape> parts;
  for (const Domain& m : members) {
    if (m.dimension() != n) throw std::invalid_argument("Domain::union_of: mixed dimensions");
    parts.insert(parts.end(), m.parts().begin(), m.parts().end());
  }
  Domain d(n, std::move(parts));
  d.validate_disjoint();
  return d;
}

Domain Domain::empty(int dimension) {
  if (dimension < 1) throw std::invalid_argument("Domain::empty: dimension must be >= 1");
  return Domain(dimension, {});
}

void Domain::validate_disjoint() const {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (shape_dimension(parts_[i]) != dimension_)
      throw std::invalid_argument("Domain: part dimension mismatch");
    for (std::size_t j = i + 1; j < parts_.size(); ++j)
      if (shapes_overlap(parts_[i], parts_[j]))
        throw std::invalid_argument("Domain::union_of: parts " + std::to_string(i) + " and " +
                                    std::to_string(j) + " overlap");
  }
}

Domain SymmetrizedBall::as_domain() const {
  if (empty()) return Domain::empty(dimension);
  if (dimension == 1) return Domain::interval(-radius, radius);
  return Domain::ball(Point::Zero(dimension), radius);
}

double measure(const Domain& d) {
  double total = 0.0;
  for (const Shape& s : d.parts()) total += shape_measure(s);
  return total;
}

SymmetrizedBall symmetrize(const Domain& d) {
  const double m = measure(d);
  const int n = d.dimension();
  if (!(m > 0.0)) return {n, 0.0};
  return {n, std::pow(m / alpha_n(n), 1.0 / n)};
}

bool contains(const Domain& d, const Point& x) {
  require_dimension(d, x, "contains");
  return std::any_of(d.parts().begin(), d.parts().end(),
                     [&](const Shape& s) { return shape_contains(s, x); });
}

std::pair<Point, Point> bounding_box(const Domain& d) {
  if (d.is_empty()) throw std::invalid_argument("bounding_box: empty domain");
  auto box = shape_bbox(d.parts().front());
  for (std::size_t i = 1; i < d.parts().size(); ++i) {
    const auto b = shape_bbox(d.parts()[i]);
    box.first = box.first.cwiseMin(b.first);
    box.second = box.second.cwiseMax(b.second);
  }
  return box;
}

std::vector<Chord> line_chords(const Domain& d, const Point& x, const Point& omega) {
  require_dimension(d, x, "line_chords");
  require_dimension(d, omega, "line_chords");
  if (!(omega.norm() > 0.0)) throw std::invalid_argument("line_chords: zero direction");
  std::vector<Chord> raw;
  for (const Shape& s : d.parts()) shape_chords(s, x, omega, raw);
  std::sort(raw.begin(), raw.end(), [](const Chord& a, const Chord& b) { return a.lo < b.lo; });
  std::vector<Chord> merged;
  for (const Chord& c : raw) {
    if (!merged.empty() && c.lo < merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, c.hi);
    else
      merged.push_back(c);
  }
  return merged;
}

double exit_distance(const Domain& d, const Point& x, const Point& omega) {
  require_dimension(d, x, "exit_distance");
  if (std::abs(omega.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("exit_distance: direction must be a unit vector");
  if (!contains(d, x)) throw std::invalid_argument("exit_distance: point is outside the domain");
  for (const Chord& c : line_chords(d, x, omega))
    if (c.lo <= 0.0 && 0.0 <= c.hi) return std::min(-c.lo, c.hi);
  throw std::runtime_error("exit_distance: no chord through the point (point within tolerance of the boundary)");
}

double distance_to_boundary(const Domain& d, const Point& x) {
  require_dimension(d, x, "distance_to_boundary");
  for (const Shape& s : d.parts())
    if (shape_contains(s, x)) return shape_distance_to_boundary(s, x);
  throw std::invalid_argument("distance_to_boundary: point is outside the domain");
}

bool is_centered_ball(const Domain& d) {
  if (d.parts().size() != 1) return false;
  const Shape& s = d.parts().front();
  if (const auto* i = std::get_if<Interval>(&s)) return i->a == -i->b;
  if (const auto* b = std::get_if<Ball>(&s)) return (b->center.array() == 0.0).all();
  return false;
}

SymDiffResult sym_diff_measure_detailed(const Domain& d) {
  if (d.is_empty() || is_centered_ball(d)) return {0.0, "exact"};
  const int n = d.dimension();
  const double R = symmetrize(d).radius;
  double inside = 0.0;
  std::string method = "exact";
  auto note = [&](const std::string& m) {
    if (method == "exact")
      method = m;
    else if (method.find(m) == std::string::npos)
      method += "; " + m;
  };
  for (const Shape& s : d.parts()) {
    if (n == 1) {
      for (const Segment& seg : segments_1d(s)) inside += overlap(seg.a, seg.b, -R, R);
      continue;
    }
    if (const auto* b = std::get_if<Ball>(&s); b != nullptr && n <= 3) {
      inside += ball_lens(n, b->center.norm(), b->radius, R);
    } else if (const auto* m = std::get_if<GridMask>(&s)) {
      inside += mask_overlap(*m, R, 64);
      note("cell subsampling 64^n per boundary cell");
    } else {
      const int rays = n == 2 ? 4096 : 256;
      inside += polar_overlap(s, n, R, rays);
      note("polar rays M=" + std::to_string(rays));
    }
  }
  return {std::max(0.0, 2.0 * (measure(d) - inside)), method};
}

double sym_diff_measure(const Domain& d) { return sym_diff_measure_detailed(d).value; }

Domain domain_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("shape"))
    throw std::invalid_argument("domain JSON: expected an object with a 'shape' field");
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "interval") return Domain::interval(j.at("a").get<double>(), j.at("b").get<double>());
  if (shape == "ball") return Domain::ball(json_point(j, "center"), j.at("radius").get<double>());
  if (shape == "box") return Domain::box(json_point(j, "lo"), json_point(j, "hi"));
  if (shape == "union") {
    std::vector<Domain> members;
    for (const auto& part : j.at("parts")) members.push_back(domain_from_json(part));
    return Domain::union_of(members);
  }
  if (shape == "gridmask") {
    Grid g;
    g.lo = json_point(j, "lo");
    g.h = j.at("h").get<double>();
    const std::vector<int> cells = j.at("cells").get<std::vector<int>>();
    g.cells = Eigen::Map<const Eigen::VectorXi>(cells.data(), static_cast<Eigen::Index>(cells.size()));
    std::vector<std::uint8_t> mask;
    for (const auto& v : j.at("mask")) mask.push_back(v.is_boolean() ? v.get<bool>() : v.get<int>() != 0);
    return Domain::grid_mask(std::move(g), std::move(mask));
  }
  throw std::invalid_argument("domain JSON: unknown shape '" + shape + "'");
}

nlohmann::json domain_to_json(const Domain& d) {
  auto one = [](const Shape& s) {
    return std::visit(
        overloaded{[](const Interval& i) {
                     return nlohmann::json{{"shape", "interval"}, {"a", i.a}, {"b", i.b}};
                   },
                   [](const Ball& b) {
                     return nlohmann::json{
                         {"shape", "ball"}, {"center", to_vec(b.center)}, {"radius", b.radius}};
                   },
                   [](const Box& b) {
                     return nlohmann::json{{"shape", "box"}, {"lo", to_vec(b.lo)}, {"hi", to_vec(b.hi)}};
                   },
                   [](const GridMask& m) {
                     std::vector<int> cells(m.grid.cells.data(),
                                            m.grid.cells.data() + m.grid.cells.size());
                     std::vector<int> mask(m.mask.begin(), m.mask.end());
                     return nlohmann::json{{"shape", "gridmask"}, {"lo", to_vec(m.grid.lo)},
                                           {"h", m.grid.h},      {"cells", cells},
                                           {"mask", mask}};
                   }},
        s);
  };
  if (d.is_empty()) return nlohmann::json{{"shape", "union"}, {"parts", nlohmann::json::array()}};
  if (d.parts().size() == 1) return one(d.parts().front());
  nlohmann::json parts = nlohmann::json::array();
  for (const Shape& s : d.parts()) parts.push_back(one(s));
  return nlohmann::json{{"shape", "union"}, {"parts", parts}};
}

}  // namespace gagliardo
