#include "fk/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fk {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double distance(Vec2 a, Vec2 b) { return norm(b - a); }

GeneratorSpec::GeneratorSpec(std::string name, double rho, std::vector<Vec2> displacements)
    : name_(std::move(name)), rho_(rho), displacements_(std::move(displacements)) {
  const auto n = static_cast<double>(displacements_.size());
  if (!std::isfinite(rho_) || rho_ <= 1.0) {
    throw std::invalid_argument("generator '" + name_ + "': rho must be a finite number > 1");
  }
  if (displacements_.size() < 2) {
    throw std::invalid_argument("generator '" + name_ + "': needs at least two displacements");
  }
  if (n < rho_ - kSpecTolerance) {
    throw std::invalid_argument("generator '" + name_ + "': N < rho, the curve cannot span its parent");
  }
  Vec2 sum{};
  for (const Vec2 d : displacements_) {
    if (std::abs(norm(d) - 1.0) > kSpecTolerance) {
      throw std::invalid_argument("generator '" + name_ + "': displacements must have unit length");
    }
    sum = sum + d;
  }
  if (std::abs(sum.x - rho_) > kSpecTolerance || std::abs(sum.y) > kSpecTolerance) {
    throw std::invalid_argument("generator '" + name_ + "': displacements must sum to (rho, 0)");
  }
}

double similarity_dimension(const GeneratorSpec& spec) {
  return std::log(static_cast<double>(spec.segment_count())) / std::log(spec.rho());
}

std::optional<Builtin> parse_builtin(std::string_view name) {
  if (name == "line") return Builtin::line;
  if (name == "koch") return Builtin::koch;
  if (name == "peano") return Builtin::peano;
  if (name == "cesaro") return Builtin::cesaro;
  return std::nullopt;
}

GeneratorSpec builtin(Builtin which, double angle_deg) {
  switch (which) {
    case Builtin::line:
      return line_generator();
    case Builtin::koch:
      return koch_generator();
    case Builtin::peano:
      return peano_generator();
    case Builtin::cesaro:
      return cesaro_generator(angle_deg);
  }
  throw std::invalid_argument("unknown builtin generator");
}

GeneratorSpec line_generator() { return {"line", 3.0, {{1, 0}, {1, 0}, {1, 0}}}; }

// Bump on the positive-y side of the parent segment.
GeneratorSpec koch_generator() {
  const double h = std::sqrt(3.0) / 2.0;
  return {"koch", 3.0, {{1, 0}, {0.5, h}, {0.5, -h}, {1, 0}}};
}

// E N E S W S E N E: nine unit steps from (0,0) to (3,0).
GeneratorSpec peano_generator() {
  return {"peano",
          3.0,
          {{1, 0}, {0, 1}, {1, 0}, {0, -1}, {-1, 0}, {0, -1}, {1, 0}, {0, 1}, {1, 0}}};
}

GeneratorSpec cesaro_generator(double angle_deg) {
  if (!(angle_deg > 0.0 && angle_deg < 90.0)) {
    throw std::invalid_argument("cesaro angle must lie in the open interval (0, 90) degrees");
  }
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {"cesaro", 2.0 * (1.0 + c), {{1, 0}, {c, s}, {c, -s}, {1, 0}}};
}

void validate(const Polyline& poly) {
  if (poly.vertices.size() < 2) {
    throw std::invalid_argument("polyline needs at least two vertices");
  }
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    const Vec2 v = poly.vertices[i];
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw std::invalid_argument("polyline vertex " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && v == poly.vertices[i - 1]) {
      throw std::invalid_argument("polyline vertices " + std::to_string(i - 1) + " and " +
                                  std::to_string(i) + " coincide");
    }
  }
}

Polyline unit_segment(double length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("base length must be a positive finite number");
  }
  return {{{0.0, 0.0}, {length, 0.0}}, 0};
}

double arc_length(const Polyline& poly) {
  // Neumaier summation; level-10 curves have ~10^6 segments.
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 1; i < poly.vertices.size(); ++i) {
    const double len = distance(poly.vertices[i - 1], poly.vertices[i]);
    const double t = sum + len;
    if (std::abs(sum) >= std::abs(len)) {
      comp += (sum - t) + len;
    } else {
      comp += (len - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

namespace {

std::vector<Vec2> refine_once(const std::vector<Vec2>& in, std::span<const Vec2> prefix, double rho) {
  const std::size_t n = prefix.size() - 1;
  std::vector<Vec2> out;
  out.reserve((in.size() - 1) * n + 1);
  out.push_back(in.front());
  for (std::size_t s = 1; s < in.size(); ++s) {
    const Vec2 p = in[s - 1];
    const Vec2 q = in[s];
    const Vec2 e = (1.0 / rho) * (q - p);
    for (std::size_t i = 1; i < n; ++i) {
      const Vec2 a = prefix[i];
      out.push_back({p.x + a.x * e.x - a.y * e.y, p.y + a.x * e.y + a.y * e.x});
    }
    out.push_back(q);
  }
  return out;
}

}  // namespace

Polyline refine(const Polyline& base, const GeneratorSpec& spec, int level, std::size_t max_vertices) {
  validate(base);
  if (level < 0) {
    throw std::invalid_argument("refinement level must be >= 0");
  }

  const std::size_t n = spec.segment_count();
  std::size_t segments = base.vertices.size() - 1;
  for (int i = 0; i < level; ++i) {
    if (segments > (max_vertices - 1) / n) {
      throw std::length_error("refinement to level " + std::to_string(level) + " exceeds the cap of " +
                              std::to_string(max_vertices) + " vertices");
    }
    segments *= n;
  }

  std::vector<Vec2> prefix(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i] + spec.displacements()[i];
  }

  std::vector<Vec2> vertices = base.vertices;
  for (int i = 0; i < level; ++i) {
    vertices = refine_once(vertices, prefix, spec.rho());
  }
  return {std::move(vertices), base.level.value_or(0) + level};
}

}  // namespace fk
