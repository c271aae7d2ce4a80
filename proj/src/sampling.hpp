// Random configuration sampling over exact rationals: generic per-kind
// samplers plus constructive samplers that land on each relation's solution
// set (needed because the equality-type relations have measure zero).
#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "model.hpp"
#include "rational.hpp"

namespace qs::sampling {

struct Vec {
  Rat x, y;
};

inline Vec operator+(const Vec& a, const Vec& b) { return {a.x + b.x, a.y + b.y}; }
inline Vec operator-(const Vec& a, const Vec& b) { return {a.x - b.x, a.y - b.y}; }
inline Vec operator*(const Rat& k, const Vec& a) { return {k * a.x, k * a.y}; }

struct Rng {
  std::mt19937_64 g;
  explicit Rng(unsigned seed) : g(seed) {}

  long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }
  static Rat canon(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  Rat rat(long lo = -8, long hi = 8) { return canon(pick(lo, hi), pick(1, 4)); }
  Rat pos_rat(long hi = 6) { return canon(pick(1, hi), pick(1, 3)); }
  // rational point on the unit circle via the tangent half-angle map
  Vec unit() {
    Rat t = rat(-6, 6);
    Rat d = 1 + t * t;
    Vec u{(1 - t * t) / d, 2 * t / d};
    if (pick(0, 1)) u.x = -u.x;
    return u;
  }
  // in [0,1] with endpoints reachable
  Rat frac01() {
    long den = pick(1, 8);
    return canon(pick(0, den), den);
  }
};

inline Vec get_pt(const Assignment& a, const std::string& id) {
  return {a.at("x_" + id), a.at("y_" + id)};
}
inline Vec get_seg_a(const Assignment& a, const std::string& id) {
  return {a.at("xa_" + id), a.at("ya_" + id)};
}
inline Vec get_seg_b(const Assignment& a, const std::string& id) {
  return {a.at("xb_" + id), a.at("yb_" + id)};
}
inline void set_pt(Assignment& a, const std::string& id, const Vec& p) {
  a["x_" + id] = p.x;
  a["y_" + id] = p.y;
}

// counter-clockwise vertex list from the rectangle parameter block
inline std::vector<Vec> rect_corners(const Assignment& a, const std::string& id) {
  Vec p{a.at("x_" + id), a.at("y_" + id)};
  Vec v{a.at("vx_" + id), a.at("vy_" + id)};
  Vec vp{-v.y, v.x};
  Rat w = a.at("w_" + id), h = a.at("h_" + id);
  return {p, p + w * v, p + w * v + h * vp, p + h * vp};
}

void sample_object(Rng& rng, Assignment& a, const std::string& id, Kind k);

using TrueSampler = std::function<void(Rng&, Assignment&)>;

struct RelationSampler {
  std::string name;
  std::vector<Kind> kinds;
  TrueSampler make_true;  // may be null (relations of positive measure)
  bool quantified = false;  // encoding carries bound witness variables
};

// argument ids by position: a, b, c, d
std::vector<std::string> arg_ids(std::size_t n);

// one entry per relation/overload in the vocabulary
const std::vector<RelationSampler>& relation_samplers();

// lookup by name + argument kinds; nullptr when absent
const RelationSampler* find_sampler(const std::string& name, const std::vector<Kind>& kinds);

}  // namespace qs::sampling
