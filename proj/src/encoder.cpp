#include "encoder.hpp"

namespace qs {

namespace {

using F = Formula;

struct Vec2 {
  Poly x, y;
};

Poly pv(const SpatialObject& o, const std::string& slot) { return Poly::var(o.var(slot)); }

Vec2 point2(const SpatialObject& o) { return {pv(o, "x"), pv(o, "y")}; }
Vec2 seg_a(const SpatialObject& o) { return {pv(o, "xa"), pv(o, "ya")}; }
Vec2 seg_b(const SpatialObject& o) { return {pv(o, "xb"), pv(o, "yb")}; }

Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator*(const Poly& k, const Vec2& a) { return {k * a.x, k * a.y}; }

Poly dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// z-component of (b-a) x (p-a); positive means p left of the directed line ab.
Poly orient(const Vec2& a, const Vec2& b, const Vec2& p) {
  return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
}

F gt0(const Poly& p) { return F::mk_atom(-p, Cmp::Lt); }
F ge0(const Poly& p) { return F::mk_atom(-p, Cmp::Le); }
F lt0(const Poly& p) { return F::mk_atom(p, Cmp::Lt); }
F le0(const Poly& p) { return F::mk_atom(p, Cmp::Le); }
F eq0(const Poly& p) { return F::mk_atom(p, Cmp::Eq); }
F ne0(const Poly& p) { return F::mk_atom(p, Cmp::Ne); }

// i <= v <= j  \/  j <= v <= i
F in_interval(const Poly& v, const Poly& i, const Poly& j) {
  return F::mk_or({F::mk_and({le0(i - v), le0(v - j)}), F::mk_and({le0(j - v), le0(v - i)})});
}

// Rectangle frame: corner p, unit base direction v, v' = v rotated 90 degrees
// counter-clockwise, extents w (along v) and h (along v'). Also represents
// the quantified helper squares of the concentricity encodings.
struct Rect {
  Vec2 p, v;
  Poly w, h;
  Vec2 vp() const { return {-v.y, v.x}; }
  Vec2 vertex(int i) const {  // 1..4 counter-clockwise, vertex(5) == vertex(1)
    switch ((i - 1) % 4 + 1) {
      case 1: return p;
      case 2: return p + w * v;
      case 3: return p + w * v + h * vp();
      default: return p + h * vp();
    }
  }
  Vec2 center() const {
    Poly half = Poly::constant(Rat(1, 2));
    return p + half * (w * v) + half * (h * vp());
  }
};

Rect rect_of(const SpatialObject& o) {
  return Rect{{pv(o, "x"), pv(o, "y")}, {pv(o, "vx"), pv(o, "vy")}, pv(o, "w"), pv(o, "h")};
}

F inside_rect(const Vec2& q, const Rect& a) {
  Poly u = dot(q - a.p, a.v);
  Poly t = dot(q - a.p, a.vp());
  return F::mk_and({gt0(u), lt0(u - a.w), gt0(t), lt0(t - a.h)});
}

F intersects_rect(const Vec2& q, const Rect& a) {
  Poly u = dot(q - a.p, a.v);
  Poly t = dot(q - a.p, a.vp());
  return F::mk_and({ge0(u), le0(u - a.w), ge0(t), le0(t - a.h)});
}

F boundary_rect(const Vec2& q, const Rect& a) {
  return F::mk_and({intersects_rect(q, a), to_nnf(F::mk_not(inside_rect(q, a)))});
}

F outside_rect(const Vec2& q, const Rect& a) { return to_nnf(F::mk_not(intersects_rect(q, a))); }

F part_of_rect(const Rect& a, const Rect& b) {
  std::vector<F> cs;
  for (int i = 1; i <= 4; ++i) cs.push_back(intersects_rect(a.vertex(i), b));
  return F::mk_and(std::move(cs));
}

F equals_rect(const Rect& a, const Rect& b) {
  return F::mk_and({eq0(a.p.x - b.p.x), eq0(a.p.y - b.p.y), eq0(a.v.x - b.v.x),
                    eq0(a.v.y - b.v.y), eq0(a.w - b.w), eq0(a.h - b.h)});
}

F aligned_rect(const Rect& a, const Rect& b) {
  return F::mk_and({eq0(a.v.x - b.v.x), eq0(a.v.y - b.v.y)});
}

F concentric_rect(const Rect& a, const Rect& b) {
  Vec2 ca = a.center(), cb = b.center();
  return F::mk_and({eq0(ca.x - cb.x), eq0(ca.y - cb.y)});
}

F covertex_rect(const Rect& a, const Rect& b) {
  std::vector<F> shares;
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      Vec2 va = a.vertex(i), vb = b.vertex(j);
      shares.push_back(F::mk_and({eq0(va.x - vb.x), eq0(va.y - vb.y)}));
    }
  }
  return F::mk_and({aligned_rect(a, b), F::mk_or(std::move(shares))});
}

// All vertices of rect r on the right-or-collinear side of directed edge ab:
// the hyperplane-of-separation building block of discrete_from.
F rect_right_or_collinear(const Rect& r, const Vec2& a, const Vec2& b) {
  std::vector<F> cs;
  for (int i = 1; i <= 4; ++i) cs.push_back(le0(orient(a, b, r.vertex(i))));
  return F::mk_and(std::move(cs));
}

F discrete_from_rect(const Rect& a, const Rect& b) {
  std::vector<F> ds;
  for (int i = 1; i <= 4; ++i) {
    ds.push_back(rect_right_or_collinear(a, b.vertex(i), b.vertex(i + 1)));
    ds.push_back(rect_right_or_collinear(b, a.vertex(i), a.vertex(i + 1)));
  }
  return F::mk_or(std::move(ds));
}

// The conjuncts of partially_overlaps over three witness points (callers
// decide how the witnesses are bound).
F po_body(const Rect& a, const Rect& b, const Vec2& wi, const Vec2& wj, const Vec2& wk) {
  return F::mk_and({inside_rect(wi, a), inside_rect(wi, b), inside_rect(wj, a),
                    outside_rect(wj, b), outside_rect(wk, a), inside_rect(wk, b)});
}

F partially_overlaps_rect(const Rect& a, const Rect& b, FreshGen& fresh, int atom) {
  std::vector<std::string> names;
  std::vector<Vec2> w;
  for (int k = 0; k < 3; ++k) {
    std::string nx = fresh.var("w", atom, 2 * k);
    std::string ny = fresh.var("w", atom, 2 * k + 1);
    names.push_back(nx);
    names.push_back(ny);
    w.push_back(Vec2{Poly::var(nx), Poly::var(ny)});
  }
  return F::mk_exists(std::move(names), po_body(a, b, w[0], w[1], w[2]));
}

// Section-4.1 extent-of-intersection inequality w_I != h_I for aligned squares,
// with min/max eliminated by case-split disjunction (16 branches). Projections
// use a's frame.
F unequal_intersection_extents(const Rect& a, const Rect& b) {
  Poly u2a = dot(a.v, a.vertex(2)), u2b = dot(a.v, b.vertex(2));
  Poly u1a = dot(a.v, a.vertex(1)), u1b = dot(a.v, b.vertex(1));
  Poly t4a = dot(a.vp(), a.vertex(4)), t4b = dot(a.vp(), b.vertex(4));
  Poly t1a = dot(a.vp(), a.vertex(1)), t1b = dot(a.vp(), b.vertex(1));
  std::vector<F> branches;
  for (int mi = 0; mi < 2; ++mi) {
    Poly wmin = mi ? u2b : u2a;
    F gmin = mi ? le0(u2b - u2a) : le0(u2a - u2b);
    for (int ma = 0; ma < 2; ++ma) {
      Poly wmax = ma ? u1b : u1a;
      F gmax = ma ? ge0(u1b - u1a) : ge0(u1a - u1b);
      for (int ni = 0; ni < 2; ++ni) {
        Poly hmin = ni ? t4b : t4a;
        F hgmin = ni ? le0(t4b - t4a) : le0(t4a - t4b);
        for (int na = 0; na < 2; ++na) {
          Poly hmax = na ? t1b : t1a;
          F hgmax = na ? ge0(t1b - t1a) : ge0(t1a - t1b);
          branches.push_back(
              F::mk_and({gmin, gmax, hgmin, hgmax, ne0((wmin - wmax) - (hmin - hmax))}));
        }
      }
    }
  }
  return F::mk_or(std::move(branches));
}

F misaligned_or_nonsquare(const Rect& p, const Rect& a) {
  return F::mk_or(
      {ne0(p.v.x - a.v.x), ne0(p.v.y - a.v.y), unequal_intersection_extents(p, a)});
}

F nonsquare_intersection_rect(const Rect& a, const Rect& b, FreshGen& fresh, int atom) {
  return F::mk_and({partially_overlaps_rect(a, b, fresh, atom), misaligned_or_nonsquare(a, b)});
}

// aligned_concentric(A,B): A part_of B and no square P covertex with B has a
// non-square intersection with A. P and the overlap witnesses are quantified
// together (9 reals); P inherits B's direction because covertex forces
// alignment.
F aligned_concentric_rect(const Rect& a, const Rect& b, FreshGen& fresh, int atom) {
  std::vector<std::string> names;
  auto fv = [&](int k) {
    names.push_back(fresh.var("q", atom, k));
    return Poly::var(names.back());
  };
  Rect p{{fv(0), fv(1)}, b.v, fv(2), Poly()};
  p.h = p.w;
  Vec2 wi{fv(3), fv(4)}, wj{fv(5), fv(6)}, wk{fv(7), fv(8)};
  std::vector<F> shares;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      Vec2 vp = p.vertex(i), vb = b.vertex(j);
      shares.push_back(F::mk_and({eq0(vp.x - vb.x), eq0(vp.y - vb.y)}));
    }
  F bad = F::mk_and({gt0(p.w), F::mk_or(std::move(shares)), po_body(p, a, wi, wj, wk),
                     misaligned_or_nonsquare(p, a)});
  return F::mk_and({part_of_rect(a, b),
                    F::mk_forall(std::move(names), to_nnf(F::mk_not(std::move(bad))))});
}

// boundary_concentric(A,B): A proper part of B and no square Z fits strictly
// between A and B. Z is a general (rotatable) square: 5 quantified reals with
// a unit-norm side condition.
//
// The forall is kept, but a family of implied ground instances is conjoined
// so that refutations (entailment queries) stay inside the quantifier-free
// fragment, where the backend is complete: the B-frame bounding square of A
// (one candidate per orientation quadrant of A's direction in B's frame) and
// its half-slack enlargements toward each corner of B. Whenever A sits
// non-concentrically in B, one of these squares interposes, so the instances
// alone contradict a negated-concentricity side constraint; each instance is
// a plain consequence of the forall, leaving the relation's meaning
// unchanged.
F boundary_concentric_rect(const Rect& a, const Rect& b, FreshGen& fresh, int atom) {
  auto between_of = [&](const Rect& z, const F& wf) {
    return F::mk_and({wf, part_of_rect(z, b), to_nnf(F::mk_not(equals_rect(z, b))),
                      part_of_rect(a, z), to_nnf(F::mk_not(part_of_rect(z, a)))});
  };

  std::vector<std::string> names;
  auto fv = [&](int k) {
    names.push_back(fresh.var("z", atom, k));
    return Poly::var(names.back());
  };
  Rect z{{fv(0), fv(1)}, {fv(2), fv(3)}, fv(4), Poly()};
  z.h = z.w;
  F zwf = F::mk_and({gt0(z.w), eq0(z.v.x * z.v.x + z.v.y * z.v.y - Poly::constant(Rat(1)))});

  std::vector<F> parts{to_nnf(F::mk_not(equals_rect(a, b))), part_of_rect(a, b),
                       F::mk_forall(std::move(names), to_nnf(F::mk_not(between_of(z, zwf))))};

  // instance lemmas; coordinates relative to B's frame
  Vec2 u = b.v, up = b.vp();
  Poly dx = dot(a.v, u), dy = dot(a.v, up);
  Poly al = dot(a.p - b.p, u), be = dot(a.p - b.p, up);
  Poly half = Poly::constant(Rat(1, 2));
  for (int sx : {1, -1}) {
    for (int sy : {1, -1}) {
      Poly kx = Poly::constant(Rat(sx)), ky = Poly::constant(Rat(sy));
      // bounding square of A for this orientation quadrant: corner at the
      // minimal frame coordinates, side = projected extent
      Poly min_al = al, min_be = be;
      if (sy > 0) min_al = min_al - a.h * dy;
      if (sx < 0) min_al = min_al + a.w * dx;
      if (sy < 0) min_be = min_be + a.w * dy;
      if (sx < 0) min_be = min_be + a.h * dx;
      Poly side = kx * (a.w * dx) + ky * (a.h * dy);
      auto inst = [&](const Poly& ca, const Poly& cb, const Poly& s) {
        Rect zi{b.p + ca * u + cb * up, u, s, s};
        F wf = F::mk_and({gt0(s), eq0(dot(u, u) - Poly::constant(Rat(1)))});
        parts.push_back(to_nnf(F::mk_not(between_of(zi, std::move(wf)))));
      };
      inst(min_al, min_be, side);
      // half-slack growth toward each corner of B, by half the limiting
      // margin on either axis
      Poly sl = min_al, sr = b.w - min_al - side;
      Poly sd = min_be, st = b.h - min_be - side;
      for (int gx : {1, -1}) {
        for (int gy : {1, -1}) {
          for (const Poly& m : {half * (gx > 0 ? sr : sl), half * (gy > 0 ? st : sd)}) {
            Poly ca = gx > 0 ? min_al : min_al - m;
            Poly cb = gy > 0 ? min_be : min_be - m;
            inst(ca, cb, side + m);
          }
        }
      }
    }
  }
  return F::mk_and(std::move(parts));
}

Poly sq_dist2(const Vec2& a, const Vec2& b) {
  return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

Poly sq_dist3(const SpatialObject& s1, const SpatialObject& s2) {
  Poly dx = pv(s1, "x") - pv(s2, "x");
  Poly dy = pv(s1, "y") - pv(s2, "y");
  Poly dz = pv(s1, "z") - pv(s2, "z");
  return dx * dx + dy * dy + dz * dz;
}

F encode_positive(const ConstraintGraph& g, const RelationAtom& a, const RelationSignature& sig,
                  FreshGen& fresh, int atom) {
  std::vector<const SpatialObject*> os;
  for (const auto& id : a.args) os.push_back(g.find_object(id));
  const std::string& n = a.name;

  if (n == "left_of") return gt0(orient(seg_a(*os[1]), seg_b(*os[1]), point2(*os[0])));
  if (n == "right_of") return lt0(orient(seg_a(*os[1]), seg_b(*os[1]), point2(*os[0])));
  if (n == "right_or_collinear")
    return le0(orient(seg_a(*os[1]), seg_b(*os[1]), point2(*os[0])));
  if (n == "left_or_collinear") return ge0(orient(seg_a(*os[1]), seg_b(*os[1]), point2(*os[0])));
  if (n == "collinear") return eq0(orient(seg_a(*os[1]), seg_b(*os[1]), point2(*os[0])));
  if (n == "collinear_pts")
    return eq0(orient(point2(*os[0]), point2(*os[1]), point2(*os[2])));
  if (n == "parallel") {
    Vec2 d1 = seg_b(*os[0]) - seg_a(*os[0]);
    Vec2 d2 = seg_b(*os[1]) - seg_a(*os[1]);
    return eq0(d1.y * d2.x - d2.y * d1.x);
  }
  if (n == "perpendicular") {
    Vec2 d1 = seg_b(*os[0]) - seg_a(*os[0]);
    Vec2 d2 = seg_b(*os[1]) - seg_a(*os[1]);
    return eq0(dot(d1, d2));
  }
  if (n == "coincident" && sig.args[1] == Kind::Segment2) {
    Vec2 p = point2(*os[0]), sa = seg_a(*os[1]), sb = seg_b(*os[1]);
    return F::mk_and({eq0(orient(sa, sb, p)), in_interval(p.x, sa.x, sb.x),
                      in_interval(p.y, sa.y, sb.y)});
  }
  if (n == "coincident" && sig.args[1] == Kind::Circle2) {
    return eq0(sq_dist2(point2(*os[0]), point2(*os[1])) - pv(*os[1], "r") * pv(*os[1], "r"));
  }
  if (n == "centre" || n == "coincident_pt") {
    Vec2 p = point2(*os[0]), q = point2(*os[1]);
    return F::mk_and({eq0(p.x - q.x), eq0(p.y - q.y)});
  }
  if (n == "inside" && sig.args[0] == Kind::Point2)
    return inside_rect(point2(*os[0]), rect_of(*os[1]));
  if (n == "intersects") return intersects_rect(point2(*os[0]), rect_of(*os[1]));
  if (n == "boundary") return boundary_rect(point2(*os[0]), rect_of(*os[1]));
  if (n == "outside") return outside_rect(point2(*os[0]), rect_of(*os[1]));
  if (n == "concentric") return concentric_rect(rect_of(*os[0]), rect_of(*os[1]));
  if (n == "aligned") return aligned_rect(rect_of(*os[0]), rect_of(*os[1]));
  if (n == "covertex") return covertex_rect(rect_of(*os[0]), rect_of(*os[1]));
  if (n == "part_of") return part_of_rect(rect_of(*os[0]), rect_of(*os[1]));
  if (n == "equals") return equals_rect(rect_of(*os[0]), rect_of(*os[1]));
  if (n == "proper_part") {
    Rect ra = rect_of(*os[0]), rb = rect_of(*os[1]);
    return F::mk_and({to_nnf(F::mk_not(equals_rect(ra, rb))), part_of_rect(ra, rb)});
  }
  if (n == "boundary_part_of") {
    Rect ra = rect_of(*os[0]), rb = rect_of(*os[1]);
    std::vector<F> cs;
    for (int i = 1; i <= 4; ++i) cs.push_back(boundary_rect(ra.vertex(i), rb));
    return F::mk_and(std::move(cs));
  }
  if (n == "discrete_from") return discrete_from_rect(rect_of(*os[0]), rect_of(*os[1]));
  if (n == "partially_overlaps")
    return partially_overlaps_rect(rect_of(*os[0]), rect_of(*os[1]), fresh, atom);
  if (n == "nonsquare_intersection")
    return nonsquare_intersection_rect(rect_of(*os[0]), rect_of(*os[1]), fresh, atom);
  if (n == "aligned_concentric")
    return aligned_concentric_rect(rect_of(*os[0]), rect_of(*os[1]), fresh, atom);
  if (n == "boundary_concentric")
    return boundary_concentric_rect(rect_of(*os[0]), rect_of(*os[1]), fresh, atom);
  if (n == "touches" && sig.args[0] == Kind::Circle2) {
    Poly rsum = pv(*os[0], "r") + pv(*os[1], "r");
    return eq0(sq_dist2(point2(*os[0]), point2(*os[1])) - rsum * rsum);
  }
  if (n == "disconnected" && sig.args[0] == Kind::Circle2) {
    Poly rsum = pv(*os[0], "r") + pv(*os[1], "r");
    return gt0(sq_dist2(point2(*os[0]), point2(*os[1])) - rsum * rsum);
  }
  if (n == "touches" && sig.args[0] == Kind::Sphere3) {
    Poly rsum = pv(*os[0], "r") + pv(*os[1], "r");
    return eq0(sq_dist3(*os[0], *os[1]) - rsum * rsum);
  }
  if (n == "disconnected" && sig.args[0] == Kind::Sphere3) {
    Poly rsum = pv(*os[0], "r") + pv(*os[1], "r");
    return gt0(sq_dist3(*os[0], *os[1]) - rsum * rsum);
  }
  if (n == "same_radius") return eq0(pv(*os[0], "r") - pv(*os[1], "r"));
  if (n == "same_length") {
    return eq0(sq_dist2(seg_a(*os[0]), seg_b(*os[0])) - sq_dist2(seg_a(*os[1]), seg_b(*os[1])));
  }
  if (n == "dist_eq") {
    return eq0(sq_dist2(point2(*os[0]), point2(*os[1])) -
               sq_dist2(seg_a(*os[2]), seg_b(*os[2])));
  }
  if (n == "bisects") {
    Vec2 p = point2(*os[0]), pc = point2(*os[1]), a1 = point2(*os[2]), b1 = point2(*os[3]);
    Poly half = Poly::constant(Rat(1, 2));
    Vec2 mid{half * (a1.x + b1.x), half * (a1.y + b1.y)};
    return eq0(orient(p, pc, mid));
  }
  if (n == "inside" && sig.args[0] == Kind::Box3) {
    const SpatialObject &a3 = *os[0], &b3 = *os[1];
    auto axis = [&](const char* lo, const char* ext) {
      Poly la = pv(a3, lo), lb = pv(b3, lo);
      Poly ea = pv(a3, ext), eb = pv(b3, ext);
      return F::mk_and({gt0(la - lb), lt0((la + ea) - (lb + eb))});
    };
    return F::mk_and({axis("x", "w"), axis("y", "d"), axis("z", "h")});
  }
  if (n == "disconnected" && sig.args[0] == Kind::Box3) {
    const SpatialObject &a3 = *os[0], &b3 = *os[1];
    auto gap = [&](const char* lo, const char* ext) {
      Poly la = pv(a3, lo), lb = pv(b3, lo);
      Poly ea = pv(a3, ext), eb = pv(b3, ext);
      return F::mk_or({lt0((la + ea) - lb), lt0((lb + eb) - la)});
    };
    return F::mk_or({gap("x", "w"), gap("y", "d"), gap("z", "h")});
  }
  throw EncodeError("unsupported relation/kind pair: " + n);
}

}  // namespace

Formula encode_atom(const ConstraintGraph& g, const RelationAtom& a, Polarity pol,
                    FreshGen& fresh) {
  auto sig = resolve_atom(g, a);
  if (!sig) throw EncodeError("ill-typed atom: " + a.name);
  int atom = fresh.next_atom();
  Formula f = encode_positive(g, a, *sig, fresh, atom);
  if (pol == Polarity::Negative) return to_nnf(Formula::mk_not(std::move(f)));
  return f;
}

Formula wellformedness(const SpatialObject& o) {
  std::vector<Formula> cs;
  auto var = [&](const char* s) { return Poly::var(o.var(s)); };
  switch (o.kind) {
    case Kind::Circle2:
    case Kind::Sphere3:
      cs.push_back(Formula::mk_atom(-var("r"), Cmp::Lt));
      break;
    case Kind::Segment2: {
      Poly dx = var("xa") - var("xb"), dy = var("ya") - var("yb");
      cs.push_back(Formula::mk_atom(dx * dx + dy * dy, Cmp::Ne));
      break;
    }
    case Kind::Rectangle2: {
      cs.push_back(Formula::mk_atom(-var("w"), Cmp::Lt));
      cs.push_back(Formula::mk_atom(-var("h"), Cmp::Lt));
      Poly vx = var("vx"), vy = var("vy");
      cs.push_back(Formula::mk_atom(vx * vx + vy * vy - Poly::constant(Rat(1)), Cmp::Eq));
      if (o.square) cs.push_back(Formula::mk_atom(var("w") - var("h"), Cmp::Eq));
      break;
    }
    case Kind::Box3:
      cs.push_back(Formula::mk_atom(-var("w"), Cmp::Lt));
      cs.push_back(Formula::mk_atom(-var("d"), Cmp::Lt));
      cs.push_back(Formula::mk_atom(-var("h"), Cmp::Lt));
      if (o.cube) {
        cs.push_back(Formula::mk_atom(var("w") - var("d"), Cmp::Eq));
        cs.push_back(Formula::mk_atom(var("d") - var("h"), Cmp::Eq));
      }
      break;
    default:
      break;
  }
  return Formula::mk_and(std::move(cs));
}

Formula encode_edge_formula(const ConstraintGraph& g, const EdgeFormula& f, FreshGen& fresh) {
  EdgeFormula n = to_nnf(f);
  struct Impl {
    const ConstraintGraph& g;
    FreshGen& fresh;
    Formula run(const EdgeFormula& f) {
      switch (f.kind) {
        case EdgeFormula::Kind::Atom:
          return encode_atom(g, f.atom, Polarity::Positive, fresh);
        case EdgeFormula::Kind::Not:
          return encode_atom(g, f.kids[0].atom, Polarity::Negative, fresh);
        case EdgeFormula::Kind::And:
        case EdgeFormula::Kind::Or: {
          std::vector<Formula> kids;
          for (const auto& k : f.kids) kids.push_back(run(k));
          return f.kind == EdgeFormula::Kind::And ? Formula::mk_and(std::move(kids))
                                                  : Formula::mk_or(std::move(kids));
        }
      }
      throw EncodeError("bad edge formula");
    }
  };
  return Impl{g, fresh}.run(n);
}

Formula encode_graph(const ConstraintGraph& g, FreshGen& fresh) {
  std::vector<Formula> cs;
  for (const auto& f : g.formulas) cs.push_back(encode_edge_formula(g, f, fresh));
  for (const auto& o : g.objects) {
    Formula wf = wellformedness(o);
    if (!wf.is_top()) cs.push_back(std::move(wf));
  }
  for (const auto& [v, q] : g.groundings)
    cs.push_back(Formula::mk_atom(Poly::var(v) - Poly::constant(q), Cmp::Eq));
  return Formula::mk_and(std::move(cs));
}

Formula encode_nonsquare_intersection(const ConstraintGraph& g, const std::string& a,
                                      const std::string& b, FreshGen& fresh) {
  return encode_atom(g, RelationAtom{"nonsquare_intersection", {a, b}}, Polarity::Positive, fresh);
}

}  // namespace qs
