#include "symmetry.hpp"

#include "encoder.hpp"
#include "sampling.hpp"

namespace qs {

const char* tclass_name(TClass c) {
  switch (c) {
    case TClass::Translate: return "translate";
    case TClass::Rotate: return "rotate";
    case TClass::UniformScale: return "uniform-scale";
    case TClass::NonUniformScale: return "non-uniform-scale";
    case TClass::Reflect: return "reflect";
  }
  return "?";
}

TSet full_tset() {
  return {TClass::Translate, TClass::Rotate, TClass::UniformScale, TClass::NonUniformScale,
          TClass::Reflect};
}

TSet sym_of_relation(RelClass cls, const std::vector<Kind>& kinds) {
  TSet s = full_tset();
  if (cls == RelClass::RelativeOrientation) s.erase(TClass::Reflect);
  if (cls == RelClass::Perpendicularity || cls == RelClass::Distance)
    s.erase(TClass::NonUniformScale);
  for (Kind k : kinds) {
    if (k == Kind::Circle2 || k == Kind::Sphere3 || k == Kind::Rectangle2)
      s.erase(TClass::NonUniformScale);
    if (k == Kind::Box3) s.erase(TClass::Rotate);
  }
  return s;
}

TransformBudget sym_of_graph(const ConstraintGraph& g) {
  TSet s = full_tset();
  for (const auto& f : g.formulas) {
    std::vector<const RelationAtom*> atoms;
    f.collect_atoms(atoms);
    for (const RelationAtom* a : atoms) {
      auto sig = resolve_atom(g, *a);
      if (!sig) continue;
      TSet rs = sym_of_relation(sig->cls, sig->args);
      TSet inter;
      for (TClass c : s)
        if (rs.count(c)) inter.insert(c);
      s = std::move(inter);
    }
  }
  return TransformBudget{std::move(s), {}};
}

AffineTransform make_translate(const Rat& tx, const Rat& ty, const Rat& tz) {
  AffineTransform t;
  t.cls = TClass::Translate;
  t.tx = tx;
  t.ty = ty;
  t.tz = tz;
  return t;
}

AffineTransform make_rotate(const Rat& c, const Rat& s) {
  if (c * c + s * s != 1) throw TransformError("rotation requires a unit direction");
  AffineTransform t;
  t.cls = TClass::Rotate;
  t.q11 = c;
  t.q12 = -s;
  t.q21 = s;
  t.q22 = c;
  return t;
}

AffineTransform make_uscale(const Rat& k) {
  if (k <= 0) throw TransformError("scale factor must be positive");
  AffineTransform t;
  t.cls = TClass::UniformScale;
  t.q11 = t.q22 = t.qz = k;
  return t;
}

AffineTransform make_nuscale(const Rat& sx, const Rat& sy, const Rat& sz) {
  if (sx <= 0 || sy <= 0 || sz <= 0) throw TransformError("scale factors must be positive");
  AffineTransform t;
  t.cls = TClass::NonUniformScale;
  t.q11 = sx;
  t.q22 = sy;
  t.qz = sz;
  return t;
}

AffineTransform make_reflect(int axis) {
  if (axis != 0 && axis != 1) throw TransformError("reflection axis must be 0 (x) or 1 (y)");
  AffineTransform t;
  t.cls = TClass::Reflect;
  (axis == 0 ? t.q11 : t.q22) = -1;
  return t;
}

std::optional<AffineTransform> compose(const AffineTransform& t2, const AffineTransform& t1) {
  if (t2.cls != t1.cls || t2.cls == TClass::Reflect) return std::nullopt;
  AffineTransform r;
  r.cls = t2.cls;
  r.q11 = t2.q11 * t1.q11 + t2.q12 * t1.q21;
  r.q12 = t2.q11 * t1.q12 + t2.q12 * t1.q22;
  r.q21 = t2.q21 * t1.q11 + t2.q22 * t1.q21;
  r.q22 = t2.q21 * t1.q12 + t2.q22 * t1.q22;
  r.qz = t2.qz * t1.qz;
  r.tx = t2.q11 * t1.tx + t2.q12 * t1.ty + t2.tx;
  r.ty = t2.q21 * t1.tx + t2.q22 * t1.ty + t2.ty;
  r.tz = t2.qz * t1.tz + t2.tz;
  return r;
}

namespace {

struct Pt {
  Rat x, y;
};

Pt map_xy(const AffineTransform& t, const Rat& x, const Rat& y) {
  return {t.q11 * x + t.q12 * y + t.tx, t.q21 * x + t.q22 * y + t.ty};
}

Rat uniform_factor(const AffineTransform& t) {
  return t.cls == TClass::UniformScale ? t.q11 : Rat(1);
}

void map_point_slot(const AffineTransform& t, Assignment& out, const Assignment& in,
                    const std::string& xs, const std::string& ys) {
  Pt p = map_xy(t, in.at(xs), in.at(ys));
  out[xs] = p.x;
  out[ys] = p.y;
}

}  // namespace

Assignment apply_transform(const AffineTransform& t, const Assignment& config,
                           const std::vector<SpatialObject>& objects) {
  Assignment out = config;
  for (const auto& o : objects) {
    auto v = [&](const char* slot) { return o.var(slot); };
    switch (o.kind) {
      case Kind::Point2:
        map_point_slot(t, out, config, v("x"), v("y"));
        break;
      case Kind::Segment2:
        map_point_slot(t, out, config, v("xa"), v("ya"));
        map_point_slot(t, out, config, v("xb"), v("yb"));
        break;
      case Kind::Circle2:
        if (t.cls == TClass::NonUniformScale)
          throw TransformError("non-uniform scaling does not keep circles circular");
        map_point_slot(t, out, config, v("x"), v("y"));
        out[v("r")] = config.at(v("r")) * uniform_factor(t);
        break;
      case Kind::Rectangle2: {
        if (t.cls == TClass::NonUniformScale)
          throw TransformError("non-uniform scaling does not keep rectangles rectangular");
        Rat x = config.at(v("x")), y = config.at(v("y"));
        Rat vx = config.at(v("vx")), vy = config.at(v("vy"));
        Rat w = config.at(v("w")), h = config.at(v("h"));
        if (t.cls == TClass::Reflect) {
          // a reflected frame is left-handed; re-anchor at the image of the
          // fourth vertex so (corner, Qv, w, h) is counter-clockwise again
          Pt p4 = map_xy(t, x + h * (-vy), y + h * vx);
          out[v("x")] = p4.x;
          out[v("y")] = p4.y;
          out[v("vx")] = t.q11 * vx + t.q12 * vy;
          out[v("vy")] = t.q21 * vx + t.q22 * vy;
        } else {
          map_point_slot(t, out, config, v("x"), v("y"));
          if (t.cls == TClass::Rotate) {
            out[v("vx")] = t.q11 * vx + t.q12 * vy;
            out[v("vy")] = t.q21 * vx + t.q22 * vy;
          }
          Rat k = uniform_factor(t);
          out[v("w")] = w * k;
          out[v("h")] = h * k;
        }
        break;
      }
      case Kind::Point3:
        map_point_slot(t, out, config, v("x"), v("y"));
        out[v("z")] = t.qz * config.at(v("z")) + t.tz;
        break;
      case Kind::Sphere3:
        if (t.cls == TClass::NonUniformScale)
          throw TransformError("non-uniform scaling does not keep spheres spherical");
        map_point_slot(t, out, config, v("x"), v("y"));
        out[v("z")] = t.qz * config.at(v("z")) + t.tz;
        out[v("r")] = config.at(v("r")) * uniform_factor(t);
        break;
      case Kind::Box3: {
        if (t.cls == TClass::Rotate)
          throw TransformError("rotation does not keep boxes axis-aligned");
        Rat x = config.at(v("x")), y = config.at(v("y")), z = config.at(v("z"));
        Rat w = config.at(v("w")), d = config.at(v("d")), h = config.at(v("h"));
        if (t.cls == TClass::Reflect) {
          // reflect the interval on the mirrored axis; q11/q22 is -1 there
          out[v("x")] = t.q11 < 0 ? -(x + w) : x;
          out[v("y")] = t.q22 < 0 ? -(y + d) : y;
        } else {
          out[v("x")] = t.q11 * x + t.tx;
          out[v("y")] = t.q22 * y + t.ty;
          out[v("z")] = t.qz * z + t.tz;
          out[v("w")] = t.q11 * w;
          out[v("d")] = t.q22 * d;
          out[v("h")] = t.qz * h;
        }
        break;
      }
    }
  }
  return out;
}

namespace {

AffineTransform random_transform(sampling::Rng& rng, TClass cls, int trial) {
  switch (cls) {
    case TClass::Translate:
      return make_translate(rng.rat(), rng.rat(), rng.rat());
    case TClass::Rotate: {
      sampling::Vec u = rng.unit();
      return make_rotate(u.x, u.y);
    }
    case TClass::UniformScale:
      return make_uscale(rng.pos_rat());
    case TClass::NonUniformScale: {
      Rat sx = rng.pos_rat(), sy = rng.pos_rat();
      if (sx == sy) sy += 1;
      return make_nuscale(sx, sy, rng.pos_rat());
    }
    case TClass::Reflect:
      return make_reflect(trial % 2);
  }
  throw TransformError("bad transform class");
}

}  // namespace

PreservationResult check_preservation(const std::string& relation,
                                      const std::vector<Kind>& kinds, TClass cls, int trials,
                                      unsigned seed) {
  PreservationResult res;
  const sampling::RelationSampler* sampler = sampling::find_sampler(relation, kinds);
  if (!sampler) {
    res.supported = false;
    res.note = "no sampler for relation " + relation;
    return res;
  }
  std::vector<std::string> ids = sampling::arg_ids(kinds.size());
  ConstraintGraph g;
  for (std::size_t i = 0; i < ids.size(); ++i) g.objects.push_back({ids[i], kinds[i]});
  RelationAtom atom{relation, ids};
  FreshGen fresh;
  Formula enc = encode_atom(g, atom, Polarity::Positive, fresh);

  sampling::Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    Assignment config;
    for (std::size_t i = 0; i < ids.size(); ++i)
      sampling::sample_object(rng, config, ids[i], kinds[i]);
    if (sampler->make_true && trial % 2 == 0) sampler->make_true(rng, config);

    AffineTransform t = random_transform(rng, cls, trial);
    Assignment image;
    try {
      image = apply_transform(t, config, g.objects);
    } catch (const TransformError& e) {
      res.applicable = false;
      res.note = e.what();
      return res;
    }
    auto before = eval_ground(enc, config);
    auto after = eval_ground(enc, image);
    if (!before || !after) {
      res.supported = false;
      res.note = "encoding not directly evaluable (quantified witnesses)";
      return res;
    }
    if (*before != *after) {
      res.preserved = false;
      res.counterexample = config;
      res.transform = t;
      return res;
    }
  }
  return res;
}

}  // namespace qs
