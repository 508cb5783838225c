#include "flowtime/piecewise_linear.hpp"

#include <algorithm>
#include <sstream>

#include "flowtime/errors.hpp"

namespace flowtime {

ExtendedRational Segment::at(const Rational& x) const {
  switch (kind) {
    case Kind::Linear:
      return ExtendedRational(slope * x + intercept);
    case Kind::PlusInf:
      return ExtendedRational::infinity();
    case Kind::MinusInf:
      return ExtendedRational::minus_infinity();
  }
  throw internal_error("bad segment kind");
}

bool operator==(const Segment& a, const Segment& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != Segment::Kind::Linear) return true;
  return a.slope == b.slope && a.intercept == b.intercept;
}

PiecewiseLinear::PiecewiseLinear() : segments_{Segment::line(0, 0)} {}

PiecewiseLinear PiecewiseLinear::constant(const ExtendedRational& v) {
  PiecewiseLinear f;
  if (v.is_plus_inf())
    f.segments_ = {Segment::plus_inf()};
  else if (v.is_minus_inf())
    f.segments_ = {Segment::minus_inf()};
  else
    f.segments_ = {Segment::line(0, v.finite())};
  return f;
}

PiecewiseLinear PiecewiseLinear::line(const Rational& slope, const Rational& intercept) {
  PiecewiseLinear f;
  f.segments_ = {Segment::line(slope, intercept)};
  return f;
}

PiecewiseLinear PiecewiseLinear::make(std::vector<Rational> knots,
                                      std::vector<Segment> segments,
                                      std::vector<ExtendedRational> knot_values) {
  if (segments.size() != knots.size() + 1 || knot_values.size() != knots.size())
    throw internal_error("piecewise-linear shape mismatch");
  for (size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i - 1] < knots[i])) throw internal_error("knots not increasing");
  PiecewiseLinear f;
  f.knots_ = std::move(knots);
  f.segments_ = std::move(segments);
  f.knot_values_ = std::move(knot_values);
  f.canonicalize();
  return f;
}

void PiecewiseLinear::canonicalize() {
  std::vector<Rational> ks;
  std::vector<Segment> segs;
  std::vector<ExtendedRational> vals;
  segs.push_back(segments_[0]);
  for (size_t i = 0; i < knots_.size(); ++i) {
    const Segment& left = segs.back();
    const Segment& right = segments_[i + 1];
    bool redundant = left == right && knot_values_[i] == left.at(knots_[i]);
    if (redundant) continue;
    ks.push_back(knots_[i]);
    vals.push_back(knot_values_[i]);
    segs.push_back(right);
  }
  knots_ = std::move(ks);
  segments_ = std::move(segs);
  knot_values_ = std::move(vals);
}

size_t PiecewiseLinear::cell_index(const Rational& x) const {
  return std::lower_bound(knots_.begin(), knots_.end(), x) - knots_.begin();
}

ExtendedRational PiecewiseLinear::value(const Rational& x) const {
  size_t i = cell_index(x);
  if (i < knots_.size() && knots_[i] == x) return knot_values_[i];
  return segments_[i].at(x);
}

ExtendedRational PiecewiseLinear::left_limit(const Rational& x) const {
  size_t i = cell_index(x);
  return segments_[i].at(x);
}

ExtendedRational PiecewiseLinear::right_limit(const Rational& x) const {
  size_t i = cell_index(x);
  if (i < knots_.size() && knots_[i] == x) ++i;
  return segments_[i].at(x);
}

PiecewiseLinear PiecewiseLinear::shifted_arg(const Rational& c) const {
  PiecewiseLinear f = *this;
  for (auto& k : f.knots_) k -= c;
  for (auto& s : f.segments_)
    if (s.is_linear()) s.intercept += s.slope * c;
  return f;
}

PiecewiseLinear PiecewiseLinear::operator-() const {
  PiecewiseLinear f = *this;
  for (auto& s : f.segments_) {
    switch (s.kind) {
      case Segment::Kind::Linear:
        s.slope = -s.slope;
        s.intercept = -s.intercept;
        break;
      case Segment::Kind::PlusInf:
        s.kind = Segment::Kind::MinusInf;
        break;
      case Segment::Kind::MinusInf:
        s.kind = Segment::Kind::PlusInf;
        break;
    }
  }
  for (auto& v : f.knot_values_) v = -v;
  return f;
}

PiecewiseLinear PiecewiseLinear::scaled(const Rational& factor) const {
  if (factor.is_zero()) {
    if (!is_finite_everywhere()) throw internal_error("scaling infinite function by zero");
    return PiecewiseLinear();
  }
  PiecewiseLinear f = *this;
  for (auto& s : f.segments_) {
    if (s.is_linear()) {
      s.slope *= factor;
      s.intercept *= factor;
    } else if (factor.sign() < 0) {
      s.kind = s.kind == Segment::Kind::PlusInf ? Segment::Kind::MinusInf
                                                : Segment::Kind::PlusInf;
    }
  }
  for (auto& v : f.knot_values_) {
    if (v.is_finite())
      v = ExtendedRational(v.finite() * factor);
    else if (factor.sign() < 0)
      v = v.is_plus_inf() ? ExtendedRational::minus_infinity() : ExtendedRational::infinity();
  }
  f.canonicalize();
  return f;
}

PiecewiseLinear PiecewiseLinear::plus(const ExtendedRational& c) const {
  if (!c.is_finite()) throw internal_error("plus() expects a finite constant");
  PiecewiseLinear f = *this;
  for (auto& s : f.segments_)
    if (s.is_linear()) s.intercept += c.finite();
  for (auto& v : f.knot_values_) v = v + c;
  f.canonicalize();
  return f;
}

namespace {

std::vector<Rational> merged_knots(const PiecewiseLinear& a, const PiecewiseLinear& b) {
  std::vector<Rational> cuts;
  cuts.reserve(a.knots().size() + b.knots().size());
  std::merge(a.knots().begin(), a.knots().end(), b.knots().begin(), b.knots().end(),
             std::back_inserter(cuts));
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

// For each refined cell (cuts[i-1], cuts[i]) the index of f's covering segment.
std::vector<size_t> cells_to_segments(const PiecewiseLinear& f,
                                      const std::vector<Rational>& cuts) {
  std::vector<size_t> out(cuts.size() + 1);
  size_t fs = 0;
  for (size_t i = 0; i <= cuts.size(); ++i) {
    while (fs < f.knots().size() && i > 0 && f.knots()[fs] <= cuts[i - 1]) ++fs;
    out[i] = fs;
  }
  return out;
}

Segment add_segments(const Segment& x, const Segment& y) {
  if (x.is_linear() && y.is_linear())
    return Segment::line(x.slope + y.slope, x.intercept + y.intercept);
  int xs = x.kind == Segment::Kind::PlusInf ? 1 : x.kind == Segment::Kind::MinusInf ? -1 : 0;
  int ys = y.kind == Segment::Kind::PlusInf ? 1 : y.kind == Segment::Kind::MinusInf ? -1 : 0;
  if (xs + ys == 0) throw internal_error("adding opposite infinite pieces");
  return xs + ys > 0 ? Segment::plus_inf() : Segment::minus_inf();
}

Rational cell_probe(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (lo && hi) return (*lo + *hi) / 2;
  if (lo) return *lo + 1;
  if (hi) return *hi - 1;
  return 0;
}

// Appends the upper (or lower) envelope of two segments over one open cell.
void emit_envelope(PiecewiseLinear::Builder& bld, const Segment& x, const Segment& y,
                   const std::optional<Rational>& lo, const std::optional<Rational>& hi,
                   bool upper) {
  const bool x_plus = x.kind == Segment::Kind::PlusInf;
  const bool y_plus = y.kind == Segment::Kind::PlusInf;
  const bool x_minus = x.kind == Segment::Kind::MinusInf;
  const bool y_minus = y.kind == Segment::Kind::MinusInf;
  if (x_plus || y_minus) {
    bld.segment(upper ? x : y);
    return;
  }
  if (y_plus || x_minus) {
    bld.segment(upper ? y : x);
    return;
  }
  if (x.slope == y.slope) {
    if (upper)
      bld.segment(x.intercept >= y.intercept ? x : y);
    else
      bld.segment(x.intercept <= y.intercept ? x : y);
    return;
  }
  Rational cross = (y.intercept - x.intercept) / (x.slope - y.slope);
  bool inside = (!lo || *lo < cross) && (!hi || cross < *hi);
  if (!inside) {
    Rational probe = cell_probe(lo, hi);
    bool x_wins_upper = x.slope * probe + x.intercept >= y.slope * probe + y.intercept;
    bld.segment((x_wins_upper == upper) ? x : y);
    return;
  }
  // Left of the crossing the smaller slope is on top.
  const Segment& small = x.slope < y.slope ? x : y;
  const Segment& big = x.slope < y.slope ? y : x;
  ExtendedRational meet = small.at(cross);
  if (upper) {
    bld.segment(small);
    bld.knot(cross, meet);
    bld.segment(big);
  } else {
    bld.segment(big);
    bld.knot(cross, meet);
    bld.segment(small);
  }
}

}  // namespace

PiecewiseLinear operator+(const PiecewiseLinear& a, const PiecewiseLinear& b) {
  std::vector<Rational> cuts = merged_knots(a, b);
  std::vector<size_t> as = cells_to_segments(a, cuts);
  std::vector<size_t> bs = cells_to_segments(b, cuts);
  PiecewiseLinear::Builder bld;
  for (size_t i = 0; i <= cuts.size(); ++i) {
    bld.segment(add_segments(a.segments()[as[i]], b.segments()[bs[i]]));
    if (i < cuts.size()) bld.knot(cuts[i], a.value(cuts[i]) + b.value(cuts[i]));
  }
  return bld.finish();
}

PiecewiseLinear operator-(const PiecewiseLinear& a, const PiecewiseLinear& b) {
  return a + (-b);
}

PiecewiseLinear PiecewiseLinear::pointwise_max(const PiecewiseLinear& a,
                                               const PiecewiseLinear& b) {
  std::vector<Rational> cuts = merged_knots(a, b);
  std::vector<size_t> as = cells_to_segments(a, cuts);
  std::vector<size_t> bs = cells_to_segments(b, cuts);
  Builder bld;
  for (size_t i = 0; i <= cuts.size(); ++i) {
    std::optional<Rational> lo =
        i == 0 ? std::nullopt : std::optional<Rational>(cuts[i - 1]);
    std::optional<Rational> hi =
        i == cuts.size() ? std::nullopt : std::optional<Rational>(cuts[i]);
    emit_envelope(bld, a.segments()[as[i]], b.segments()[bs[i]], lo, hi, true);
    if (i < cuts.size()) bld.knot(cuts[i], max(a.value(cuts[i]), b.value(cuts[i])));
  }
  return bld.finish();
}

PiecewiseLinear PiecewiseLinear::pointwise_min(const PiecewiseLinear& a,
                                               const PiecewiseLinear& b) {
  std::vector<Rational> cuts = merged_knots(a, b);
  std::vector<size_t> as = cells_to_segments(a, cuts);
  std::vector<size_t> bs = cells_to_segments(b, cuts);
  Builder bld;
  for (size_t i = 0; i <= cuts.size(); ++i) {
    std::optional<Rational> lo =
        i == 0 ? std::nullopt : std::optional<Rational>(cuts[i - 1]);
    std::optional<Rational> hi =
        i == cuts.size() ? std::nullopt : std::optional<Rational>(cuts[i]);
    emit_envelope(bld, a.segments()[as[i]], b.segments()[bs[i]], lo, hi, false);
    if (i < cuts.size()) bld.knot(cuts[i], min(a.value(cuts[i]), b.value(cuts[i])));
  }
  return bld.finish();
}

PiecewiseLinear PiecewiseLinear::positive_part() const {
  return pointwise_max(*this, PiecewiseLinear());
}

PiecewiseLinear PiecewiseLinear::running_min_from_right() const {
  // Work right to left, carrying best = inf of f over everything to the right.
  std::vector<Segment> rev_segments;
  std::vector<Rational> rev_knots;
  std::vector<ExtendedRational> rev_values;
  ExtendedRational best = ExtendedRational::infinity();

  auto emit_cell = [&](const Segment& seg, const std::optional<Rational>& lo,
                       const std::optional<Rational>& hi) {
    if (seg.kind == Segment::Kind::MinusInf)
      throw internal_error("running min of a function unbounded below");
    if (seg.kind == Segment::Kind::PlusInf) {
      if (best.is_plus_inf())
        rev_segments.push_back(Segment::plus_inf());
      else
        rev_segments.push_back(Segment::line(0, best.finite()));
      return;
    }
    // Linear piece.
    if (seg.slope.sign() < 0) {
      if (!hi) throw internal_error("running min of a function unbounded below");
      ExtendedRational limit = seg.at(*hi);
      ExtendedRational level = min(limit, best);
      rev_segments.push_back(Segment::line(0, level.finite()));
      best = level;
      return;
    }
    if (seg.slope.is_zero()) {
      ExtendedRational level = min(ExtendedRational(seg.intercept), best);
      rev_segments.push_back(Segment::line(0, level.finite()));
      best = level;
      return;
    }
    // Rising piece: min(f(x), best), possibly split at the crossing.
    if (best.is_plus_inf()) {
      rev_segments.push_back(seg);
    } else {
      Rational cross = (best.finite() - seg.intercept) / seg.slope;
      bool inside = (!lo || *lo < cross) && (!hi || cross < *hi);
      if (!inside) {
        Rational probe = cell_probe(lo, hi);
        bool line_below = seg.slope * probe + seg.intercept <= best.finite();
        rev_segments.push_back(line_below ? seg : Segment::line(0, best.finite()));
      } else {
        // Right of the crossing the constant wins (line is rising).
        rev_segments.push_back(Segment::line(0, best.finite()));
        rev_knots.push_back(cross);
        rev_values.push_back(best);
        rev_segments.push_back(seg);
      }
    }
    if (lo) best = min(best, seg.at(*lo));
  };

  size_t n = knots_.size();
  for (size_t ri = 0; ri <= n; ++ri) {
    size_t i = n - ri;  // cell index, right to left
    std::optional<Rational> lo = i == 0 ? std::nullopt : std::optional<Rational>(knots_[i - 1]);
    std::optional<Rational> hi = i == n ? std::nullopt : std::optional<Rational>(knots_[i]);
    emit_cell(segments_[i], lo, hi);
    if (i > 0) {
      best = min(best, knot_values_[i - 1]);
      rev_knots.push_back(knots_[i - 1]);
      rev_values.push_back(best);
    }
  }

  std::reverse(rev_segments.begin(), rev_segments.end());
  std::reverse(rev_knots.begin(), rev_knots.end());
  std::reverse(rev_values.begin(), rev_values.end());
  return make(std::move(rev_knots), std::move(rev_segments), std::move(rev_values));
}

Rational PiecewiseLinear::integral(const Rational& a, const Rational& b) const {
  if (b < a) throw internal_error("integral with reversed bounds");
  Rational total = 0;
  size_t n = knots_.size();
  for (size_t i = 0; i <= n; ++i) {
    Rational lo = i == 0 ? a : max(a, knots_[i - 1]);
    Rational hi = i == n ? b : min(b, knots_[i]);
    if (!(lo < hi)) continue;
    const Segment& s = segments_[i];
    if (!s.is_linear()) throw internal_error("integrating an infinite piece");
    total += s.slope * (hi * hi - lo * lo) / 2 + s.intercept * (hi - lo);
  }
  return total;
}

Rational PiecewiseLinear::integral_product(const PiecewiseLinear& g, const Rational& a,
                                           const Rational& b) const {
  if (b < a) throw internal_error("integral with reversed bounds");
  std::vector<Rational> cuts = merged_knots(*this, g);
  std::vector<size_t> fs = cells_to_segments(*this, cuts);
  std::vector<size_t> gs = cells_to_segments(g, cuts);
  Rational total = 0;
  for (size_t i = 0; i <= cuts.size(); ++i) {
    Rational lo = i == 0 ? a : max(a, cuts[i - 1]);
    Rational hi = i == cuts.size() ? b : min(b, cuts[i]);
    if (!(lo < hi)) continue;
    const Segment& x = segments_[fs[i]];
    const Segment& y = g.segments()[gs[i]];
    if (x.is_zero() || y.is_zero()) continue;
    if (!x.is_linear() || !y.is_linear())
      throw internal_error("integrating a product with an infinite factor");
    total += x.slope * y.slope * (hi * hi * hi - lo * lo * lo) / 3 +
             (x.slope * y.intercept + y.slope * x.intercept) * (hi * hi - lo * lo) / 2 +
             x.intercept * y.intercept * (hi - lo);
  }
  return total;
}

bool PiecewiseLinear::is_identically_zero() const {
  return knots_.empty() && segments_.size() == 1 && segments_[0].is_zero();
}

bool PiecewiseLinear::is_finite_everywhere() const {
  for (const auto& s : segments_)
    if (!s.is_linear()) return false;
  for (const auto& v : knot_values_)
    if (!v.is_finite()) return false;
  return true;
}

std::optional<std::pair<Rational, Rational>> PiecewiseLinear::support_bounds() const {
  if (knots_.empty()) {
    if (segments_[0].is_zero()) return std::nullopt;
    throw internal_error("function is not compactly supported");
  }
  if (!segments_.front().is_zero() || !segments_.back().is_zero())
    throw internal_error("function is not compactly supported");
  return std::make_pair(knots_.front(), knots_.back());
}

PiecewiseLinear::MinInfo PiecewiseLinear::global_min() const {
  MinInfo info{ExtendedRational::infinity(), std::nullopt};
  auto consider = [&](const ExtendedRational& v, const std::optional<Rational>& point) {
    if (v < info.value) {
      info.value = v;
      info.argmin = point;
    } else if (v == info.value && !info.argmin && point) {
      info.argmin = point;
    }
  };
  size_t n = knots_.size();
  for (size_t i = 0; i < n; ++i) consider(knot_values_[i], knots_[i]);
  for (size_t i = 0; i <= n; ++i) {
    const Segment& s = segments_[i];
    std::optional<Rational> lo = i == 0 ? std::nullopt : std::optional<Rational>(knots_[i - 1]);
    std::optional<Rational> hi = i == n ? std::nullopt : std::optional<Rational>(knots_[i]);
    switch (s.kind) {
      case Segment::Kind::PlusInf:
        break;
      case Segment::Kind::MinusInf:
        consider(ExtendedRational::minus_infinity(), std::nullopt);
        break;
      case Segment::Kind::Linear:
        if (s.slope.is_zero()) {
          consider(ExtendedRational(s.intercept), cell_probe(lo, hi));
        } else if (s.slope.sign() > 0) {
          if (!lo)
            consider(ExtendedRational::minus_infinity(), std::nullopt);
          else
            consider(s.at(*lo), std::nullopt);  // limit, not attained here
        } else {
          if (!hi)
            consider(ExtendedRational::minus_infinity(), std::nullopt);
          else
            consider(s.at(*hi), std::nullopt);
        }
        break;
    }
  }
  return info;
}

IntervalUnion PiecewiseLinear::sublevel_set(const Rational& z, bool strict_closure) const {
  IntervalUnion out;
  size_t n = knots_.size();
  auto add_cell = [&](const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    if (!lo || !hi) throw input_error("sublevel set is unbounded");
    out.add(*lo, *hi);
  };
  for (size_t i = 0; i <= n; ++i) {
    const Segment& s = segments_[i];
    std::optional<Rational> lo = i == 0 ? std::nullopt : std::optional<Rational>(knots_[i - 1]);
    std::optional<Rational> hi = i == n ? std::nullopt : std::optional<Rational>(knots_[i]);
    switch (s.kind) {
      case Segment::Kind::PlusInf:
        break;
      case Segment::Kind::MinusInf:
        add_cell(lo, hi);
        break;
      case Segment::Kind::Linear: {
        if (s.slope.is_zero()) {
          bool in = strict_closure ? s.intercept < z : s.intercept <= z;
          if (in) add_cell(lo, hi);
          break;
        }
        Rational cross = (z - s.intercept) / s.slope;
        if (s.slope.sign() > 0) {
          // in-set to the left of the crossing
          Rational upper = hi ? min(*hi, cross) : cross;
          if (!lo) throw input_error("sublevel set is unbounded");
          if (*lo < upper) out.add(*lo, upper);
        } else {
          Rational lower = lo ? max(*lo, cross) : cross;
          if (!hi) throw input_error("sublevel set is unbounded");
          if (lower < *hi) out.add(lower, *hi);
        }
        break;
      }
    }
  }
  for (size_t i = 0; i < n; ++i) {
    bool in = knot_values_[i].is_finite() &&
              (strict_closure ? knot_values_[i].finite() < z : knot_values_[i].finite() <= z);
    if (in) out.add(knots_[i], knots_[i]);
  }
  if (!strict_closure) {
    // The result must be exactly {x : f(x) <= z}; with lower-semicontinuous
    // point values every closure point is a member.
    for (const auto& iv : out.intervals()) {
      if (!(value(iv.lo) <= ExtendedRational(z)) || !(value(iv.hi) <= ExtendedRational(z)))
        throw internal_error("sublevel set is not closed (non-lsc point values)");
    }
  }
  return out;
}

std::vector<IntervalUnion::Interval> PiecewiseLinear::level_components(const Rational& z) const {
  IntervalUnion out;
  size_t n = knots_.size();
  for (size_t i = 0; i <= n; ++i) {
    const Segment& s = segments_[i];
    std::optional<Rational> lo = i == 0 ? std::nullopt : std::optional<Rational>(knots_[i - 1]);
    std::optional<Rational> hi = i == n ? std::nullopt : std::optional<Rational>(knots_[i]);
    if (!s.is_linear()) continue;
    if (s.slope.is_zero()) {
      if (s.intercept == z) {
        if (!lo || !hi) throw input_error("level set is unbounded");
        out.add(*lo, *hi);
      }
      continue;
    }
    Rational cross = (z - s.intercept) / s.slope;
    if ((!lo || *lo < cross) && (!hi || cross < *hi)) out.add(cross, cross);
  }
  for (size_t i = 0; i < n; ++i)
    if (knot_values_[i] == ExtendedRational(z)) out.add(knots_[i], knots_[i]);
  return out.intervals();
}

bool operator==(const PiecewiseLinear& a, const PiecewiseLinear& b) {
  if (a.knots_ != b.knots_) return false;
  if (a.knot_values_.size() != b.knot_values_.size()) return false;
  for (size_t i = 0; i < a.knot_values_.size(); ++i)
    if (a.knot_values_[i] != b.knot_values_[i]) return false;
  if (a.segments_.size() != b.segments_.size()) return false;
  for (size_t i = 0; i < a.segments_.size(); ++i)
    if (!(a.segments_[i] == b.segments_[i])) return false;
  return true;
}

std::string PiecewiseLinear::str() const {
  std::ostringstream os;
  auto seg_str = [](const Segment& s) -> std::string {
    switch (s.kind) {
      case Segment::Kind::PlusInf:
        return "+inf";
      case Segment::Kind::MinusInf:
        return "-inf";
      default:
        return s.slope.str() + "*x+" + s.intercept.str();
    }
  };
  os << "[" << seg_str(segments_[0]);
  for (size_t i = 0; i < knots_.size(); ++i)
    os << " |" << knots_[i].str() << ":" << knot_values_[i].str() << "| "
       << seg_str(segments_[i + 1]);
  os << "]";
  return os.str();
}

PiecewiseLinear::Builder& PiecewiseLinear::Builder::segment(const Segment& s) {
  if (!expecting_segment_) throw internal_error("builder expected a knot");
  segments_.push_back(s);
  expecting_segment_ = false;
  return *this;
}

PiecewiseLinear::Builder& PiecewiseLinear::Builder::knot(const Rational& x,
                                                         const ExtendedRational& value) {
  if (expecting_segment_) throw internal_error("builder expected a segment");
  if (!knots_.empty() && !(knots_.back() < x))
    throw internal_error("builder knots not increasing");
  knots_.push_back(x);
  values_.push_back(value);
  expecting_segment_ = true;
  return *this;
}

PiecewiseLinear PiecewiseLinear::Builder::finish() {
  if (expecting_segment_) throw internal_error("builder must end with a segment");
  return PiecewiseLinear::make(std::move(knots_), std::move(segments_), std::move(values_));
}

}  // namespace flowtime
