#pragma once

// Newton polygons of polynomials and truncated series over a p-adic field.

#include <sstream>
#include <string>
#include <vector>

#include "padic.hpp"

namespace pahodge {

struct NewtonSegment {
  Valuation slope;  // (v(a_j) - v(a_i)) / (j - i)
  int length = 0;
};

/// Lower convex hull of {(k, v(a_k)) : a_k != 0}.  Segments are stored with
/// strictly increasing slopes; a segment of slope s and length l accounts
/// for l zeros of valuation -s.  Coefficients a_0..a_{m-1} vanishing puts a
/// zero of order m at the origin, recorded separately.
struct NewtonPolygon {
  int zeros_at_origin = 0;
  int last_index = 0;
  std::vector<NewtonSegment> segments;

  bool has_finite_slopes() const { return !segments.empty(); }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < segments.size(); ++i)
      os << (i ? ", " : "") << "(" << segments[i].slope << ", " << segments[i].length << ")";
    os << "]";
    if (zeros_at_origin > 0) os << " zeros at origin: " << zeros_at_origin;
    return os.str();
  }
};

inline NewtonPolygon newton_polygon(const std::vector<Padic>& coeffs) {
  struct Pt {
    long k;
    Valuation v;
  };
  std::vector<Pt> pts;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) pts.push_back({static_cast<long>(k), coeffs[k].valuation()});
  if (pts.empty()) throw DomainError("Newton polygon of a series that is zero at the working precision");

  // cross((b - a), (c - a)) <= 0 means b lies on or above segment a-c.
  auto not_below = [](const Pt& a, const Pt& b, const Pt& c) {
    const Valuation lhs = Valuation((b.v - a.v).numerator() * (c.k - a.k), (b.v - a.v).denominator());
    const Valuation rhs = Valuation((c.v - a.v).numerator() * (b.k - a.k), (c.v - a.v).denominator());
    return lhs >= rhs;
  };
  std::vector<Pt> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2 && not_below(hull[hull.size() - 2], hull.back(), pt)) hull.pop_back();
    hull.push_back(pt);
  }
  NewtonPolygon np;
  np.zeros_at_origin = static_cast<int>(pts.front().k);
  np.last_index = static_cast<int>(pts.back().k);
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const long len = hull[i + 1].k - hull[i].k;
    const Valuation dv = hull[i + 1].v - hull[i].v;
    np.segments.push_back({Valuation(dv.numerator(), dv.denominator() * len), static_cast<int>(len)});
  }
  return np;
}

}  // namespace pahodge
