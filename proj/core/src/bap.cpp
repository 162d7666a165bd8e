#include "lipfree/bap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lipfree {

std::string SchemeSpec::id() const {
  if (scheme == WeightScheme::inverse_distance) return "inv-dist";
  std::string s = std::to_string(p);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return "shepard-" + s;
}

SchemeSpec SchemeSpec::parse(const std::string& name, double p) {
  if (name == "inv-dist") return {WeightScheme::inverse_distance, p};
  if (name == "shepard-p" || name == "shepard") {
    if (!(p > 0.0)) throw std::invalid_argument("shepard exponent must be positive");
    return {WeightScheme::shepard, p};
  }
  if (name.rfind("shepard-", 0) == 0) {
    const double q = std::stod(name.substr(8));
    if (!(q > 0.0)) throw std::invalid_argument("shepard exponent must be positive");
    return {WeightScheme::shepard, q};
  }
  throw std::invalid_argument("unknown weight scheme '" + name + "'");
}

GentlePartition::GentlePartition(std::vector<std::size_t> subset, std::vector<std::size_t> outside,
                                 std::vector<double> weights, SchemeSpec scheme)
    : subset_(std::move(subset)), outside_(std::move(outside)), weights_(std::move(weights)), scheme_(scheme) {
  if (weights_.size() != subset_.size() * outside_.size())
    throw std::invalid_argument("GentlePartition: weight table size mismatch");
  for (double w : weights_)
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("GentlePartition: weights must be finite and >= 0");
}

SpaceFunction make_space_function(const FinitePointedMetricSpace& space, std::vector<double> values) {
  if (values.size() != space.size()) throw std::invalid_argument("space function: one value per point required");
  std::vector<std::size_t> pts(space.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = i;
  return SpaceFunction(std::move(pts), std::move(values), space.origin());
}

double lip_constant(const SpaceFunction& f, const FinitePointedMetricSpace& space) {
  if (f.points.size() < 2) return 0.0;
  DistanceMatrix d(f.points.size());
  for (std::size_t i = 0; i < f.points.size(); ++i)
    for (std::size_t j = i + 1; j < f.points.size(); ++j) d.set_symmetric(i, j, space(f.points[i], f.points[j]));
  return lip_constant(f.values, d);
}

namespace {

void check_subset(const std::vector<std::size_t>& subset, std::size_t size, std::size_t origin) {
  std::vector<bool> seen(size, false);
  for (auto i : subset) {
    if (i >= size) throw std::invalid_argument("subset index out of range");
    if (seen[i]) throw std::invalid_argument("subset has a repeated index");
    seen[i] = true;
  }
  if (!seen[origin]) throw std::invalid_argument("subset must contain the origin");
}

}  // namespace

SpaceFunction restrict_to(const SpaceFunction& f, const std::vector<std::size_t>& subset) {
  std::size_t origin_pos = f.points.size();
  std::vector<double> vals;
  vals.reserve(subset.size());
  for (std::size_t s = 0; s < subset.size(); ++s) {
    auto it = std::find(f.points.begin(), f.points.end(), subset[s]);
    if (it == f.points.end()) throw std::invalid_argument("restrict: subset point not in the domain");
    const auto pos = static_cast<std::size_t>(it - f.points.begin());
    if (pos == f.origin) origin_pos = s;
    vals.push_back(f.values[pos]);
  }
  if (origin_pos == f.points.size()) throw std::invalid_argument("restrict: subset must contain the origin");
  return SpaceFunction(subset, std::move(vals), origin_pos);
}

GentlePartition build_partition(const FinitePointedMetricSpace& space, const std::vector<std::size_t>& subset,
                                const SchemeSpec& scheme) {
  check_subset(subset, space.size(), space.origin());
  std::vector<bool> in_subset(space.size(), false);
  for (auto i : subset) in_subset[i] = true;
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (!in_subset[i]) outside.push_back(i);

  std::vector<double> weights(outside.size() * subset.size(), 0.0);
  for (std::size_t o = 0; o < outside.size(); ++o) {
    const std::size_t x = outside[o];
    double dist_to_set = std::numeric_limits<double>::infinity();
    for (auto w : subset) dist_to_set = std::min(dist_to_set, space(x, w));
    if (!(dist_to_set > 0.0)) throw std::invalid_argument("build_partition: degenerate distance to the subset");
    double total = 0.0;
    for (std::size_t s = 0; s < subset.size(); ++s) {
      const double d = space(x, subset[s]);
      double raw;
      if (scheme.scheme == WeightScheme::inverse_distance) {
        const double gap = std::max(0.0, 2.0 * dist_to_set - d);
        raw = gap * gap;
      } else {
        raw = std::pow(d, -scheme.p);
      }
      weights[o * subset.size() + s] = raw;
      total += raw;
    }
    if (!(total > 0.0) || !std::isfinite(total)) throw std::invalid_argument("build_partition: degenerate weights");
    for (std::size_t s = 0; s < subset.size(); ++s) weights[o * subset.size() + s] /= total;
  }
  return GentlePartition(subset, std::move(outside), std::move(weights), scheme);
}

SpaceFunction extend(const SpaceFunction& on_subset, const GentlePartition& part,
                     const FinitePointedMetricSpace& space) {
  if (on_subset.points != part.subset()) throw std::invalid_argument("extend: function must live on the partition subset");
  std::vector<double> values(space.size(), 0.0);
  for (std::size_t s = 0; s < part.subset().size(); ++s) values[part.subset()[s]] = on_subset.values[s];
  for (std::size_t o = 0; o < part.outside().size(); ++o) {
    double v = 0.0;
    for (std::size_t s = 0; s < part.subset().size(); ++s) v += on_subset.values[s] * part.weight(o, s);
    values[part.outside()[o]] = v;
  }
  return make_space_function(space, std::move(values));
}

GentlenessEstimate gentleness(const GentlePartition& part, const FinitePointedMetricSpace& space) {
  const std::size_t k = space.size();
  const std::size_t ns = part.subset().size();
  // Dense psi rows per point; rows for points of X stay zero.
  std::vector<double> psi(k * ns, 0.0);
  for (std::size_t o = 0; o < part.outside().size(); ++o)
    for (std::size_t s = 0; s < ns; ++s) psi[part.outside()[o] * ns + s] = part.weight(o, s);

  GentlenessEstimate est;
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y) {
      if (x == y) continue;
      double num = 0.0;
      for (std::size_t s = 0; s < ns; ++s)
        num += std::abs(psi[x * ns + s] - psi[y * ns + s]) * space(part.subset()[s], x);
      const double ratio = num / space(x, y);
      if (ratio > est.k_hat) {
        est.k_hat = ratio;
        est.worst_pair = {x, y};
      }
    }
  return est;
}

SpaceFunction bap_operator(const SpaceFunction& f, const std::vector<std::size_t>& subset,
                           const FinitePointedMetricSpace& space, const SchemeSpec& scheme) {
  return extend(restrict_to(f, subset), build_partition(space, subset, scheme), space);
}

std::size_t doubling_estimate(const FinitePointedMetricSpace& space) {
  const std::size_t k = space.size();
  std::vector<double> radii;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) radii.push_back(space(i, j));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  std::size_t best = 1;
  std::vector<std::size_t> ball;
  std::vector<bool> covered;
  // closed == true models a radius infinitesimally above r: B(p, r+) = {d <= r}
  // with half balls {d <= r/2}; closed == false is the open ball at r.
  for (std::size_t p = 0; p < k; ++p)
    for (double r : radii)
      for (bool closed : {false, true}) {
        auto inside = [closed](double d, double rad) { return closed ? d <= rad : d < rad; };
        ball.clear();
        for (std::size_t q = 0; q < k; ++q)
          if (inside(space(p, q), r)) ball.push_back(q);
        covered.assign(ball.size(), false);
        std::size_t remaining = ball.size();
        std::size_t count = 0;
        while (remaining > 0) {
          std::size_t pick = ball.size();
          std::size_t pick_gain = 0;
          for (std::size_t c = 0; c < ball.size(); ++c) {
            if (covered[c]) continue;
            std::size_t gain = 0;
            for (std::size_t q = 0; q < ball.size(); ++q)
              if (!covered[q] && inside(space(ball[c], ball[q]), r / 2.0)) ++gain;
            if (gain > pick_gain) {
              pick_gain = gain;
              pick = c;
            }
          }
          for (std::size_t q = 0; q < ball.size(); ++q)
            if (!covered[q] && inside(space(ball[pick], ball[q]), r / 2.0)) {
              covered[q] = true;
              --remaining;
            }
          ++count;
        }
        best = std::max(best, count);
      }
  return best;
}

std::vector<std::size_t> farthest_point_order(const FinitePointedMetricSpace& space) {
  const std::size_t k = space.size();
  std::vector<std::size_t> order{space.origin()};
  std::vector<double> gap(k);
  std::vector<bool> chosen(k, false);
  chosen[space.origin()] = true;
  for (std::size_t i = 0; i < k; ++i) gap[i] = space(i, space.origin());
  while (order.size() < k) {
    std::size_t next = k;
    for (std::size_t i = 0; i < k; ++i)
      if (!chosen[i] && (next == k || gap[i] > gap[next])) next = i;
    order.push_back(next);
    chosen[next] = true;
    for (std::size_t i = 0; i < k; ++i) gap[i] = std::min(gap[i], space(i, next));
  }
  return order;
}

double covering_radius(const FinitePointedMetricSpace& space, const std::vector<std::size_t>& subset) {
  double worst = 0.0;
  for (std::size_t x = 0; x < space.size(); ++x) {
    double d = std::numeric_limits<double>::infinity();
    for (auto s : subset) d = std::min(d, space(x, s));
    worst = std::max(worst, d);
  }
  return worst;
}

std::vector<BapRow> bap_chain(const SpaceFunction& f, const FinitePointedMetricSpace& space, const SchemeSpec& scheme) {
  const auto order = farthest_point_order(space);
  const double lip_f = lip_constant(f, space);
  std::vector<BapRow> rows;
  for (std::size_t n = 1; n < order.size(); ++n) {
    std::vector<std::size_t> subset(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n + 1));
    std::sort(subset.begin(), subset.end());
    const auto part = build_partition(space, subset, scheme);
    const auto sf = extend(restrict_to(f, subset), part, space);

    BapRow row;
    row.size = subset.size();
    row.k_hat = gentleness(part, space).k_hat;
    row.lip_ratio = lip_f > 0.0 ? lip_constant(sf, space) / lip_f : 0.0;
    row.covering_radius = covering_radius(space, subset);
    for (std::size_t x = 0; x < space.size(); ++x) row.max_error = std::max(row.max_error, std::abs(sf.values[x] - f.values[x]));
    for (auto s : subset)
      if (sf.values[s] != f.values[s]) row.fixes_subset = false;
    for (std::size_t o = 0; o < part.outside().size(); ++o) {
      double total = 0.0;
      for (std::size_t s = 0; s < subset.size(); ++s) total += part.weight(o, s);
      if (std::abs(total - 1.0) > 1e-12) row.normalized = false;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lipfree
