#include "depscope/lifecycle.hpp"

#include <cmath>

#include "depscope/error.hpp"

namespace depscope {

void SmoothingConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  if (default_interval_days <= 0)
    throw Error(ErrorCode::InvalidArgument, "default interval must be positive");
  if (min_releases <= 0)
    throw Error(ErrorCode::InvalidArgument, "min releases must be positive");
}

std::vector<std::int64_t> release_intervals(const ReleaseHistory& h) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 1; i < h.releases.size(); ++i)
    out.push_back(h.releases[i].date.days_since(h.releases[i - 1].date));
  return out;
}

double last_release_interval(const ReleaseHistory& h, const SmoothingConfig& cfg) {
  if (static_cast<std::int64_t>(h.releases.size()) < cfg.min_releases)
    return static_cast<double>(cfg.default_interval_days);
  auto intervals = release_intervals(h);
  double sum = 0.0;
  double weight = cfg.alpha;
  for (auto it = intervals.rbegin(); it != intervals.rend(); ++it) {
    sum += weight * static_cast<double>(*it);
    weight *= 1.0 - cfg.alpha;
  }
  return sum;
}

Date expected_release_date(const ReleaseHistory& h, const SmoothingConfig& cfg) {
  auto days = static_cast<std::int64_t>(std::floor(last_release_interval(h, cfg) + 0.5));
  return h.last().date.plus_days(days);
}

LibraryStatus library_status(const ReleaseHistory& h, const Date& time,
                             const SmoothingConfig& cfg) {
  return expected_release_date(h, cfg) < time ? LibraryStatus::Halted : LibraryStatus::Alive;
}

InstanceStatus instance_status(const Gav& g, const ReleaseHistory& h, const Date& time) {
  const Release* own = h.find(g.version());
  if (!own) throw Error(ErrorCode::UnknownVersion, g.to_string());
  for (const auto& r : h.releases)
    if (r.date <= time && r.date > own->date) return InstanceStatus::Outdated;
  return InstanceStatus::UpToDate;
}

LifecycleStatus lifecycle_status(const Gav& g, const ReleaseHistory& h, const Date& time,
                                 const SmoothingConfig& cfg) {
  return LifecycleStatus{library_status(h, time, cfg), instance_status(g, h, time),
                         expected_release_date(h, cfg)};
}

std::set<Gav> detect_via_halted(const AnnotatedTree& at, const HistoryMap& histories,
                                const Date& time, const LifecycleOptions& opts) {
  std::set<Gav> out;
  for (const auto& direct : at.tree.root.children) {
    auto it = histories.find(direct.gav.ga());
    if (it == histories.end()) {
      if (opts.lenient_history) continue;
      throw Error(ErrorCode::MissingHistory, direct.gav.ga().to_string());
    }
    if (library_status(it->second, time, opts.smoothing) != LibraryStatus::Halted) continue;
    DependencyTree sub{direct, std::nullopt};
    walk(sub, [&](const DependencyNode& node, const auto& ancestors) {
      if (!ancestors.empty()) out.insert(node.gav);
    });
  }
  return out;
}

}  // namespace depscope
