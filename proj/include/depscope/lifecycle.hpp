#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "depscope/analysis.hpp"
#include "depscope/ingest.hpp"
#include "depscope/model.hpp"

namespace depscope {

struct SmoothingConfig {
  double alpha = 0.6;
  std::int64_t default_interval_days = 90;
  std::int64_t min_releases = 3;

  // Throws InvalidArgument unless 0 < alpha < 1 and both counts are positive.
  void validate() const;
};

// Day gaps between consecutive releases, oldest first; empty for a single
// release.
std::vector<std::int64_t> release_intervals(const ReleaseHistory& h);

// Exponentially smoothed release interval. The most recent interval carries
// weight alpha, the one before alpha*(1-alpha), and so on; weights are not
// renormalised. Histories with fewer than cfg.min_releases releases get
// cfg.default_interval_days.
double last_release_interval(const ReleaseHistory& h, const SmoothingConfig& cfg);

// Last release date plus the smoothed interval rounded half-up to days.
Date expected_release_date(const ReleaseHistory& h, const SmoothingConfig& cfg);

// Halted iff the expected release date is strictly before `time`.
LibraryStatus library_status(const ReleaseHistory& h, const Date& time,
                             const SmoothingConfig& cfg);

// Outdated iff a release dated after g's release and no later than `time`
// exists. Throws UnknownVersion when g's version is not in the history.
InstanceStatus instance_status(const Gav& g, const ReleaseHistory& h, const Date& time);

LifecycleStatus lifecycle_status(const Gav& g, const ReleaseHistory& h, const Date& time,
                                 const SmoothingConfig& cfg);

struct LifecycleOptions {
  SmoothingConfig smoothing;
  // Lenient: libraries without history are treated as alive rather than
  // raising MissingHistory.
  bool lenient_history = false;
};

// Nodes reached through a halted direct dependency: every node whose strict
// ancestor chain (root excluded) contains a depth-1 node of a halted library.
std::set<Gav> detect_via_halted(const AnnotatedTree& at, const HistoryMap& histories,
                                const Date& time, const LifecycleOptions& opts);

}  // namespace depscope
