#include "fuzzyrep/tuner.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzyrep/errors.hpp"

namespace fuzzyrep {

namespace {

double criterion_value(const TermCriteria& tc, Criterion criterion) {
  switch (criterion) {
    case Criterion::Frequency: return tc.freq_norm;
    case Criterion::Emphasis: return tc.emph_norm;
    case Criterion::Title: return tc.title_norm;
  }
  return 0.0;
}

// Quantile over an ascending range.
double quantile(std::span<const double> sorted, double q) {
  q = std::clamp(q, 0.0, 1.0);
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::span<const double> tail_from(const DistributionProfile& profile, double threshold) {
  const auto first = std::lower_bound(profile.values.begin(), profile.values.end(), threshold);
  return {first, profile.values.end()};
}

}  // namespace

std::string to_string(Criterion criterion) {
  switch (criterion) {
    case Criterion::Frequency: return "frequency";
    case Criterion::Emphasis: return "emphasis";
    case Criterion::Title: return "title";
  }
  return "?";
}

double DistributionProfile::percentile(double q) const { return quantile(values, q); }

double DistributionProfile::fraction_below(double x) const {
  const auto it = std::lower_bound(values.begin(), values.end(), x);
  return static_cast<double>(it - values.begin()) / static_cast<double>(values.size());
}

double DistributionProfile::fraction_at_most(double x) const {
  const auto it = std::upper_bound(values.begin(), values.end(), x);
  return static_cast<double>(it - values.begin()) / static_cast<double>(values.size());
}

DistributionProfile make_profile(Criterion criterion, std::vector<double> values) {
  std::erase_if(values, [](double v) { return !(v > 0.0); });
  if (values.empty()) throw EmptyProfile("no nonzero " + to_string(criterion) + " values");
  std::sort(values.begin(), values.end());
  DistributionProfile profile;
  profile.criterion = criterion;
  profile.values = std::move(values);
  profile.frac_below_02 = profile.fraction_below(0.2);
  return profile;
}

DistributionProfile profile_criterion(std::span<const DocCriteria> corpus, Criterion criterion) {
  std::vector<double> values;
  for (const DocCriteria& doc : corpus) {
    for (const auto& [term, tc] : doc) values.push_back(criterion_value(tc, criterion));
  }
  return make_profile(criterion, std::move(values));
}

CriterionProfiles profile_corpus(std::span<const DocCriteria> corpus) {
  CriterionProfiles profiles;
  auto attempt = [&](Criterion c, std::optional<DistributionProfile>& slot) {
    try {
      slot = profile_criterion(corpus, c);
    } catch (const EmptyProfile&) {
      slot.reset();
    }
  };
  attempt(Criterion::Frequency, profiles.frequency);
  attempt(Criterion::Emphasis, profiles.emphasis);
  attempt(Criterion::Title, profiles.title);
  return profiles;
}

bool power_law(const DistributionProfile& profile, const TunerOptions& options) {
  return profile.fraction_below(options.threshold) > options.majority;
}

std::vector<double> frequency_boundaries(const DistributionProfile& profile,
                                         const TunerOptions& options) {
  if (!power_law(profile, options)) {
    return {profile.percentile(0.2), profile.percentile(0.4), profile.percentile(0.6),
            profile.percentile(0.8)};
  }
  const double t = options.threshold;
  const auto tail = tail_from(profile, t);
  if (tail.empty()) {
    const double step = (1.0 - t) / 4.0;
    return {t, t + step, t + 2 * step, t + 3 * step};
  }
  // Equidistant percentiles between the threshold and 1: the tail quartiles.
  return {t, quantile(tail, 0.25), quantile(tail, 0.5), quantile(tail, 0.75)};
}

std::vector<double> emphasis_boundaries(const DistributionProfile& profile,
                                        const TunerOptions& options) {
  if (!power_law(profile, options)) {
    return {profile.percentile(0.05), profile.percentile(0.15), profile.percentile(0.55),
            profile.percentile(0.75)};
  }
  const double t = options.threshold;
  const auto tail = tail_from(profile, t);
  if (tail.empty()) {
    return {t, t + (1.0 - t) / 2.0, t + 3.0 * (1.0 - t) / 4.0, t + 7.0 * (1.0 - t) / 8.0};
  }
  return {t, quantile(tail, 0.5), quantile(tail, 0.75), quantile(tail, 0.875)};
}

std::vector<double> title_boundaries(const DistributionProfile& profile, const TunerOptions&) {
  const double lowest = profile.values.front();
  const double rank = profile.fraction_at_most(lowest);
  return {lowest, profile.percentile(0.5 * (rank + 1.0))};
}

bool separate_boundaries(std::vector<double>& edges, double epsilon) {
  const std::vector<double> before = edges;
  if (edges.empty()) return false;
  edges.front() = std::max(edges.front(), epsilon);
  for (std::size_t i = 1; i < edges.size(); ++i) {
    edges[i] = std::max(edges[i], edges[i - 1] + epsilon);
  }
  if (edges.back() > 1.0) {
    edges.back() = 1.0;
    for (std::size_t i = edges.size() - 1; i-- > 0;) {
      edges[i] = std::min(edges[i], edges[i + 1] - epsilon);
    }
  }
  return edges != before;
}

std::vector<FuzzySet> sets_from_boundaries(const std::vector<double>& e,
                                           const std::vector<std::string>& labels) {
  if (e.size() == 4 && labels.size() == 3) {
    return {{labels[0], {{0.0, 0.0, e[0], e[1]}}},
            {labels[1], {{e[0], e[1], e[2], e[3]}}},
            {labels[2], {{e[2], e[3], 1.0, 1.0}}}};
  }
  if (e.size() == 2 && labels.size() == 2) {
    return {{labels[0], {{0.0, 0.0, e[0], e[1]}}}, {labels[1], {{e[0], e[1], 1.0, 1.0}}}};
  }
  throw Error("expected 4 edges for 3 sets or 2 edges for 2 sets");
}

KnowledgeBase tune_afcc(const KnowledgeBase& base, const CriterionProfiles& profiles,
                        const TunerOptions& options, std::vector<TuningStep>* steps) {
  KnowledgeBase tuned = base;
  tuned.name = "afcc";
  tuned.meta["tuned-from"] = base.name.empty() ? "unnamed" : base.name;

  auto retune = [&](Criterion criterion, const std::optional<DistributionProfile>& profile,
                    const char* variable, const std::vector<std::string>& labels, auto edges_of) {
    TuningStep step{criterion, "untouched", {}, false};
    if (profile) {
      step.boundaries = edges_of(*profile, options);
      step.nudged = separate_boundaries(step.boundaries, options.epsilon);
      step.branch = criterion == Criterion::Title ? "title"
                    : power_law(*profile, options) ? "power-law"
                                                   : "uniform";
      tuned.variable(variable).sets = sets_from_boundaries(step.boundaries, labels);
    }
    if (steps) steps->push_back(std::move(step));
  };

  retune(Criterion::Frequency, profiles.frequency, "frequency", {"low", "medium", "high"},
         frequency_boundaries);
  retune(Criterion::Emphasis, profiles.emphasis, "emphasis", {"low", "medium", "high"},
         emphasis_boundaries);
  retune(Criterion::Title, profiles.title, "title", {"low", "high"}, title_boundaries);

  for (const char* name : {"frequency", "emphasis", "title"}) tuned.variable(name).validate();
  return tuned;
}

}  // namespace fuzzyrep
