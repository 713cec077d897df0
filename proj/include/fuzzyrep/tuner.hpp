#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzyrep/criteria.hpp"
#include "fuzzyrep/knowledge_base.hpp"

namespace fuzzyrep {

enum class Criterion { Frequency, Emphasis, Title };

std::string to_string(Criterion criterion);

/// Corpus-wide pool of one criterion's nonzero normalized values.
struct DistributionProfile {
  Criterion criterion = Criterion::Frequency;
  std::vector<double> values;  // ascending, each in (0, 1]
  double frac_below_02 = 0.0;

  /// Empirical quantile, linear interpolation between order statistics.
  double percentile(double q) const;

  /// Fraction of values strictly below / at most `x`.
  double fraction_below(double x) const;
  double fraction_at_most(double x) const;
};

/// Builds a profile from raw values; zeros are dropped. Throws EmptyProfile
/// when nothing remains.
DistributionProfile make_profile(Criterion criterion, std::vector<double> values);

/// Pools the criterion over every (document, term) pair of the corpus.
DistributionProfile profile_criterion(std::span<const DocCriteria> corpus, Criterion criterion);

struct TunerOptions {
  double threshold = 0.2;  // "low" normalized value
  double majority = 0.55;  // share below `threshold` that signals a power law
  double epsilon = 1e-6;   // minimal gap when tied boundaries are separated
};

/// Profiles per criterion; std::nullopt leaves that criterion's sets as-is.
struct CriterionProfiles {
  std::optional<DistributionProfile> frequency;
  std::optional<DistributionProfile> emphasis;
  std::optional<DistributionProfile> title;
};

/// Profiles the three criteria, leaving empty ones unset.
CriterionProfiles profile_corpus(std::span<const DocCriteria> corpus);

bool power_law(const DistributionProfile& profile, const TunerOptions& options = {});

/// Four edges for frequency. Power law: the threshold, then tail quartiles of
/// the values >= threshold. Otherwise the 20/40/60/80th percentiles.
std::vector<double> frequency_boundaries(const DistributionProfile& profile,
                                         const TunerOptions& options = {});

/// Four edges for emphasis. Power law: the threshold, then tail percentiles
/// that leave successive halves (1/2, 1/4, 1/8) of the tail between edges.
/// Otherwise the 5/15/55/75th percentiles.
std::vector<double> emphasis_boundaries(const DistributionProfile& profile,
                                        const TunerOptions& options = {});

/// Two edges for title: the smallest value, then the percentile halfway
/// between its rank and 1.
std::vector<double> title_boundaries(const DistributionProfile& profile,
                                     const TunerOptions& options = {});

/// Makes edges strictly increasing inside (0, 1], nudging ties apart by
/// `epsilon`. Returns true when anything moved.
bool separate_boundaries(std::vector<double>& edges, double epsilon);

/// Three sets from four edges: low (0,0,p1,p2), medium (p1,p2,p3,p4),
/// high (p3,p4,1,1). Two sets from two edges: low (0,0,p1,p2),
/// high (p1,p2,1,1). Labels come from `labels` in that order.
std::vector<FuzzySet> sets_from_boundaries(const std::vector<double>& edges,
                                           const std::vector<std::string>& labels);

struct TuningStep {
  Criterion criterion;
  std::string branch;  // "power-law", "uniform", "title" or "untouched"
  std::vector<double> boundaries;
  bool nudged = false;
};

/// Returns a copy of `base` with the frequency, emphasis and title sets refit
/// to the corpus profiles; rules, position and importance are untouched.
KnowledgeBase tune_afcc(const KnowledgeBase& base, const CriterionProfiles& profiles,
                        const TunerOptions& options = {},
                        std::vector<TuningStep>* steps = nullptr);

}  // namespace fuzzyrep
