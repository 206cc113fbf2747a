#include "dropletmc/infection_probability.hpp"

#include <cmath>
#include <numbers>

#include "dropletmc/errors.hpp"

namespace dropletmc {

double ExposureMoments::mean() const {
  switch (branch) {
    case OverlapBranch::partial_overlap: return omega1;
    case OverlapBranch::encompassed: return omega2;
    case OverlapBranch::none: return 0.0;
  }
  return 0.0;
}

ExposureMoments exposure_moments(std::span<const std::vector<double>> lambda_history,
                                 const StepGeometry& geometry) {
  ExposureMoments out;
  out.branch = geometry.branch;
  if (!(geometry.r_cloud > 0.0)) return out;

  const double f1 = geometric_factor(geometry.v_c, geometry.overlap_area, geometry.r_cloud,
                                     geometry.eta, geometry.dt);
  const double f2 = geometric_factor(geometry.v_c, geometry.A_R, geometry.r_cloud, geometry.eta,
                                     geometry.dt);
  const double f_active = geometry.branch == OverlapBranch::encompassed ? f2 : f1;
  const double f_active_sq = f_active * f_active;

  for (const auto& history : lambda_history) {
    for (double lambda : history) {
      if (lambda < 0.0) throw InvalidParameter("exposure_moments: lambda must be >= 0");
      out.omega1 += std::floor(f1 * lambda + 0.5);
      out.omega2 += std::floor(f2 * lambda + 0.5);
      out.variance_partial += std::floor(f_active_sq * lambda + 0.5);
    }
  }
  return out;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double received_pdf(double n, const ExposureMoments& moments) {
  if (moments.branch == OverlapBranch::none) return 0.0;
  const double mean = moments.mean();
  const double var = moments.variance_partial;
  if (var <= 0.0) {
    if (n == mean) throw DegenerateDistribution("received_pdf: zero variance at the mean");
    return 0.0;
  }
  const double z = n - mean;
  return std::exp(-z * z / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double infection_probability(double gamma, const ExposureMoments& moments, ProbabilityForm form) {
  if (moments.branch == OverlapBranch::none) return 0.0;
  const double mean = moments.mean();
  const auto degenerate = [&] { return gamma < mean ? 1.0 : 0.0; };

  if (form == ProbabilityForm::as_printed) {
    if (mean <= 0.0) return degenerate();
    return q_function(gamma / mean - mean);
  }
  if (moments.variance_partial <= 0.0) return degenerate();
  return q_function((gamma - mean) / std::sqrt(moments.variance_partial));
}

}  // namespace dropletmc
