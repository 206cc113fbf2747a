#pragma once

// Closed-form probability that the accumulated received count exceeds the
// detection threshold, given the mean-count history of every droplet class.

#include <span>
#include <vector>

#include "dropletmc/model_params.hpp"
#include "dropletmc/receiver.hpp"

namespace dropletmc {

// Geometry of the current step. All history terms are scaled by the factor
// built from these values.
struct StepGeometry {
  double v_c = 0.0;
  double overlap_area = 0.0;  // A_RC
  double A_R = 0.0;
  double r_cloud = 0.0;
  double eta = 0.0;
  double dt = 0.0;
  OverlapBranch branch = OverlapBranch::none;
};

struct ExposureMoments {
  double omega1 = 0.0;            // sum floor(f(A_RC) lambda + 1/2)
  double omega2 = 0.0;            // sum floor(f(A_R) lambda + 1/2)
  double variance_partial = 0.0;  // sum floor(f^2 lambda + 1/2), f of the active branch
  OverlapBranch branch = OverlapBranch::none;

  // Omega of the active branch; 0 when there is no overlap.
  double mean() const;
};

ExposureMoments exposure_moments(std::span<const std::vector<double>> lambda_history,
                                 const StepGeometry& geometry);

// Upper tail of the standard normal.
double q_function(double x);

// Gaussian density of N_R with mean() and variance_partial. Zero for
// OverlapBranch::none. With zero variance the density is 0 away from the
// mean and DegenerateDistribution is thrown at the mean.
double received_pdf(double n, const ExposureMoments& moments);

// P(N_R > gamma). as_printed evaluates Q(gamma/Omega - Omega); the
// moment-consistent form evaluates Q((gamma - Omega)/sqrt(variance)).
// Degenerate inputs (Omega or variance zero) give 1 if gamma < Omega, else 0.
double infection_probability(double gamma, const ExposureMoments& moments, ProbabilityForm form);

}  // namespace dropletmc
