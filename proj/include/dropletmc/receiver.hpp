#pragma once

// Reception at the facial disc of the receiving human.
//
// The spherical cloud is cut by the plane x = x_R; the resulting circle is
// intersected with the receiver disc (radius r_R, centred at (y_R, z_R)).
// Droplets crossing the overlap are reconstructed per step, accumulated,
// rounded to whole droplets and compared against the threshold gamma.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dropletmc/model_params.hpp"
#include "dropletmc/trajectory.hpp"

namespace dropletmc {

enum class OverlapBranch {
  none,             // no reception
  partial_overlap,  // overlap area below A_R
  encompassed,      // cloud cross-section covers the whole disc
};

std::string_view to_string(OverlapBranch branch);

struct ReceptionRecord {
  double t = 0.0;
  std::vector<std::int64_t> per_class_received;
  std::int64_t N_R = 0;
  int state = 0;
};

// Radius of the circle where the cloud sphere meets the plane x = x_R, or
// nullopt when the plane misses the sphere. A tangent plane gives 0.
std::optional<double> cross_section_radius(double r_cloud, double x_cloud, double x_R);

double center_distance(const ReceiverGeometry& receiver, double y_cloud, double z_cloud);

// Area common to two circles with radii r_R, r_CS whose centres are d_RC
// apart. Total: disjoint gives 0, containment gives pi min(r_R, r_CS)^2.
double intersection_area(double r_R, double r_CS, double d_RC);

struct Overlap {
  OverlapBranch branch = OverlapBranch::none;
  double r_CS = 0.0;
  double d_RC = 0.0;
  double area = 0.0;
};

Overlap receiver_overlap(const TrajectoryPoint& cloud, const ReceiverGeometry& receiver);

// v_c area dt / (eta r^3): the fraction of the cloud population that
// streams through `area` during one step.
double geometric_factor(double v_c, double area, double r_cloud, double eta, double dt);

double reconstruct_class(double v_c, double area, double count, double r_cloud, double eta,
                         double dt);

// floor(factor * cumulative + 1/2).
std::int64_t quantize_exposure(double factor, double cumulative);

struct Quantized {
  std::vector<std::int64_t> per_class;
  std::int64_t total = 0;
};

// Rounds factor * sum(history_k) per class, then sums over classes. The
// factor belongs to the current step and scales the whole history.
Quantized accumulate_quantize(double factor, std::span<const std::vector<double>> histories);

// 1 iff N_R > gamma.
int detect(std::int64_t N_R, std::int64_t gamma);

double deplete(double count, std::int64_t received);

}  // namespace dropletmc
