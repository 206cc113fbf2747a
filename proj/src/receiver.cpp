#include "dropletmc/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dropletmc/errors.hpp"

namespace dropletmc {

std::string_view to_string(OverlapBranch branch) {
  switch (branch) {
    case OverlapBranch::none: return "none";
    case OverlapBranch::partial_overlap: return "partial_overlap";
    case OverlapBranch::encompassed: return "encompassed";
  }
  return "none";
}

std::optional<double> cross_section_radius(double r_cloud, double x_cloud, double x_R) {
  const double offset = std::abs(x_R - x_cloud);
  if (offset > r_cloud) return std::nullopt;
  return std::sqrt((r_cloud - offset) * (r_cloud + offset));
}

double center_distance(const ReceiverGeometry& receiver, double y_cloud, double z_cloud) {
  return std::hypot(receiver.position().y - y_cloud, receiver.position().z - z_cloud);
}

double intersection_area(double r_R, double r_CS, double d_RC) {
  if (r_R < 0.0 || r_CS < 0.0 || d_RC < 0.0) {
    throw InvalidParameter("intersection_area: inputs must be >= 0");
  }
  if (d_RC >= r_R + r_CS) return 0.0;
  const double r_min = std::min(r_R, r_CS);
  if (d_RC <= std::abs(r_R - r_CS)) return std::numbers::pi * r_min * r_min;

  const double d2 = d_RC * d_RC;
  const double a2 = r_R * r_R;
  const double b2 = r_CS * r_CS;
  const double cos_a = std::clamp((d2 + a2 - b2) / (2.0 * d_RC * r_R), -1.0, 1.0);
  const double cos_b = std::clamp((d2 + b2 - a2) / (2.0 * d_RC * r_CS), -1.0, 1.0);
  const double kite = (-d_RC + r_R + r_CS) * (d_RC + r_R - r_CS) * (d_RC - r_R + r_CS) *
                      (d_RC + r_R + r_CS);
  const double area = a2 * std::acos(cos_a) + b2 * std::acos(cos_b) -
                      0.5 * std::sqrt(std::max(kite, 0.0));
  return std::clamp(area, 0.0, std::numbers::pi * r_min * r_min);
}

Overlap receiver_overlap(const TrajectoryPoint& cloud, const ReceiverGeometry& receiver) {
  Overlap out;
  const auto r_cs = cross_section_radius(cloud.r, cloud.x, receiver.position().x);
  if (!r_cs) return out;
  out.r_CS = *r_cs;
  out.d_RC = center_distance(receiver, cloud.y, cloud.z);
  out.area = intersection_area(receiver.r_R(), out.r_CS, out.d_RC);
  if (out.area <= 0.0) {
    out.area = 0.0;
    return out;
  }
  out.branch = (out.d_RC <= out.r_CS - receiver.r_R()) ? OverlapBranch::encompassed
                                                       : OverlapBranch::partial_overlap;
  if (out.branch == OverlapBranch::encompassed) out.area = receiver.A_R();
  return out;
}

double geometric_factor(double v_c, double area, double r_cloud, double eta, double dt) {
  if (area == 0.0) return 0.0;
  if (!(r_cloud > 0.0)) throw SingularGeometry("geometric_factor: cloud radius must be > 0");
  return v_c * area * dt / (eta * r_cloud * r_cloud * r_cloud);
}

double reconstruct_class(double v_c, double area, double count, double r_cloud, double eta,
                         double dt) {
  return geometric_factor(v_c, area, r_cloud, eta, dt) * count;
}

std::int64_t quantize_exposure(double factor, double cumulative) {
  return static_cast<std::int64_t>(std::floor(factor * cumulative + 0.5));
}

Quantized accumulate_quantize(double factor, std::span<const std::vector<double>> histories) {
  Quantized out;
  out.per_class.reserve(histories.size());
  for (const auto& h : histories) {
    double sum = 0.0;
    for (double v : h) sum += v;
    out.per_class.push_back(quantize_exposure(factor, sum));
    out.total += out.per_class.back();
  }
  return out;
}

int detect(std::int64_t N_R, std::int64_t gamma) { return N_R > gamma ? 1 : 0; }

double deplete(double count, std::int64_t received) {
  const double left = count - static_cast<double>(received);
  return left > 0.0 ? left : 0.0;
}

}  // namespace dropletmc
