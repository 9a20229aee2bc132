// Copyright 2026 The cdrisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdrisk/geo.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdrisk/registry.h"

namespace cdrisk {

double haversine_km(double lat1_deg, double lon1_deg, double lat2_deg,
                    double lon2_deg) {
  constexpr double kDegToRad = std::numbers::pi / 180.0;
  const double phi1 = lat1_deg * kDegToRad;
  const double phi2 = lat2_deg * kDegToRad;
  const double dphi = (lat2_deg - lat1_deg) * kDegToRad;
  const double dlambda = (lon2_deg - lon1_deg) * kDegToRad;
  const double s_phi = std::sin(dphi / 2);
  const double s_lambda = std::sin(dlambda / 2);
  double h = s_phi * s_phi + std::cos(phi1) * std::cos(phi2) * s_lambda * s_lambda;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

double haversine_km(const Antenna& a, const Antenna& b) {
  return haversine_km(a.latitude, a.longitude, b.latitude, b.longitude);
}

}  // namespace cdrisk
