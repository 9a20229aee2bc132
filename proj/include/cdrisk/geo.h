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

#ifndef CDRISK_GEO_H_
#define CDRISK_GEO_H_

namespace cdrisk {

struct Antenna;

inline constexpr double kEarthRadiusKm = 6371.0;

// Great-circle distance on a sphere of radius kEarthRadiusKm.
double haversine_km(double lat1_deg, double lon1_deg, double lat2_deg,
                    double lon2_deg);
double haversine_km(const Antenna& a, const Antenna& b);

}  // namespace cdrisk

#endif  // CDRISK_GEO_H_
