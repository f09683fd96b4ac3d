#pragma once

namespace floodfuse::wgs84 {

inline constexpr double kSemiMajorM = 6378137.0;
inline constexpr double kFlattening = 1.0 / 298.257223563;

/// Geodesic distance in meters between two lon/lat points (degrees) on the
/// WGS84 ellipsoid, by Vincenty's inverse method. Exact along the equator:
/// one degree of equatorial arc measures 2*pi*a/360 = 111319.49 m.
double distance_m(double lon1, double lat1, double lon2, double lat2);

/// Local meters-per-degree scale factors at a latitude; good to well under
/// a millimeter over the tens-of-meters spans the buffer tests use.
struct LocalScale {
    double m_per_deg_lon;
    double m_per_deg_lat;
};
LocalScale local_scale(double lat_deg);

}  // namespace floodfuse::wgs84
