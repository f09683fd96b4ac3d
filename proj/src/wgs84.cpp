#include "floodfuse/wgs84.hpp"

#include <cmath>

namespace floodfuse::wgs84 {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
constexpr double kSemiMinorM = kSemiMajorM * (1.0 - kFlattening);
}  // namespace

double distance_m(double lon1, double lat1, double lon2, double lat2) {
    if (lon1 == lon2 && lat1 == lat2) return 0.0;

    const double f = kFlattening;
    const double L = (lon2 - lon1) * kDegToRad;
    const double u1 = std::atan((1.0 - f) * std::tan(lat1 * kDegToRad));
    const double u2 = std::atan((1.0 - f) * std::tan(lat2 * kDegToRad));
    const double sin_u1 = std::sin(u1), cos_u1 = std::cos(u1);
    const double sin_u2 = std::sin(u2), cos_u2 = std::cos(u2);

    double lambda = L;
    double sin_sigma = 0.0, cos_sigma = 0.0, sigma = 0.0;
    double cos_sq_alpha = 0.0, cos_2sigma_m = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double sin_lambda = std::sin(lambda), cos_lambda = std::cos(lambda);
        sin_sigma = std::sqrt(
            (cos_u2 * sin_lambda) * (cos_u2 * sin_lambda) +
            (cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lambda) *
                (cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lambda));
        if (sin_sigma == 0.0) return 0.0;  // coincident
        cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_lambda;
        sigma = std::atan2(sin_sigma, cos_sigma);
        const double sin_alpha = cos_u1 * cos_u2 * sin_lambda / sin_sigma;
        cos_sq_alpha = 1.0 - sin_alpha * sin_alpha;
        // equatorial geodesic: cos^2(alpha) = 0
        cos_2sigma_m = cos_sq_alpha != 0.0
                           ? cos_sigma - 2.0 * sin_u1 * sin_u2 / cos_sq_alpha
                           : 0.0;
        const double c =
            f / 16.0 * cos_sq_alpha * (4.0 + f * (4.0 - 3.0 * cos_sq_alpha));
        const double prev = lambda;
        lambda = L + (1.0 - c) * f * sin_alpha *
                         (sigma + c * sin_sigma *
                                      (cos_2sigma_m +
                                       c * cos_sigma *
                                           (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m)));
        if (std::abs(lambda - prev) < 1e-13) break;
    }

    const double u_sq = cos_sq_alpha *
                        (kSemiMajorM * kSemiMajorM - kSemiMinorM * kSemiMinorM) /
                        (kSemiMinorM * kSemiMinorM);
    const double a_term =
        1.0 + u_sq / 16384.0 * (4096.0 + u_sq * (-768.0 + u_sq * (320.0 - 175.0 * u_sq)));
    const double b_term =
        u_sq / 1024.0 * (256.0 + u_sq * (-128.0 + u_sq * (74.0 - 47.0 * u_sq)));
    const double delta_sigma =
        b_term * sin_sigma *
        (cos_2sigma_m +
         b_term / 4.0 *
             (cos_sigma * (-1.0 + 2.0 * cos_2sigma_m * cos_2sigma_m) -
              b_term / 6.0 * cos_2sigma_m * (-3.0 + 4.0 * sin_sigma * sin_sigma) *
                  (-3.0 + 4.0 * cos_2sigma_m * cos_2sigma_m)));
    return kSemiMinorM * a_term * (sigma - delta_sigma);
}

LocalScale local_scale(double lat_deg) {
    const double lat = lat_deg * kDegToRad;
    const double e_sq = kFlattening * (2.0 - kFlattening);
    const double s = std::sin(lat);
    const double w = std::sqrt(1.0 - e_sq * s * s);
    const double meridional = kSemiMajorM * (1.0 - e_sq) / (w * w * w);
    const double normal = kSemiMajorM / w;
    return LocalScale{normal * std::cos(lat) * kDegToRad, meridional * kDegToRad};
}

}  // namespace floodfuse::wgs84
