#include "subdicke/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "subdicke/errors.hpp"

namespace subdicke {

QuadResult integrate_panel(const std::function<double(double)>& f, double a, double b,
                           const QuadConfig& cfg) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    if (!(b > a)) return {0.0, 0.0};
    double err = 0.0;
    const double value = GK::integrate(f, a, b, cfg.max_depth, cfg.rel_tol, &err);
    return {value, err};
}

QuadResult integrate_panels(const std::function<double(double)>& f,
                            const std::vector<double>& breakpoints, const QuadConfig& cfg) {
    QuadResult total;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const QuadResult r = integrate_panel(f, breakpoints[i], breakpoints[i + 1], cfg);
        total.value += r.value;
        total.error_bound += r.error_bound;
    }
    return total;
}

std::vector<double> geometric_breakpoints(double lo, double hi, double ratio) {
    std::vector<double> bps{lo};
    for (double x = lo * ratio; x < hi * 0.999999; x *= ratio)
        bps.push_back(x);
    bps.push_back(hi);
    return bps;
}

} // namespace subdicke
