#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace roadsv::detail {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace; // best value after each iteration
};

/// Minimizes `f` starting from `x0` with initial simplex offsets `step`.
/// Converged when the spread of simplex values falls to `tolerance`.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, const std::vector<double>& step,
                                    int max_iterations, double tolerance) {
    const std::size_t n = x0.size();
    NelderMeadResult res;
    if (n == 0) {
        res.value = f(x0);
        res.x = std::move(x0);
        res.converged = true;
        return res;
    }

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    auto eval_along = [&](const std::vector<double>& worst, double coef, std::vector<double>& out) {
        for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coef * (worst[j] - centroid[j]);
        return f(out);
    };

    for (int it = 0; it < max_iterations; ++it) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];
        if (vals[worst] - vals[best] <= tolerance) {
            res.converged = true;
            break;
        }
        ++res.iterations;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[order[k]][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const double fr = eval_along(pts[worst], -1.0, trial);
        if (fr < vals[best]) {
            const double fe = eval_along(pts[worst], -2.0, trial2);
            if (fe < fr) {
                pts[worst] = trial2;
                vals[worst] = fe;
            } else {
                pts[worst] = trial;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = trial;
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            const double fc = eval_along(pts[worst], outside ? -0.5 : 0.5, trial2);
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = trial2;
                vals[worst] = fc;
            } else {
                for (std::size_t k = 1; k <= n; ++k) {
                    auto& p = pts[order[k]];
                    for (std::size_t j = 0; j < n; ++j) p[j] = pts[best][j] + 0.5 * (p[j] - pts[best][j]);
                    vals[order[k]] = f(p);
                }
            }
        }
        res.trace.push_back(*std::min_element(vals.begin(), vals.end()));
    }

    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    res.x = pts[best];
    res.value = vals[best];
    return res;
}

} // namespace roadsv::detail
