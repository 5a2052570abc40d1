// Copyright 2026 The latchsim Authors
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

#pragma once

#include <algorithm>
#include <functional>
#include <vector>

namespace latchsim {

struct NelderMeadOptions {
    int max_evaluations = 2000;
    double ftol_rel = 1e-10;
    double xtol_rel = 1e-10;
};

struct NelderMeadResult {
    std::vector<double> x;
    double fval = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Downhill simplex with the standard reflection/expansion/contraction/shrink
// coefficients. Deterministic given (f, x0, step).
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& x0,
                                    const std::vector<double>& step,
                                    const NelderMeadOptions& opt = {}) {
    const int n = static_cast<int>(x0.size());
    std::vector<std::vector<double>> verts(n + 1, x0);
    for (int i = 0; i < n; ++i) verts[i + 1][i] += step[i];

    NelderMeadResult res;
    std::vector<double> fv(n + 1);
    for (int i = 0; i <= n; ++i) {
        fv[i] = f(verts[i]);
        ++res.evaluations;
    }

    auto order = [&]() {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> v2(n + 1);
        std::vector<double> f2(n + 1);
        for (int i = 0; i <= n; ++i) {
            v2[i] = verts[idx[i]];
            f2[i] = fv[idx[i]];
        }
        verts.swap(v2);
        fv.swap(f2);
    };

    while (res.evaluations < opt.max_evaluations) {
        order();
        double fspread = std::abs(fv[n] - fv[0]);
        double fscale = std::max(std::abs(fv[0]), std::abs(fv[n]));
        double xspread = 0.0, xscale = 0.0;
        for (int j = 0; j < n; ++j) {
            double lo = verts[0][j], hi = verts[0][j];
            for (int i = 1; i <= n; ++i) {
                lo = std::min(lo, verts[i][j]);
                hi = std::max(hi, verts[i][j]);
            }
            xspread = std::max(xspread, hi - lo);
            xscale = std::max({xscale, std::abs(lo), std::abs(hi)});
        }
        if (fspread <= opt.ftol_rel * std::max(fscale, 1e-300) &&
            xspread <= opt.xtol_rel * std::max(xscale, 1e-300)) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) centroid[j] += verts[i][j] / n;

        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (int j = 0; j < n; ++j) p[j] = centroid[j] + coef * (verts[n][j] - centroid[j]);
            return p;
        };

        std::vector<double> xr = blend(-1.0);
        double fr = f(xr);
        ++res.evaluations;
        if (fr < fv[0]) {
            std::vector<double> xe = blend(-2.0);
            double fe = f(xe);
            ++res.evaluations;
            if (fe < fr) {
                verts[n] = xe;
                fv[n] = fe;
            } else {
                verts[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            verts[n] = xr;
            fv[n] = fr;
        } else {
            std::vector<double> xc = blend(fr < fv[n] ? -0.5 : 0.5);
            double fc = f(xc);
            ++res.evaluations;
            if (fc < std::min(fr, fv[n])) {
                verts[n] = xc;
                fv[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j)
                        verts[i][j] = verts[0][j] + 0.5 * (verts[i][j] - verts[0][j]);
                    fv[i] = f(verts[i]);
                    ++res.evaluations;
                }
            }
        }
    }

    order();
    res.x = verts[0];
    res.fval = fv[0];
    return res;
}

}  // namespace latchsim
