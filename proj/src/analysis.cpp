#include "tracx/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tracx {

double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

double sem(std::span<const double> x) { return sample_sd(x) / std::sqrt(static_cast<double>(x.size())); }

double cityblock(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw NumericError("cityblock needs equal-length vectors");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i] - v[i]);
    return s;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw NumericError("pearson needs two equal-length lists of size >= 2");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

namespace {

// Lentz's continued fraction for the incomplete beta (Numerical Recipes form).
double betacf(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kTol = 1e-10;
    constexpr int kMaxIter = 500;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kTol) return h;
    }
    throw NumericError("incomplete beta continued fraction did not converge");
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw NumericError("incomplete_beta needs a,b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b; // symmetry switch for convergence
}

double t_pvalue(double t, double df) {
    if (df <= 0.0) throw NumericError("t_pvalue needs df > 0");
    if (!std::isfinite(t)) return 0.0;
    return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double f_pvalue(double f, double df1, double df2) {
    if (df1 <= 0.0 || df2 <= 0.0) throw NumericError("f_pvalue needs positive dfs");
    if (!std::isfinite(f)) return 0.0;
    if (f <= 0.0) return 1.0;
    return incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

double bonferroni(double p, int m) { return std::min(1.0, p * static_cast<double>(m)); }

TestResult paired_t(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw NumericError("paired_t needs equal-length lists of size >= 2");
    std::vector<double> d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
    const double md = mean(d), sd = sample_sd(d);
    TestResult r;
    r.df1 = static_cast<double>(d.size() - 1);
    r.group_means = {mean(x), mean(y)};
    r.group_sizes = {static_cast<int>(x.size()), static_cast<int>(y.size())};
    if (sd == 0.0) {
        r.degenerate = true;
        r.note = md == 0.0 ? "identical pairs; no difference" : "zero-variance differences";
        r.statistic = md == 0.0 ? 0.0 : std::numeric_limits<double>::infinity() * (md > 0 ? 1 : -1);
        r.p = md == 0.0 ? 1.0 : 0.0;
        return r;
    }
    r.statistic = md / (sd / std::sqrt(static_cast<double>(d.size())));
    r.effect = md / sd; // Cohen's d for paired samples
    r.p = t_pvalue(r.statistic, r.df1);
    return r;
}

TestResult unpaired_t(std::span<const double> x, std::span<const double> y) {
    if (x.size() < 2 || y.size() < 2) throw NumericError("unpaired_t needs >= 2 samples per group");
    const double n1 = static_cast<double>(x.size()), n2 = static_cast<double>(y.size());
    const double m1 = mean(x), m2 = mean(y);
    const double v1 = sample_sd(x) * sample_sd(x), v2 = sample_sd(y) * sample_sd(y);
    const double pooled = ((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / (n1 + n2 - 2.0);
    TestResult r;
    r.df1 = n1 + n2 - 2.0;
    r.group_means = {m1, m2};
    r.group_sizes = {static_cast<int>(x.size()), static_cast<int>(y.size())};
    if (pooled == 0.0) {
        r.degenerate = true;
        r.note = "zero pooled variance";
        r.statistic = (m1 == m2) ? 0.0 : std::numeric_limits<double>::infinity() * (m1 > m2 ? 1 : -1);
        r.p = (m1 == m2) ? 1.0 : 0.0;
        return r;
    }
    r.statistic = (m1 - m2) / std::sqrt(pooled * (1.0 / n1 + 1.0 / n2));
    r.effect = (m1 - m2) / std::sqrt(pooled);
    r.p = t_pvalue(r.statistic, r.df1);
    return r;
}

TestResult anova_from_moments(const std::vector<long>& n, const std::vector<double>& sum,
                              const std::vector<double>& sumsq) {
    const std::size_t k = n.size();
    if (k < 2 || sum.size() != k || sumsq.size() != k) throw NumericError("anova needs >= 2 groups");
    long total_n = 0;
    double total_sum = 0.0, total_sumsq = 0.0;
    TestResult r;
    for (std::size_t g = 0; g < k; ++g) {
        if (n[g] < 2) throw NumericError("anova needs >= 2 samples per group");
        total_n += n[g];
        total_sum += sum[g];
        total_sumsq += sumsq[g];
        r.group_means.push_back(sum[g] / static_cast<double>(n[g]));
        r.group_sizes.push_back(static_cast<int>(n[g]));
    }
    const double grand = total_sum / static_cast<double>(total_n);
    double ss_between = 0.0, ss_within = 0.0;
    for (std::size_t g = 0; g < k; ++g) {
        const double gm = sum[g] / static_cast<double>(n[g]);
        ss_between += static_cast<double>(n[g]) * (gm - grand) * (gm - grand);
        ss_within += sumsq[g] - sum[g] * sum[g] / static_cast<double>(n[g]);
    }
    r.df1 = static_cast<double>(k - 1);
    r.df2 = static_cast<double>(total_n - static_cast<long>(k));
    const double ss_total = ss_between + ss_within;
    r.effect = ss_total > 0.0 ? ss_between / ss_total : 0.0; // partial eta squared
    if (ss_within <= 0.0) {
        r.degenerate = true;
        r.note = "zero within-group variance";
        r.statistic = ss_between > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        r.p = ss_between > 0.0 ? 0.0 : 1.0;
        return r;
    }
    r.statistic = (ss_between / r.df1) / (ss_within / r.df2);
    r.p = f_pvalue(r.statistic, r.df1, r.df2);
    return r;
}

TestResult oneway_anova(const std::vector<std::vector<double>>& groups) {
    std::vector<long> n;
    std::vector<double> sum, sumsq;
    for (const auto& g : groups) {
        n.push_back(static_cast<long>(g.size()));
        double s = 0.0, ss = 0.0;
        for (double v : g) {
            s += v;
            ss += v * v;
        }
        sum.push_back(s);
        sumsq.push_back(ss);
    }
    return anova_from_moments(n, sum, sumsq);
}

EigenSym jacobi_eigen(const Matrix& sym) {
    if (sym.rows != sym.cols || sym.rows < 1) throw NumericError("jacobi_eigen needs a square matrix");
    const int n = sym.rows;
    Matrix a = sym;
    Matrix v(n, n);
    for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = a.at(p, i), aqi = a.at(q, i);
                    a.at(p, i) = c * api - s * aqi;
                    a.at(q, i) = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v.at(i, p), viq = v.at(i, q);
                    v.at(i, p) = c * vip - s * viq;
                    v.at(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = a.at(i, i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return diag[static_cast<std::size_t>(x)] > diag[static_cast<std::size_t>(y)]; });
    EigenSym out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[static_cast<std::size_t>(j)] = diag[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
        for (int i = 0; i < n; ++i) out.vectors.at(i, j) = v.at(i, order[static_cast<std::size_t>(j)]);
    }
    return out;
}

PcaResult pca(const Matrix& reps) {
    if (reps.rows < 3) throw NumericError("pca needs at least 3 rows");
    const int n = reps.rows, d = reps.cols;
    PcaResult res;
    res.column_means.assign(static_cast<std::size_t>(d), 0.0);
    for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += reps.at(i, j);
        res.column_means[static_cast<std::size_t>(j)] = s / static_cast<double>(n);
    }
    Matrix centered(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) centered.at(i, j) = reps.at(i, j) - res.column_means[static_cast<std::size_t>(j)];
    Matrix cov(d, d);
    for (int a = 0; a < d; ++a) {
        for (int b = a; b < d; ++b) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += centered.at(i, a) * centered.at(i, b);
            s /= static_cast<double>(n - 1);
            cov.at(a, b) = s;
            cov.at(b, a) = s;
        }
    }
    EigenSym eig = jacobi_eigen(cov);
    // sign convention: the largest-magnitude loading of each component is positive
    for (int j = 0; j < d; ++j) {
        int arg = 0;
        double best = 0.0;
        for (int i = 0; i < d; ++i) {
            if (std::abs(eig.vectors.at(i, j)) > best) {
                best = std::abs(eig.vectors.at(i, j));
                arg = i;
            }
        }
        if (eig.vectors.at(arg, j) < 0.0)
            for (int i = 0; i < d; ++i) eig.vectors.at(i, j) = -eig.vectors.at(i, j);
    }
    res.components = eig.vectors;
    res.eigenvalues = eig.values;
    double total = 0.0;
    for (double v : eig.values) total += std::max(v, 0.0);
    res.explained.resize(eig.values.size());
    for (std::size_t j = 0; j < eig.values.size(); ++j)
        res.explained[j] = total > 0.0 ? std::max(eig.values[j], 0.0) / total : 0.0;
    res.projections = Matrix(n, d);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += centered.at(i, k) * res.components.at(k, j);
            res.projections.at(i, j) = s;
        }
    }
    return res;
}

std::optional<double> multiple_r_squared(const Matrix& reps, std::span<const double> targets) {
    if (reps.rows < 2 || static_cast<int>(targets.size()) != reps.rows)
        throw NumericError("multiple_r_squared needs >= 2 aligned rows");
    const int n = reps.rows, d = reps.cols, p = d + 1; // + intercept
    const double ty = mean(targets);
    double sst = 0.0;
    for (double y : targets) sst += (y - ty) * (y - ty);
    if (sst == 0.0) return std::nullopt;

    // minimum-norm least squares via the eigen-decomposition of X^T X
    Matrix x(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) x.at(i, j) = reps.at(i, j);
        x.at(i, d) = 1.0;
    }
    Matrix gram(p, p);
    for (int a = 0; a < p; ++a)
        for (int b = a; b < p; ++b) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += x.at(i, a) * x.at(i, b);
            gram.at(a, b) = s;
            gram.at(b, a) = s;
        }
    std::vector<double> xty(static_cast<std::size_t>(p), 0.0);
    for (int a = 0; a < p; ++a) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += x.at(i, a) * targets[static_cast<std::size_t>(i)];
        xty[static_cast<std::size_t>(a)] = s;
    }
    EigenSym eig = jacobi_eigen(gram);
    const double cutoff = std::max(eig.values.front(), 0.0) * 1e-12;
    std::vector<double> beta(static_cast<std::size_t>(p), 0.0);
    for (int j = 0; j < p; ++j) {
        if (eig.values[static_cast<std::size_t>(j)] <= cutoff) continue; // collinear direction
        double vj_xty = 0.0;
        for (int a = 0; a < p; ++a) vj_xty += eig.vectors.at(a, j) * xty[static_cast<std::size_t>(a)];
        const double scale = vj_xty / eig.values[static_cast<std::size_t>(j)];
        for (int a = 0; a < p; ++a) beta[static_cast<std::size_t>(a)] += scale * eig.vectors.at(a, j);
    }
    double sse = 0.0;
    for (int i = 0; i < n; ++i) {
        double pred = 0.0;
        for (int a = 0; a < p; ++a) pred += x.at(i, a) * beta[static_cast<std::size_t>(a)];
        const double r = targets[static_cast<std::size_t>(i)] - pred;
        sse += r * r;
    }
    return std::clamp(1.0 - sse / sst, 0.0, 1.0);
}

ContourStudyResult contour_study(const Matrix& reps, const std::vector<IntervalWord>& words, int max_mdist) {
    if (reps.rows != static_cast<int>(words.size())) throw NumericError("contour_study: reps/words size mismatch");
    for (const auto& w : words)
        if (w.size() != 3) throw DataError("contour_study expects 3-interval words");
    const int base = max_mdist + 1;
    const int buckets = base * base * base;
    // per-bucket accumulators, same/different contour
    std::vector<long> n_same(static_cast<std::size_t>(buckets), 0), n_diff(static_cast<std::size_t>(buckets), 0);
    std::vector<double> s_same(static_cast<std::size_t>(buckets), 0.0), s_diff(static_cast<std::size_t>(buckets), 0.0);
    std::vector<double> q_same(static_cast<std::size_t>(buckets), 0.0), q_diff(static_cast<std::size_t>(buckets), 0.0);

    const std::size_t nw = words.size();
    std::vector<std::string> contours(nw);
    for (std::size_t i = 0; i < nw; ++i) contours[i] = contour(words[i]);

    for (std::size_t i = 0; i < nw; ++i) {
        const auto& wi = words[i].intervals;
        for (std::size_t j = i + 1; j < nw; ++j) {
            const auto& wj = words[j].intervals;
            const int d0 = std::abs(wi[0].semitones - wj[0].semitones);
            if (d0 > max_mdist) continue;
            const int d1 = std::abs(wi[1].semitones - wj[1].semitones);
            if (d1 > max_mdist) continue;
            const int d2 = std::abs(wi[2].semitones - wj[2].semitones);
            if (d2 > max_mdist) continue;
            const auto bucket = static_cast<std::size_t>((d0 * base + d1) * base + d2);
            double dist = 0.0;
            const double* ri = &reps.data[i * static_cast<std::size_t>(reps.cols)];
            const double* rj = &reps.data[j * static_cast<std::size_t>(reps.cols)];
            for (int k = 0; k < reps.cols; ++k) dist += std::abs(ri[k] - rj[k]);
            if (contours[i] == contours[j]) {
                ++n_same[bucket];
                s_same[bucket] += dist;
                q_same[bucket] += dist * dist;
            } else {
                ++n_diff[bucket];
                s_diff[bucket] += dist;
                q_diff[bucket] += dist * dist;
            }
        }
    }

    ContourStudyResult res;
    res.triplets.reserve(static_cast<std::size_t>(buckets));
    for (int a = 0; a <= max_mdist; ++a) {
        for (int b = 0; b <= max_mdist; ++b) {
            for (int c = 0; c <= max_mdist; ++c) {
                const auto bucket = static_cast<std::size_t>((a * base + b) * base + c);
                ContourTriplet t;
                t.mdist = {a, b, c};
                t.pairs_same = n_same[bucket];
                t.pairs_diff = n_diff[bucket];
                if (t.pairs_same >= 2 && t.pairs_diff >= 2) {
                    t.scored = true;
                    t.mean_same = s_same[bucket] / static_cast<double>(t.pairs_same);
                    t.mean_diff = s_diff[bucket] / static_cast<double>(t.pairs_diff);
                    const TestResult anova = anova_from_moments({t.pairs_same, t.pairs_diff},
                                                                {s_same[bucket], s_diff[bucket]},
                                                                {q_same[bucket], q_diff[bucket]});
                    t.p_raw = anova.p;
                }
                res.triplets.push_back(t);
            }
        }
    }
    for (const auto& t : res.triplets)
        if (t.scored) ++res.scored_triplets;
    long expected = 0, significant = 0;
    for (auto& t : res.triplets) {
        if (!t.scored) continue;
        t.p_bonferroni = bonferroni(t.p_raw, res.scored_triplets);
        if (t.mean_same < t.mean_diff) ++expected;
        if (t.p_bonferroni < 0.05) ++significant;
    }
    if (res.scored_triplets > 0) {
        res.fraction_expected_direction = static_cast<double>(expected) / res.scored_triplets;
        res.fraction_significant = static_cast<double>(significant) / res.scored_triplets;
    }
    return res;
}

} // namespace tracx
