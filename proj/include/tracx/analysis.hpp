#ifndef TRACX_ANALYSIS_HPP
#define TRACX_ANALYSIS_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tracx/corpus.hpp"
#include "tracx/interval.hpp"

namespace tracx {

// Row-major matrix of doubles; rows = observations.
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0.0) {}
    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
};

double mean(std::span<const double> x);
double sample_sd(std::span<const double> x);
double sem(std::span<const double> x);

double cityblock(std::span<const double> u, std::span<const double> v);

// Product-moment correlation; empty when either input has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation with
// relative tolerance 1e-10.
double incomplete_beta(double a, double b, double x);

// Two-sided p of a t statistic, and upper-tail p of an F statistic.
double t_pvalue(double t, double df);
double f_pvalue(double f, double df1, double df2);

double bonferroni(double p, int m);

struct TestResult {
    double statistic = 0.0; // t or F
    double df1 = 0.0;       // t: df; F: between-groups df
    double df2 = 0.0;       // F: within-groups df
    double p = 1.0;
    double effect = 0.0; // Cohen's d (paired t) or partial eta squared (ANOVA)
    std::vector<double> group_means;
    std::vector<int> group_sizes;
    bool degenerate = false; // zero-variance input; statistic not meaningful
    std::string note;
};

// Paired two-sided t test on differences x - y.
TestResult paired_t(std::span<const double> x, std::span<const double> y);
TestResult unpaired_t(std::span<const double> x, std::span<const double> y);
TestResult oneway_anova(const std::vector<std::vector<double>>& groups);

// One-way ANOVA from per-group count/sum/sum-of-squares accumulators.
TestResult anova_from_moments(const std::vector<long>& n, const std::vector<double>& sum,
                              const std::vector<double>& sumsq);

// Eigen-decomposition of a symmetric matrix by the cyclic Jacobi method.
// Eigenvalues descend; eigenvectors are the columns of `vectors`.
struct EigenSym {
    std::vector<double> values;
    Matrix vectors;
};
EigenSym jacobi_eigen(const Matrix& sym);

struct PcaResult {
    Matrix projections;            // rows x components, all components
    Matrix components;             // cols x components (loadings)
    std::vector<double> column_means;
    std::vector<double> eigenvalues;
    std::vector<double> explained; // fraction of variance per component
};

// Columns mean-centered; covariance eigen-decomposition; deterministic sign
// convention (largest-magnitude loading positive). Throws NumericError when
// fewer than 3 rows; rank < 2 is reported via explained[1] == 0.
PcaResult pca(const Matrix& reps);

// R^2 of minimum-norm least squares of targets on the rep columns plus an
// intercept. Empty when the targets have zero variance.
std::optional<double> multiple_r_squared(const Matrix& reps, std::span<const double> targets);

// -------- contour study over random 3-interval words --------

struct ContourTriplet {
    std::array<int, 3> mdist{};
    long pairs_same = 0, pairs_diff = 0;
    double mean_same = 0.0, mean_diff = 0.0;
    double p_raw = 1.0, p_bonferroni = 1.0;
    bool scored = false; // both partitions held >= 2 pairs
};

struct ContourStudyResult {
    std::vector<ContourTriplet> triplets; // every [a,b,c] in 0..max per axis
    int scored_triplets = 0;
    double fraction_expected_direction = 0.0; // mean_same < mean_diff among scored
    double fraction_significant = 0.0;        // Bonferroni p < 0.05 among scored
};

// Partitions all word pairs at each exact mdist triplet into same-contour /
// different-contour sets and compares their mean representation distances.
// `reps` holds one row per word. Deterministic for a fixed (reps, words).
ContourStudyResult contour_study(const Matrix& reps, const std::vector<IntervalWord>& words, int max_mdist = 6);

} // namespace tracx

#endif
