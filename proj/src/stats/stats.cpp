#include "envtrack/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "envtrack/signal.hpp"

namespace envtrack {

TestResult paired_t(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& label) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("paired_t: equal lengths >= 3 required");
    std::vector<double> diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
    const double md = mean(diff);
    const double sd = sample_sd(diff);
    // Relative guard: x = y + c leaves only rounding noise in the
    // differences, which must still count as zero variance.
    double scale = std::abs(md);
    for (double d : diff) scale = std::max(scale, std::abs(d));
    if (!(sd > 1e-12 * scale) || !(sd > 0.0))
        throw DegenerateInputError("paired_t: zero variance of differences");
    const double n = static_cast<double>(x.size());
    TestResult res;
    res.label = label;
    res.df = n - 1.0;
    res.statistic = md / (sd / std::sqrt(n));
    res.p_raw = student_t_two_sided_p(res.statistic, res.df);
    res.p_adjusted = res.p_raw;
    res.effect_size = md / sd;
    return res;
}

namespace {

// Orthonormal Helmert-style contrast rows for k levels ((k-1) x k).
Eigen::MatrixXd orthonormal_contrasts(int k) {
    Eigen::MatrixXd c(k - 1, k);
    c.setZero();
    for (int r = 0; r < k - 1; ++r) {
        for (int j = 0; j <= r; ++j) c(r, j) = 1.0;
        c(r, r + 1) = -(r + 1.0);
        c.row(r) /= c.row(r).norm();
    }
    return c;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Greenhouse-Geisser epsilon from the covariance of the orthonormally
// contrasted cell scores: tr(M)^2 / (df * tr(M^2)).
double gg_epsilon(const Eigen::MatrixXd& scores, const Eigen::MatrixXd& contrasts) {
    const int n = static_cast<int>(scores.rows());
    const Eigen::MatrixXd t = scores * contrasts.transpose();  // subjects x df
    const Eigen::MatrixXd centered = t.rowwise() - t.colwise().mean();
    const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
    const double df = static_cast<double>(contrasts.rows());
    const double tr = cov.trace();
    const double tr2 = (cov * cov).trace();
    if (tr2 <= 0.0) return 1.0;
    const double eps = tr * tr / (df * tr2);
    return std::clamp(eps, 1.0 / df, 1.0);
}

}  // namespace

std::vector<RmAnovaEffect> rm_anova_2x4(
    const std::vector<std::vector<std::vector<double>>>& data) {
    const int n = static_cast<int>(data.size());
    if (n < 3) throw std::invalid_argument("rm_anova_2x4: need >= 3 subjects");
    constexpr int a = 2, b = 4;
    for (const auto& subj : data) {
        if (static_cast<int>(subj.size()) != a)
            throw std::invalid_argument("rm_anova_2x4: factor A must have 2 levels");
        for (const auto& row : subj)
            if (static_cast<int>(row.size()) != b)
                throw std::invalid_argument("rm_anova_2x4: factor B must have 4 levels");
    }

    // Cell scores as subjects x 8 (A-major order).
    Eigen::MatrixXd y(n, a * b);
    for (int s = 0; s < n; ++s)
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) y(s, i * b + j) = data[s][i][j];

    const double grand = y.mean();
    Eigen::VectorXd mean_s = y.rowwise().mean();
    Eigen::VectorXd mean_a = Eigen::VectorXd::Zero(a);
    Eigen::VectorXd mean_b = Eigen::VectorXd::Zero(b);
    Eigen::MatrixXd cell = Eigen::MatrixXd::Zero(a, b);
    Eigen::MatrixXd mean_as = Eigen::MatrixXd::Zero(n, a);
    Eigen::MatrixXd mean_bs = Eigen::MatrixXd::Zero(n, b);
    for (int s = 0; s < n; ++s)
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) {
                const double v = y(s, i * b + j);
                mean_a(i) += v;
                mean_b(j) += v;
                cell(i, j) += v;
                mean_as(s, i) += v;
                mean_bs(s, j) += v;
            }
    mean_a /= static_cast<double>(n * b);
    mean_b /= static_cast<double>(n * a);
    cell /= static_cast<double>(n);
    mean_as /= static_cast<double>(b);
    mean_bs /= static_cast<double>(a);

    double ss_a = 0.0, ss_b = 0.0, ss_ab = 0.0;
    double ss_as = 0.0, ss_bs = 0.0, ss_abs = 0.0;
    for (int i = 0; i < a; ++i) ss_a += n * b * std::pow(mean_a(i) - grand, 2);
    for (int j = 0; j < b; ++j) ss_b += n * a * std::pow(mean_b(j) - grand, 2);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j)
            ss_ab += n * std::pow(cell(i, j) - mean_a(i) - mean_b(j) + grand, 2);
    for (int s = 0; s < n; ++s) {
        for (int i = 0; i < a; ++i)
            ss_as += b * std::pow(mean_as(s, i) - mean_a(i) - mean_s(s) + grand, 2);
        for (int j = 0; j < b; ++j)
            ss_bs += a * std::pow(mean_bs(s, j) - mean_b(j) - mean_s(s) + grand, 2);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j)
                ss_abs += std::pow(y(s, i * b + j) - mean_as(s, i) - mean_bs(s, j) -
                                       cell(i, j) + mean_a(i) + mean_b(j) + mean_s(s) - grand,
                                   2);
    }

    const Eigen::MatrixXd ca = orthonormal_contrasts(a);
    const Eigen::MatrixXd cb = orthonormal_contrasts(b);
    const Eigen::MatrixXd ones_a = Eigen::MatrixXd::Constant(1, a, 1.0 / std::sqrt(a));
    const Eigen::MatrixXd ones_b = Eigen::MatrixXd::Constant(1, b, 1.0 / std::sqrt(b));

    struct EffectDef {
        std::string name;
        double ss, ss_err, df_num, df_den;
        Eigen::MatrixXd contrasts;
    };
    const std::vector<EffectDef> defs = {
        {"A", ss_a, ss_as, a - 1.0, (a - 1.0) * (n - 1.0), kron(ca, ones_b)},
        {"B", ss_b, ss_bs, b - 1.0, (b - 1.0) * (n - 1.0), kron(ones_a, cb)},
        {"AxB", ss_ab, ss_abs, (a - 1.0) * (b - 1.0), (a - 1.0) * (b - 1.0) * (n - 1.0),
         kron(ca, cb)},
    };

    std::vector<RmAnovaEffect> out;
    for (const auto& def : defs) {
        RmAnovaEffect e;
        e.name = def.name;
        e.df_num_uncorrected = def.df_num;
        e.df_den_uncorrected = def.df_den;
        const double ms_eff = def.ss / def.df_num;
        const double ms_err = def.ss_err / def.df_den;
        e.F = ms_err > 0.0 ? ms_eff / ms_err : 0.0;
        e.eta_squared =
            (def.ss + def.ss_err) > 0.0 ? def.ss / (def.ss + def.ss_err) : 0.0;
        e.epsilon = def.df_num > 1.0 ? gg_epsilon(y, def.contrasts) : 1.0;
        e.df_num = e.epsilon * def.df_num;
        e.df_den = e.epsilon * def.df_den;
        e.p = f_upper_p(e.F, e.df_num, e.df_den);
        out.push_back(e);
    }
    return out;
}

std::vector<double> holm_bonferroni(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("holm_bonferroni: p out of [0, 1]");
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return p_values[i] < p_values[j]; });
    std::vector<double> adjusted(m);
    double running_max = 0.0;
    for (std::size_t rank = 0; rank < m; ++rank) {
        const double scaled = p_values[order[rank]] * static_cast<double>(m - rank);
        running_max = std::max(running_max, scaled);
        adjusted[order[rank]] = std::min(1.0, running_max);
    }
    return adjusted;
}

std::vector<double> midranks(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("correlation: equal lengths >= 3 required");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw DegenerateInputError("correlation: constant input");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y) {
    SpearmanResult res;
    res.rho = pearson_correlation(midranks(x), midranks(y));
    const double n = static_cast<double>(x.size());
    res.p_reliable = x.size() >= 10;
    if (std::abs(res.rho) >= 1.0) {
        res.p = 0.0;
    } else {
        const double t = res.rho * std::sqrt((n - 2.0) / (1.0 - res.rho * res.rho));
        res.p = student_t_two_sided_p(t, n - 2.0);
    }
    return res;
}

}  // namespace envtrack
