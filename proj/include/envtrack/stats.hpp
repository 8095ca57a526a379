#pragma once

#include <string>
#include <vector>

namespace envtrack {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation,
// ~1e-12 accuracy.
double incomplete_beta(double a, double b, double x);

// Two-sided p for Student's t with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

// Upper-tail p for the F distribution.
double f_upper_p(double f, double df1, double df2);

struct TestResult {
    double statistic = 0.0;
    double df = 0.0;
    double p_raw = 1.0;
    double p_adjusted = 1.0;
    double effect_size = 0.0;  // Cohen's d for paired t
    std::string label;
};

// Paired two-sided t-test; effect size d = mean(diff)/sd(diff).
TestResult paired_t(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& label = "");

struct RmAnovaEffect {
    std::string name;          // "A", "B", "AxB"
    double F = 0.0;
    double df_num = 0.0;       // sphericity-corrected
    double df_den = 0.0;
    double df_num_uncorrected = 0.0;
    double df_den_uncorrected = 0.0;
    double p = 0.0;            // from corrected df
    double eta_squared = 0.0;  // partial
    double epsilon = 1.0;      // Greenhouse-Geisser
};

// Two-way fully within-subjects ANOVA on a subjects x 2 x 4 table
// (factor A: 2 levels, factor B: 4 levels). Greenhouse-Geisser epsilon is
// applied whenever an effect has more than one numerator df.
std::vector<RmAnovaEffect> rm_anova_2x4(
    const std::vector<std::vector<std::vector<double>>>& data);

// Step-down Holm-Bonferroni adjustment, returned in the input order.
std::vector<double> holm_bonferroni(const std::vector<double>& p_values);

struct SpearmanResult {
    double rho = 0.0;
    double p = 1.0;
    bool p_reliable = true;  // false for n < 10 (descriptive use only)
};

SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y);

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

// Mid-ranks with ties averaged.
std::vector<double> midranks(const std::vector<double>& x);

}  // namespace envtrack
