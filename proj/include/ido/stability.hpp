#pragma once

#include <span>
#include <string>
#include <vector>

namespace ido {

/// Continuous odd power nonlinearity |x|^alpha * sign(x), exactly 0 at x = 0.
/// Requires alpha in (0, 1]; throws std::invalid_argument otherwise.
double power_sign(double x, double alpha);

/// Fractional exponent chain alpha_1..alpha_n generated from the terminal
/// exponent alpha_n. Built from the closed form
///   alpha_i = alpha_n / ((n-i+1) - (n-i)*alpha_n)
/// and cross-checked against the recursion
///   alpha_{i-1} = alpha_i*alpha_{i+1} / (2*alpha_{i+1} - alpha_i),  alpha_{n+1} = 1
/// to 1e-12 relative at construction.
class ExponentChain {
public:
    ExponentChain(int n, double alpha_n);

    int order() const { return static_cast<int>(alphas_.size()); }
    /// 1-based accessor: alpha(1) .. alpha(n).
    double alpha(int i) const { return alphas_.at(static_cast<std::size_t>(i) - 1); }
    double terminal() const { return alphas_.back(); }
    const std::vector<double>& alphas() const { return alphas_; }

private:
    std::vector<double> alphas_;
};

enum class StabilityVerdict { Hurwitz, NotHurwitz, Singular };

const char* to_string(StabilityVerdict v);

/// Routh array of a real polynomial (descending powers, positive leading
/// coefficient). first_column holds one entry per row; on a Singular verdict
/// construction stops early and the column is partial.
///
/// Pivot handling: an exact 0.0 first-column entry decides NotHurwitz (a zero
/// entry can never belong to a strictly Hurwitz polynomial); a nonzero entry
/// smaller in magnitude than 1e-12 * max|coefficient| yields Singular; a row
/// whose entries all fall below that tolerance is replaced by the derivative
/// of the auxiliary polynomial and the verdict is forced to NotHurwitz (the
/// even factor has roots symmetric about the origin).
struct RouthTable {
    int degree = 0;
    std::vector<double> coefficients;
    std::vector<double> first_column;
    StabilityVerdict verdict = StabilityVerdict::Singular;
    std::string note;  // human-readable reason for NotHurwitz/Singular edge cases
};

/// Builds the Routh table and verdict. Throws std::invalid_argument when the
/// leading coefficient is <= 0 or the degree is < 1.
RouthTable routh_hurwitz(const std::vector<double>& coefficients);

/// Feasible (n, p) pairs for which the epsilon-scaled characteristic
/// polynomial can be made Hurwitz with bounded positive gains for every
/// epsilon in (0,1): exactly (2,2), (3,2), (3,3), (4,3).
/// Throws std::invalid_argument unless n >= 2 and 2 <= p <= n.
bool lemma1_feasible(int n, int p);

/// Coefficients [1, k_n, ..., k_p/epsilon^(p*alpha_p) at the s^(p-1) slot,
/// ..., k_2, k_1] of the scaled characteristic polynomial. alpha_p is the
/// p-th entry of the exponent chain. Accepts epsilon in (0, 1] (epsilon = 1
/// removes the scaling); gains.size() must equal n.
std::vector<double> observer_char_poly(int n, int p, std::span<const double> gains,
                                       double epsilon, double alpha_p);

}  // namespace ido
