#include "ido/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ido {

double power_sign(double x, double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("power_sign: alpha must lie in (0, 1], got " + std::to_string(alpha));
    if (x == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(x), alpha), x);
}

ExponentChain::ExponentChain(int n, double alpha_n) {
    if (n < 2) throw std::invalid_argument("ExponentChain: order must be >= 2, got " + std::to_string(n));
    if (!(alpha_n > 0.0) || alpha_n > 1.0)
        throw std::invalid_argument("ExponentChain: terminal exponent must lie in (0, 1], got " +
                                    std::to_string(alpha_n));

    alphas_.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        alphas_[static_cast<std::size_t>(i) - 1] =
            alpha_n / (static_cast<double>(n - i + 1) - static_cast<double>(n - i) * alpha_n);

    // Cross-check the closed form against the recursion with alpha_{n+1} = 1.
    double next = 1.0;  // alpha_{i+1}
    double cur = alphas_[static_cast<std::size_t>(n) - 1];
    for (int i = n; i >= 2; --i) {
        const double denom = 2.0 * next - cur;
        if (!(denom > 0.0)) throw std::logic_error("ExponentChain: recursion denominator not positive");
        const double prev = cur * next / denom;
        const double stored = alphas_[static_cast<std::size_t>(i) - 2];
        if (std::abs(prev - stored) > 1e-12 * std::max(std::abs(prev), std::abs(stored)))
            throw std::logic_error("ExponentChain: closed form disagrees with recursion");
        next = cur;
        cur = stored;
    }
}

const char* to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::Hurwitz: return "Hurwitz";
        case StabilityVerdict::NotHurwitz: return "NotHurwitz";
        case StabilityVerdict::Singular: return "Singular";
    }
    return "?";
}

RouthTable routh_hurwitz(const std::vector<double>& coefficients) {
    const int degree = static_cast<int>(coefficients.size()) - 1;
    if (degree < 1) throw std::invalid_argument("routh_hurwitz: polynomial degree must be >= 1");
    if (!(coefficients.front() > 0.0))
        throw std::invalid_argument("routh_hurwitz: leading coefficient must be > 0");
    for (double c : coefficients)
        if (!std::isfinite(c)) throw std::invalid_argument("routh_hurwitz: non-finite coefficient");

    double cmax = 0.0;
    for (double c : coefficients) cmax = std::max(cmax, std::abs(c));
    const double tol = 1e-12 * cmax;

    RouthTable table;
    table.degree = degree;
    table.coefficients = coefficients;

    // Rows 0 and 1 interleave the coefficients; each later row is the usual
    // cross-product reduction of the two above it.
    const std::size_t width = static_cast<std::size_t>(degree) / 2 + 1;
    std::vector<double> upper(width, 0.0), lower(width, 0.0);
    for (std::size_t j = 0; 2 * j <= static_cast<std::size_t>(degree); ++j)
        upper[j] = coefficients[2 * j];
    for (std::size_t j = 0; 2 * j + 1 <= static_cast<std::size_t>(degree); ++j)
        lower[j] = coefficients[2 * j + 1];

    bool zero_row_replaced = false;
    table.first_column.push_back(upper[0]);

    // Row r lives at power s^(degree - r); its first entry joins the column.
    for (int r = 1; r <= degree; ++r) {
        const int remaining_degree = degree - r;  // power of s for row "lower"

        const bool zero_row =
            std::all_of(lower.begin(), lower.end(), [&](double v) { return std::abs(v) < tol; });
        if (zero_row) {
            // Replace by the derivative of the auxiliary polynomial formed by
            // the row above (powers remaining_degree+1, remaining_degree-1, ...).
            zero_row_replaced = true;
            int power = remaining_degree + 1;
            for (std::size_t j = 0; j < lower.size(); ++j, power -= 2)
                lower[j] = power > 0 ? upper[j] * static_cast<double>(power) : 0.0;
            table.note = "zero row at s^" + std::to_string(remaining_degree) +
                         " replaced by auxiliary-polynomial derivative";
        }

        const double pivot = lower[0];
        table.first_column.push_back(pivot);

        if (std::abs(pivot) < tol) {
            if (pivot == 0.0) {
                table.verdict = StabilityVerdict::NotHurwitz;
                if (table.note.empty())
                    table.note = "zero pivot at s^" + std::to_string(remaining_degree);
                return table;
            }
            table.verdict = StabilityVerdict::Singular;
            table.note = "pivot at s^" + std::to_string(remaining_degree) +
                         " below singularity tolerance";
            return table;
        }

        if (r == degree) break;

        std::vector<double> next(lower.size(), 0.0);
        for (std::size_t j = 0; j + 1 < lower.size(); ++j)
            next[j] = (pivot * upper[j + 1] - upper[0] * lower[j + 1]) / pivot;
        upper.swap(lower);
        lower.swap(next);
    }

    if (zero_row_replaced) {
        table.verdict = StabilityVerdict::NotHurwitz;
        return table;
    }
    const bool all_positive =
        std::all_of(table.first_column.begin(), table.first_column.end(), [](double v) { return v > 0.0; });
    table.verdict = all_positive ? StabilityVerdict::Hurwitz : StabilityVerdict::NotHurwitz;
    return table;
}

bool lemma1_feasible(int n, int p) {
    if (n < 2) throw std::invalid_argument("lemma1_feasible: n must be >= 2");
    if (p < 2 || p > n) throw std::invalid_argument("lemma1_feasible: p must lie in {2..n}");
    return (n == 2 && p == 2) || (n == 3 && (p == 2 || p == 3)) || (n == 4 && p == 3);
}

std::vector<double> observer_char_poly(int n, int p, std::span<const double> gains,
                                       double epsilon, double alpha_p) {
    if (n < 2) throw std::invalid_argument("observer_char_poly: n must be >= 2");
    if (p < 2 || p > n) throw std::invalid_argument("observer_char_poly: p must lie in {2..n}");
    if (static_cast<int>(gains.size()) != n)
        throw std::invalid_argument("observer_char_poly: expected n gains");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("observer_char_poly: epsilon must lie in (0, 1]");

    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
    coeffs[0] = 1.0;
    for (int i = n; i >= 1; --i) {
        double c = gains[static_cast<std::size_t>(i) - 1];
        if (i == p) c /= std::pow(epsilon, static_cast<double>(p) * alpha_p);
        coeffs[static_cast<std::size_t>(n - i) + 1] = c;  // slot of s^(i-1)
    }
    return coeffs;
}

}  // namespace ido
