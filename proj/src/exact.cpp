#include "tippinglab/exact.hpp"

#include <stdexcept>
#include <vector>

namespace tippinglab {

namespace mp = boost::multiprecision;

ExactInteger binomial(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) throw std::invalid_argument("binomial requires a, b >= 0");
    if (b > a) return 0;
    b = std::min(b, a - b);
    ExactInteger result = 1;
    // Each prefix product is itself a binomial coefficient, so the division is exact.
    for (std::int64_t i = 1; i <= b; ++i) {
        result *= a - b + i;
        result /= i;
    }
    return result;
}

ExactInteger labeled_forest_count(std::int64_t n, std::int64_t k) {
    if (k < 1 || k > n) throw std::invalid_argument("labeled_forest_count requires 1 <= k <= n");
    if (k == n) return 1;

    ExactRational sum = 0;
    ExactRational half_power = 1;  // (-1/2)^i
    ExactInteger factorial = 1;    // i!
    for (std::int64_t i = 0; i <= k; ++i) {
        if (i > 0) {
            half_power *= ExactRational(-1, 2);
            factorial *= i;
        }
        const auto c_n_minus_k = binomial(n - k, i);
        if (c_n_minus_k == 0) break;  // C(n-k, i) stays zero for larger i
        ExactRational term = half_power * ExactRational(ExactInteger(k + i) * factorial * binomial(k, i) * c_n_minus_k);
        const auto exponent = n - k - i - 1;
        if (exponent >= 0)
            term *= ExactRational(mp::pow(ExactInteger(n), static_cast<unsigned>(exponent)));
        else
            term /= ExactRational(mp::pow(ExactInteger(n), static_cast<unsigned>(-exponent)));
        sum += term;
    }
    const ExactRational total = sum * ExactRational(binomial(n, k));
    if (denominator(total) != 1 || total < 0)
        throw std::logic_error("labeled_forest_count: non-integer or negative result for n=" + std::to_string(n) +
                               ", k=" + std::to_string(k));
    return numerator(total);
}

ExactRational acyclic_probability(std::int64_t n, std::int64_t m) {
    if (n < 1) throw std::invalid_argument("acyclic_probability requires n >= 1");
    if (m < 0 || m > pair_count(n)) throw std::invalid_argument("acyclic_probability requires 0 <= m <= C(n,2)");
    if (m >= n) return 0;
    return ExactRational(labeled_forest_count(n, n - m), binomial(pair_count(n), m));
}

std::string to_decimal_string(const ExactRational& value, int significant) {
    if (value < 0) throw std::invalid_argument("to_decimal_string requires a non-negative value");
    if (significant < 1) throw std::invalid_argument("to_decimal_string requires at least one digit");
    if (value == 0) return "0";

    auto pow10 = [](std::int64_t e) {
        return e >= 0 ? ExactRational(mp::pow(ExactInteger(10), static_cast<unsigned>(e)))
                      : ExactRational(ExactInteger(1), mp::pow(ExactInteger(10), static_cast<unsigned>(-e)));
    };
    auto digits = [](const ExactInteger& x) { return static_cast<std::int64_t>(x.str().size()); };

    // 10^e <= value < 10^(e+1)
    std::int64_t e = digits(numerator(value)) - digits(denominator(value));
    while (value < pow10(e)) --e;
    while (value >= pow10(e + 1)) ++e;

    auto shift = e - significant + 1;
    auto scaled = value / pow10(shift);
    ExactInteger rounded = numerator(scaled) / denominator(scaled);
    if (ExactRational(2) * (scaled - ExactRational(rounded)) >= 1) ++rounded;
    if (rounded == mp::pow(ExactInteger(10), static_cast<unsigned>(significant))) {
        rounded /= 10;
        ++shift;
    }

    std::string text = rounded.str();
    if (shift >= 0) return text + std::string(static_cast<std::size_t>(shift), '0');
    const auto frac_digits = static_cast<std::size_t>(-shift);
    if (text.size() <= frac_digits) text.insert(0, frac_digits - text.size() + 1, '0');
    std::string whole = text.substr(0, text.size() - frac_digits);
    std::string frac = text.substr(text.size() - frac_digits);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return frac.empty() ? whole : whole + "." + frac;
}

std::int64_t enumerate_graphs(Vertex n, std::int64_t m, const std::function<void(const Graph&)>& visitor,
                              std::int64_t budget) {
    if (n < 0 || m < 0) throw std::invalid_argument("enumerate_graphs requires n, m >= 0");
    const std::int64_t pairs = pair_count(n);
    const auto count = binomial(pairs, m);
    if (count > budget)
        throw BudgetExceeded("enumerating C(" + std::to_string(pairs) + "," + std::to_string(m) + ") = " +
                             count.str() + " graphs exceeds the budget of " + std::to_string(budget));
    if (m > pairs) return 0;

    std::vector<Edge> decode(static_cast<std::size_t>(pairs));
    for (std::int64_t i = 0; i < pairs; ++i) decode[i] = pair_from_index(n, i);

    std::vector<std::int64_t> pick(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) pick[i] = i;
    std::int64_t visited = 0;
    std::vector<Edge> edges(static_cast<std::size_t>(m));
    while (true) {
        for (std::int64_t i = 0; i < m; ++i) edges[i] = decode[pick[i]];
        visitor(Graph::from_sorted_edges(n, edges));
        ++visited;
        // next combination in lexicographic order
        std::int64_t i = m - 1;
        while (i >= 0 && pick[i] == pairs - m + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (std::int64_t j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
    return visited;
}

ExactRational count_property_exact(Vertex n, std::int64_t m, const std::function<bool(const Graph&)>& predicate,
                                   std::int64_t budget) {
    if (m > pair_count(n)) throw std::invalid_argument("count_property_exact: no graph with m > C(n,2)");
    std::int64_t positives = 0;
    const auto total = enumerate_graphs(
        n, m, [&](const Graph& g) { positives += predicate(g) ? 1 : 0; }, budget);
    return ExactRational(positives, total);
}

ExactRational count_property_exact(Vertex n, std::int64_t m, Property p, std::int64_t budget) {
    if (p == Property::nearplanar)
        return count_property_exact(n, m, [](const Graph& g) { return is_near_planar(g).verdict; }, budget);
    return count_property_exact(n, m, [p](const Graph& g) { return holds(p, g); }, budget);
}

}  // namespace tippinglab
