#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tippinglab {

/// Non-negative fixed-point decimal with six fractional digits.
///
/// Densities travel through plans, keys and CSV files as decimals so that
/// grids like 0.0, 0.1, ..., 3.0 are exact and n * d rounds correctly at
/// exact halves.
class Decimal {
public:
    static constexpr std::int64_t kScale = 1'000'000;

    constexpr Decimal() = default;
    static constexpr Decimal from_units(std::int64_t units) {
        Decimal d;
        d.units_ = units;
        return d;
    }

    /// Accepts "2", "2.5", "0.05", ".5". Throws std::invalid_argument on
    /// anything else, including more than six fractional digits.
    static Decimal parse(std::string_view text);

    constexpr std::int64_t units() const { return units_; }
    double to_double() const { return static_cast<double>(units_) / kScale; }

    /// Shortest form with at least one fractional digit: "0.0", "0.05", "3.0".
    std::string to_string() const;

    friend constexpr bool operator==(Decimal, Decimal) = default;
    friend constexpr auto operator<=>(Decimal, Decimal) = default;
    friend constexpr Decimal operator+(Decimal a, Decimal b) { return from_units(a.units_ + b.units_); }

private:
    std::int64_t units_ = 0;
};

}  // namespace tippinglab
