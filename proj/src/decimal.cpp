#include "tippinglab/decimal.hpp"

#include <stdexcept>

namespace tippinglab {

Decimal Decimal::parse(std::string_view text) {
    const std::string original(text);
    if (text.empty()) throw std::invalid_argument("empty decimal");
    std::int64_t whole = 0;
    std::size_t i = 0;
    bool any_digit = false;
    for (; i < text.size() && text[i] != '.'; ++i) {
        if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("bad decimal '" + original + "'");
        whole = whole * 10 + (text[i] - '0');
        if (whole > 1'000'000'000) throw std::invalid_argument("decimal too large '" + original + "'");
        any_digit = true;
    }
    std::int64_t frac = 0;
    std::int64_t scale = kScale;
    if (i < text.size()) {
        ++i;
        for (; i < text.size(); ++i) {
            if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("bad decimal '" + original + "'");
            scale /= 10;
            if (scale == 0 && text[i] != '0')
                throw std::invalid_argument("more than 6 fractional digits in '" + original + "'");
            if (scale > 0) frac += (text[i] - '0') * scale;
            any_digit = true;
        }
    }
    if (!any_digit) throw std::invalid_argument("bad decimal '" + original + "'");
    return from_units(whole * kScale + frac);
}

std::string Decimal::to_string() const {
    std::string out = std::to_string(units_ / kScale) + ".";
    auto frac = std::to_string(units_ % kScale);
    frac.insert(0, 6 - frac.size(), '0');
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    return out + frac;
}

}  // namespace tippinglab
