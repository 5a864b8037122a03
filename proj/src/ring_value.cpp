#include "pbern/ring_value.hpp"

namespace pbern {

std::string ring_to_string(const RingValue& v) {
    if (v.mode() == Mode::rational) return rat_to_string(v.rational_value());
    const LambdaPoly& p = v.lambda_value();
    if (p.is_zero_poly()) return "0";
    std::string out;
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) out += ",";
        out += rat_to_string(p.coeff(i));
    }
    return out;
}

RingValue parse_ring_value(std::string_view text, Mode m) {
    if (m == Mode::rational) return RingValue(parse_rational(text));
    std::vector<Rational> coeffs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        coeffs.push_back(parse_rational(piece));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return RingValue(LambdaPoly(std::move(coeffs)));
}

} // namespace pbern
