#pragma once

#include "qorbit/hc.hpp"
#include "qorbit/twistdata.hpp"

#include <json.hpp>

namespace qorbit {

using Json = nlohmann::json;

/// Lossless renderings: rationals as "p/q" strings, q-exponents as
/// "q^{a/b}", reals as 17-significant-digit decimals.
std::string real_str(double v);
Json rational_json(const Rational& r);
Json laurent_json(const LaurentPoly& p);
Json polar_json(const PolarRational& v);
Json qscalar_json(const QScalar& v);
Json weight_json(const Weight& w);
Json hcartan_json(const HCartanElement& el);
Json flags_json(const DatumFlags& f);

Rational parse_rational(const Json& j);
/// Accepts "3/2", "-q^{1/2}", "3*q^-2" or {"scale","qexp","phase"} objects.
QScalar parse_qscalar(const Json& j);
PolarRational parse_polar(const Json& j);
Weight parse_weight_list(const std::string& csv, std::size_t rank);

/// Root system from {"type": "..."} or {"cartan": [[...]]}, with optional
/// 1-based "tau" image list.
std::shared_ptr<const RootSystem> parse_root_system(const Json& j);
Involution parse_involution(const Json& j, const RootSystem& rs);
TwistingDatum parse_datum(const Json& j);
WeightFunction parse_weight_function(const Json& j, const TwistingDatum& datum);

} // namespace qorbit
