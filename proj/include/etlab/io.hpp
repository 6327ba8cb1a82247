#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "etlab/discretize.hpp"
#include "etlab/extremal.hpp"
#include "etlab/harmonic.hpp"
#include "etlab/measures.hpp"
#include "etlab/polynomials.hpp"
#include "etlab/sediment.hpp"

namespace etlab::io {

using json = nlohmann::json;

json to_json(const EmpiricalMeasure& m);
json to_json(const MixedMeasureT& m);
json to_json(const PolynomialSpec& f);
json to_json(const EtReport& r);
json to_json(const RealRootReport& r);
json to_json(const SharpnessReport& r);
json to_json(const GaneliusReport& r);
json to_json(const Scenario& s);

using AnyMeasure = std::variant<EmpiricalMeasure, MixedMeasureT>;
// a document with "family" is a mixed measure, otherwise "atoms" give an empirical one
AnyMeasure measure_from_json(const json& j);
MixedMeasureT mixed_from_json(const json& j);
EmpiricalMeasure empirical_from_json(const json& j);
PolynomialSpec polynomial_from_json(const json& j);
Scenario scenario_from_json(const json& j);

// parse errors and missing files become Error(InputError)
json read_json_file(const std::string& path);

// CSV number formatting: '.' decimal, no locale, `digits` significant digits
std::string fmt(double x, int digits);

}  // namespace etlab::io
