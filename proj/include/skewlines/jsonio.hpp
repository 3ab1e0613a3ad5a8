#pragma once

#include <string>

#include "json.hpp"
#include "skewlines/classify.hpp"
#include "skewlines/constructions.hpp"
#include "skewlines/geproci.hpp"
#include "skewlines/groupoid.hpp"

namespace skewlines::jsonio {

using json = nlohmann::json;

// Version stamp carried by every document this library emits; readers refuse
// anything else so stale files fail loudly instead of being misread.
inline constexpr int kSchemaVersion = 1;

// Parsing entry points. Malformed input raises std::invalid_argument with the
// position reported by the JSON parser; a bad or missing version field raises
// std::invalid_argument with the offending value.
json parse_text(const std::string& text);
json load_document(const std::string& path);
void require_schema(const json& doc);

// Canonical rendering: objects are emitted with sorted keys, two-space
// indentation, and a trailing newline, so equal values are equal bytes.
std::string dump(const json& doc);
void save_document(const json& doc, const std::string& path);

// Field contexts: {"kind":"Q"}, {"kind":"GF","p":7}, or
// {"kind":"ext","base":{...},"modulus":[c0,...,1]} with the modulus written
// constant-first over the base field.
json field_to_json(const FieldCtxPtr& ctx);
FieldCtxPtr field_from_json(const json& j);

// Elements: rationals render as an integer when the denominator is 1 and as a
// "num/den" string otherwise; prime-field elements as their residue;
// extension elements as the coefficient array of their representative,
// constant-first over the base field. Readers accept any of the three forms
// that make sense over the target field.
json element_to_json(const Fel& x);
Fel element_from_json(const json& j, const FieldCtxPtr& ctx);

// A point is the array of its (canonically scaled) coordinates.
json point_to_json(const ProjPoint& p);
ProjPoint point_from_json(const json& j, const FieldCtxPtr& ctx);

// A line renders as {"points":[p,q]} preserving its chart; readers also
// accept {"forms":[[4 coeffs],[4 coeffs]]}.
json line_to_json(const ProjLine& l);
ProjLine line_from_json(const json& j, const FieldCtxPtr& ctx);

// A quadric is its 10 coefficients on x^2,xy,xz,xw,y^2,yz,yw,z^2,zw,w^2.
json quadric_to_json(const Quadric& q);
Quadric quadric_from_json(const json& j, const FieldCtxPtr& ctx);

// Configuration document: {"schema":1,"field":...,"lines":[...]}. Extra keys
// (such as the points emitted by `construct`) are ignored on read.
json config_to_json(const SkewConfig& cfg);
SkewConfig config_from_json(const json& doc);

// Point-set document: {"schema":1,"field":...,"points":[{"coords":...,
// "line":i},...],"size":n}. Reading validates the field against the
// configuration and each point against its line.
json point_set_to_json(const SkewConfig& cfg, const PointSet& z);
PointSet point_set_from_json(const json& doc, const SkewConfig& cfg);

// One-way reports for the analysis results.
json group_to_json(const GroupDescription& g);
json verdict_to_json(const GeprociVerdict& v);
json partition_to_json(const ClassPartition& p);
json completeness_to_json(const CompletenessCertificate& c);

// The combined document written by `construct`: a configuration document
// that additionally carries the distinguished point set and its label.
json named_config_to_json(const NamedConfig& nc);

}  // namespace skewlines::jsonio
