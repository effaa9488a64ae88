#pragma once

#include <string>

#include "bigmcg/classifier.hpp"
#include "bigmcg/fraisse.hpp"
#include "bigmcg/mann_rafi.hpp"

namespace bigmcg {

// Deterministic renderings: `text` is line-oriented for humans and golden
// tests, `structured` is JSON with a stable key order.

std::string report_to_text(const ClassificationReport& r);
std::string report_to_structured(const ClassificationReport& r);

std::string end_form_to_text(const CanonicalEndForm& f);
std::string end_form_to_structured(const CanonicalEndForm& f);

std::string classes_to_text(const EndClassReport& r);
std::string classes_to_structured(const EndClassReport& r);

std::string maximal_to_text(const MaximalEnds& m);
std::string maximal_to_structured(const MaximalEnds& m);

std::string property_to_text(const PropertyResult& r);
std::string chain_to_text(const ChainResult& r);
std::string fraissefy_to_text(const FraissefyResult& r);

} // namespace bigmcg
