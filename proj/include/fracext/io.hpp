#pragma once

#include "fracext/convolution.hpp"
#include "fracext/dimension.hpp"
#include "fracext/knapp.hpp"
#include "fracext/measure.hpp"
#include "fracext/oracle.hpp"

#include "json.hpp"

#include <complex>
#include <filesystem>
#include <span>
#include <string>

namespace fracext {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "fracext 0.1.0";

// Schema readers; failures throw SchemaError carrying the offending path.
Rational rational_at(const Json& j, const std::string& path);
double number_at(const Json& j, const std::string& path);
SimilarityIFS ifs_from_json(const Json& j, const std::string& path = "");
KnappParams knapp_params_from_json(const Json& j, const std::string& path = "");
Json read_json_file(const std::filesystem::path& file);

Json ifs_to_json(const SimilarityIFS& ifs);
// Exact integers are written as decimal strings.
Json family_to_json(const KnappFamily& fam);
Json identity_to_json(const IdentityReport& r);
Json theorem31_to_json(const Theorem31Report& r);
Json manifest(const std::string& command, const Json& params, std::uint64_t seed);

std::string decay_csv(const DecayFit& fit);
std::string box_counts_csv(std::span<const BoxCount> counts);
std::string transform_csv(std::span<const double> xis, std::span<const std::complex<double>> values);
std::string histogram_csv(const SumHistogram& h);

void write_text(const std::filesystem::path& file, const std::string& text);

}  // namespace fracext
