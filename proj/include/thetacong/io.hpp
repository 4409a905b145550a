#pragma once

// JSON forms of lattices, automorphisms, theta tables and reports. Matrices are
// arrays of integer rows; counts and determinants are decimal strings.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "thetacong/fixpoint.hpp"
#include "thetacong/theta.hpp"

namespace thetacong::io {

using json = nlohmann::json;

/// Integers that do not fit in 64 bits are written as decimal strings.
json matrix_to_json(const IntegerMatrix& m);
/// Accepts a rectangular array of integer rows (or decimal strings); throws InvalidInput.
IntegerMatrix matrix_from_json(const json& j);

json bigint_to_json(const BigInt& v);
/// Decimal string or JSON integer; throws InvalidInput.
BigInt bigint_from_json(const json& j);

json lattice_to_json(const Lattice& lattice);
/// {"label"?: string, "gram": [[int]]}; validated, throws InvalidInput or the validation error.
Lattice lattice_from_json(const json& j);

struct AutomorphismFile {
  IntegerMatrix matrix;
  unsigned long order = 0;
};

json automorphism_to_json(const IntegerMatrix& matrix, unsigned long order);
/// {"matrix": [[int]], "order": int}; not validated against a lattice.
AutomorphismFile automorphism_from_json(const json& j);

json table_to_json(const ThetaTable& table);
ThetaTable table_from_json(const json& j);

json report_to_json(const CongruenceReport& report);
CongruenceReport report_from_json(const json& j);

json convolution_to_json(const SemiIntegralForm& t, const ConvolutionResult& r);
json fixed_report_to_json(const FixedSplitReport& report, const IntegerMatrix& reduced_m0_gram);
json components_to_json(const std::vector<Sublattice>& components);
json validation_to_json(const ValidationReport& report);

/// Throws InvalidInput on unreadable files or malformed JSON.
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace thetacong::io
