// JSON forms of the library's value types.  Complex numbers are [re, im],
// matrices are row-major nested arrays of complex numbers, words are digit
// strings ("" is the empty word).  Malformed input raises InputError.
#pragma once

#include <string>

#include <json.hpp>

#include "ncft/caratheodory.hpp"
#include "ncft/fock.hpp"
#include "ncft/pluriharmonic.hpp"
#include "ncft/series.hpp"
#include "ncft/transforms.hpp"

namespace ncft::json_io {

using nlohmann::json;

json matrix_to_json(const CMatrix& A);
CMatrix matrix_from_json(const json& j);

json coeffs_to_json(const CoeffMap& m);
CoeffMap coeffs_from_json(const json& j, int n);

json to_json(const FreeSeries& f);
FreeSeries series_from_json(const json& j);

json to_json(const PluriharmonicFn& h);
PluriharmonicFn pluriharmonic_from_json(const json& j);

json to_json(const OperatorTuple& X);
OperatorTuple tuple_from_json(const json& j);

json to_json(const MomentFunctional& mu);
MomentFunctional moment_from_json(const json& j);

json to_json(const CaratheodoryProblem& prob);
CaratheodoryProblem problem_from_json(const json& j);

json to_json(const CFProblem& prob);
CFProblem cf_problem_from_json(const json& j);

json to_json(const FeasibilityReport& r);
json to_json(const ExtensionResult& r);
json to_json(const VerificationReport& r);

json parse_file(const std::string& path);
// writes to a sibling temporary file, then renames it over path
void write_file_atomic(const std::string& path, const json& j);

}  // namespace ncft::json_io
